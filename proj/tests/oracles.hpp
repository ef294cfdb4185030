#pragma once

// Test-only oracles. None of these go through Stallings graphs, so they
// check the graph algorithms from an independent direction.

#include <cstddef>
#include <random>
#include <set>
#include <vector>

#include "freedep/nielsen.hpp"
#include "freedep/word.hpp"

namespace freedep::testing {

/// Reduced products x_1 ... x_k (k <= max_factors, x_i in gens^{+-1}, no
/// x_i x_i^-1 adjacent) whose reduced length is <= max_length.
inline std::set<Word> products_up_to(const std::vector<Word>& gens, std::size_t max_factors,
                                     std::size_t max_length) {
  std::vector<Word> symbols;
  for (const Word& g : gens) {
    if (g.empty()) continue;
    symbols.push_back(g);
    symbols.push_back(g.inverse());
  }
  std::set<Word> out{Word()};
  struct Frame {
    Word value;
    int last;
    std::size_t depth;
  };
  std::vector<Frame> stack{{Word(), -1, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == max_factors) continue;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (f.last >= 0 && (static_cast<std::size_t>(f.last) ^ 1u) == i) continue;
      Word next = f.value * symbols[i];
      if (next.size() <= max_length) out.insert(next);
      stack.push_back({std::move(next), static_cast<int>(i), f.depth + 1});
    }
  }
  return out;
}

/// All elements of <gens> with length <= max_length. A Nielsen-reduced basis
/// satisfies |x_1 ... x_k| >= k, so products of at most max_length basis
/// factors are exhaustive.
inline std::set<Word> elements_up_to(const std::vector<Word>& gens, std::size_t max_length) {
  const NielsenResult nr = nielsen_reduce(gens);
  std::vector<Word> free_basis(nr.reduced.begin(),
                               nr.reduced.begin() + static_cast<long>(nr.nontrivial_count()));
  return products_up_to(free_basis, max_length, max_length);
}

/// rank <gens> through Nielsen reduction alone.
inline std::size_t nielsen_rank(const std::vector<Word>& gens) {
  return nielsen_reduce(gens).nontrivial_count();
}

inline Word random_word(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t length) {
  const std::vector<Letter> letters = alphabet.letters();
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<Letter> raw;
  while (raw.size() < length) {
    const Letter l = letters[pick(rng)];
    if (!raw.empty() && raw.back() == l.inverse()) continue;
    raw.push_back(l);
  }
  return Word::reduce(raw);
}

}  // namespace freedep::testing
