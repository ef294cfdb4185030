#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freedep/dependence.hpp"
#include "freedep/stallings.hpp"

namespace freedep {

struct ClosureResult {
  /// chain[0] = H, chain[i + 1] = Dep(chain[i]); the last entry is the closure.
  std::vector<CoreGraph> chain;
  /// Least m with Dep^m(H) = Dep^(m+1)(H).
  std::size_t length = 0;

  const CoreGraph& closure() const { return chain.back(); }
};

/// C(Dep H).
CoreGraph dep_subgroup(const CoreGraph& h, const PairSetOptions& options = {});

/// Iterates dep_subgroup until the canonical graph stops changing.
ClosureResult dependence_closure(const CoreGraph& h, const PairSetOptions& options = {});

/// H = Dep(H).
bool is_dependence_closed(const CoreGraph& h);

/// Outcome of a bounded search for a counterexample. `holds` only means that
/// no witness exists up to the stated bounds.
struct OracleReport {
  bool holds = true;
  std::optional<Word> witness;
  std::size_t length_bound = 0;
  std::size_t exponent_bound = 0;
  std::size_t candidates_checked = 0;

  std::string to_string() const;
};

/// Elements of the subgroup of word length <= max_length: the reduced closed
/// paths at the root, in shortlex order.
std::vector<Word> enumerate_elements(const CoreGraph& g, std::size_t max_length);

/// H_G dependence-closed: no g in G \ H with |g| <= max_length depends on H.
/// Throws InputError when H is not a subgroup of G.
OracleReport is_dependence_closed_in(const CoreGraph& h, const CoreGraph& g, std::size_t max_length);

/// Purity: no g not in H, |g| <= max_length, with g^k in H for 2 <= k <= max_exponent.
OracleReport is_pure(const CoreGraph& h, std::size_t max_length, std::size_t max_exponent);

/// Malnormality: g^-1 H g ∩ H = 1 for every g not in H with |g| <= max_length.
OracleReport is_malnormal(const CoreGraph& h, std::size_t max_length);

/// Among g not in H with |g| <= max_length, looks for one such that H has
/// finite index in <H, g>.
OracleReport has_no_finite_index_overgroup(const CoreGraph& h, std::size_t max_length);

}  // namespace freedep
