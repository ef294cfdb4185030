#include "freedep/nielsen.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>

namespace freedep {

namespace {

constexpr std::array<std::pair<NielsenMove::Kind, bool>, 4> kMultiplyKinds{{
    {NielsenMove::Kind::kRightMultiply, true},
    {NielsenMove::Kind::kRightMultiply, false},
    {NielsenMove::Kind::kLeftMultiply, true},
    {NielsenMove::Kind::kLeftMultiply, false},
}};

Word product_for(const std::vector<Word>& t, std::size_t target, std::size_t source,
                 NielsenMove::Kind kind, bool inverse_source) {
  const Word s = inverse_source ? t[source].inverse() : t[source];
  return kind == NielsenMove::Kind::kRightMultiply ? t[target] * s : s * t[target];
}

// Left half: the first ceil(n/2) letters.
std::vector<Letter> left_half(const Word& w) {
  const auto& l = w.letters();
  return {l.begin(), l.begin() + static_cast<long>((l.size() + 1) / 2)};
}

// Well-order on words of equal length: compare the unordered pair
// {left half of w, left half of w^-1} as (min, max) in code order.
std::pair<std::vector<Letter>, std::vector<Letter>> half_key(const Word& w) {
  auto a = left_half(w);
  auto b = left_half(w.inverse());
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

}  // namespace

std::string NielsenMove::to_string() const {
  std::ostringstream out;
  const std::size_t t = target + 1;
  const std::size_t s = source + 1;
  const char* sign = inverse_source ? "^-1" : "";
  switch (kind) {
    case Kind::kSwap:
      out << "swap(t" << t << ",t" << s << ")";
      break;
    case Kind::kInvert:
      out << "t" << t << "<-t" << t << "^-1";
      break;
    case Kind::kRightMultiply:
      out << "t" << t << "<-t" << t << "*t" << s << sign;
      break;
    case Kind::kLeftMultiply:
      out << "t" << t << "<-t" << s << sign << "*t" << t;
      break;
  }
  return out.str();
}

std::string TransformationLog::to_string() const {
  std::string s;
  for (const NielsenMove& m : steps_) {
    if (!s.empty()) s += ' ';
    s += m.to_string();
  }
  return s;
}

std::size_t NielsenResult::nontrivial_count() const {
  return static_cast<std::size_t>(
      std::count_if(reduced.begin(), reduced.end(), [](const Word& w) { return !w.empty(); }));
}

NielsenResult nielsen_reduce(std::vector<Word> tuple) {
  NielsenResult result{{}, TransformationLog(tuple.size())};
  const std::size_t k = tuple.size();

  for (;;) {
    std::optional<NielsenMove> best;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (tuple[i].empty()) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i || tuple[j].empty()) continue;
        for (auto [kind, inv] : kMultiplyKinds) {
          const Word p = product_for(tuple, i, j, kind, inv);
          if (p.size() < tuple[i].size() && tuple[i].size() - p.size() > best_gain) {
            best_gain = tuple[i].size() - p.size();
            best = NielsenMove{kind, i, j, inv};
          }
        }
      }
    }

    if (!best) {
      for (std::size_t i = 0; i < k && !best; ++i) {
        if (tuple[i].empty()) continue;
        const auto current = half_key(tuple[i]);
        for (std::size_t j = 0; j < k && !best; ++j) {
          if (j == i || tuple[j].empty()) continue;
          for (auto [kind, inv] : kMultiplyKinds) {
            const Word p = product_for(tuple, i, j, kind, inv);
            if (p.size() == tuple[i].size() && half_key(p) < current) {
              best = NielsenMove{kind, i, j, inv};
              break;
            }
          }
        }
      }
    }

    if (!best) break;
    apply_move(tuple, *best);
    result.log.push(*best);
  }

  std::size_t write = 0;
  for (std::size_t read = 0; read < k; ++read) {
    if (tuple[read].empty()) continue;
    if (read != write) {
      const NielsenMove swap{NielsenMove::Kind::kSwap, write, read, false};
      apply_move(tuple, swap);
      result.log.push(swap);
    }
    ++write;
  }

  result.reduced = std::move(tuple);
  return result;
}

std::vector<FormalWord> apply_log(std::vector<FormalWord> tuple, const TransformationLog& log) {
  if (tuple.size() != log.arity()) {
    throw InputError("apply_log: tuple has " + std::to_string(tuple.size()) +
                     " entries but the log was recorded on " + std::to_string(log.arity()));
  }
  for (const NielsenMove& m : log.steps()) apply_move(tuple, m);
  return tuple;
}

Word substitute(const FormalWord& w, std::span<const Word> gens, const Word& g) {
  if (w.max_generator_index() > gens.size()) {
    throw InputError("substitute: word uses g" + std::to_string(w.max_generator_index()) +
                     " but only " + std::to_string(gens.size()) + " generators were given");
  }
  std::vector<Letter> raw;
  for (FormalSymbol s : w.symbols()) {
    const Word& base = s.is_variable() ? g : gens[s.index() - 1];
    const Word piece = s.is_inverse() ? base.inverse() : base;
    raw.insert(raw.end(), piece.letters().begin(), piece.letters().end());
  }
  return Word::reduce(raw);
}

}  // namespace freedep
