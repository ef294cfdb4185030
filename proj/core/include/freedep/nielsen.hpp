#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freedep/errors.hpp"
#include "freedep/word.hpp"

namespace freedep {

/// Elementary Nielsen move on a tuple (t_1, ..., t_k). Indices are 0-based.
struct NielsenMove {
  enum class Kind {
    kSwap,           // t[target] <-> t[source]
    kInvert,         // t[target] <- t[target]^-1
    kRightMultiply,  // t[target] <- t[target] * t[source]^(+-1)
    kLeftMultiply,   // t[target] <- t[source]^(+-1) * t[target]
  };

  Kind kind = Kind::kSwap;
  std::size_t target = 0;
  std::size_t source = 0;
  bool inverse_source = false;

  bool operator==(const NielsenMove&) const = default;

  /// 1-based rendering, e.g. "t1<-t1*t2^-1".
  std::string to_string() const;
};

class TransformationLog {
 public:
  TransformationLog() = default;
  explicit TransformationLog(std::size_t arity) : arity_(arity) {}

  std::size_t arity() const { return arity_; }
  const std::vector<NielsenMove>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  void push(const NielsenMove& move) { steps_.push_back(move); }

  std::string to_string() const;

 private:
  std::size_t arity_ = 0;
  std::vector<NielsenMove> steps_;
};

/// Applies one move to any tuple of group elements supporting *, inverse().
template <class Element>
void apply_move(std::vector<Element>& tuple, const NielsenMove& move) {
  switch (move.kind) {
    case NielsenMove::Kind::kSwap:
      std::swap(tuple[move.target], tuple[move.source]);
      break;
    case NielsenMove::Kind::kInvert:
      tuple[move.target] = tuple[move.target].inverse();
      break;
    case NielsenMove::Kind::kRightMultiply: {
      const Element& s = tuple[move.source];
      tuple[move.target] = tuple[move.target] * (move.inverse_source ? s.inverse() : s);
      break;
    }
    case NielsenMove::Kind::kLeftMultiply: {
      const Element& s = tuple[move.source];
      tuple[move.target] = (move.inverse_source ? s.inverse() : s) * tuple[move.target];
      break;
    }
  }
}

struct NielsenResult {
  std::vector<Word> reduced;
  TransformationLog log;

  /// Number of non-identity entries; they precede all identity entries.
  std::size_t nontrivial_count() const;
};

/// Nielsen-reduces a tuple. Strategy: apply the move that most decreases
/// total length (ties: lowest target, then lowest source, then move kind in
/// the order t*s^-1, t*s, s^-1*t, s*t). When no move shortens anything,
/// apply the first equal-length move that lowers the target in the
/// half-word well-order, which clears the remaining cancellation-triple
/// configurations. Finally identities are swapped to the tail. The
/// non-identity entries of the result freely generate the same subgroup.
NielsenResult nielsen_reduce(std::vector<Word> tuple);

/// Replays a log on a tuple of formal words. Throws InputError on arity mismatch.
std::vector<FormalWord> apply_log(std::vector<FormalWord> tuple, const TransformationLog& log);

/// Evaluates w at g: g_i -> gens[i-1], x -> g. Throws InputError when w uses
/// a tag beyond gens.size().
Word substitute(const FormalWord& w, std::span<const Word> gens, const Word& g);

}  // namespace freedep
