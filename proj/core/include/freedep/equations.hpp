#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freedep/nielsen.hpp"
#include "freedep/stallings.hpp"
#include "freedep/word.hpp"

namespace freedep {

/// An element w(x) = h_1 x^{i_1} h_2 ... h_m x^{i_m} h_{m+1} of H * <x>, read
/// as the equation w(x) = 1. Coefficients are words in F; middle coefficients
/// h_2..h_m are never trivial and exponents are never zero.
class Equation {
 public:
  Equation() : coefficients_{Word()} {}

  /// Normalizes an arbitrary alternating sequence (coefficients.size() ==
  /// exponents.size() + 1): zero exponents are dropped, x-powers around a
  /// trivial middle coefficient are merged, cascading as needed.
  static Equation normalized(std::vector<Word> coefficients, std::vector<int> exponents);

  /// Parses "a^2 x^-2 = 1". Tokens x, X, x^k are powers of the variable;
  /// any other token (optionally parenthesized) is a coefficient word.
  static Equation parse(std::string_view text);

  const std::vector<Word>& coefficients() const { return coefficients_; }
  const std::vector<int>& exponents() const { return exponents_; }
  const std::optional<FormalWord>& formal() const { return formal_; }
  void set_formal(FormalWord w) { formal_ = std::move(w); }

  /// Sum of |i_j|.
  std::size_t degree() const;
  bool is_trivial() const { return exponents_.empty() && coefficients_.front().empty(); }
  /// w(g), reduced.
  Word evaluate(const Word& g) const;

  /// "a^2 x^-2 = 1"; the trivial equation prints as "1 = 1".
  std::string to_string() const;

  bool operator==(const Equation& other) const {
    return coefficients_ == other.coefficients_ && exponents_ == other.exponents_;
  }

 private:
  std::vector<Word> coefficients_;
  std::vector<int> exponents_;
  std::optional<FormalWord> formal_;
};

/// Normal generators of Eqn(H, g) = ker(H * <x> -> <H, g>).
struct EquationBasis {
  /// basis(H); tag g_i in the formal words refers to generators[i - 1].
  std::vector<Word> generators;
  Word element;
  /// Formal words whose images vanish: the normal basis.
  std::vector<FormalWord> equations;
  /// Formal words whose images freely generate <H, g>.
  std::vector<FormalWord> surviving;
  /// The Nielsen reduction of (generators..., element).
  NielsenResult reduction;

  /// rank <H, g>.
  std::size_t image_rank() const { return surviving.size(); }
};

/// Computes a normal basis of Eqn(H, g) by Nielsen-reducing
/// (basis(H), g) and replaying the moves on (g_1, ..., g_r, x). Throws
/// DomainError when g is independent of H.
EquationBasis equation_basis(const CoreGraph& h, const Word& g);

/// Expands g_i to gens[i - 1] and groups the x-free blocks into coefficients.
Equation to_coefficient_form(const FormalWord& w, std::span<const Word> gens);

inline std::size_t degree(const Equation& eq) { return eq.degree(); }

bool verify(const Equation& eq, const Word& g);
bool verify(const FormalWord& w, std::span<const Word> gens, const Word& g);

/// w(h1^-1 x h2). Solved by h1 g h2^-1 whenever w is solved by g; the
/// degree is unchanged. Throws InputError unless h1, h2 are in H.
Equation transport(const Equation& eq, const CoreGraph& h, const Word& h1, const Word& h2);

struct DegreeBound {
  std::size_t bound = 0;
  /// Minimum-degree basis equation for each double coset representative.
  std::vector<std::pair<Word, Equation>> per_representative;
};

/// Every g in dep(H) satisfies an equation of degree <= bound: the maximum
/// over representatives u v^-1 of the minimum degree in their normal basis.
DegreeBound degree_bound(const CoreGraph& h);

/// Equation for g read off the folding that identifies the endpoints of the
/// g1- and g2-paths: the first rank-lowering edge fold closes a cycle
/// w a a^-1 w^-1 that is lifted back to C(H) plus a jump u -> v, and each
/// jump becomes x^{+-1}. For g in H returns x h^-1 with h = g. Throws
/// DomainError when g is independent of H.
Equation equation_from_folding(const CoreGraph& h, const Word& g);

}  // namespace freedep
