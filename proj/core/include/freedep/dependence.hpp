#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freedep/stallings.hpp"
#include "freedep/word.hpp"

namespace freedep {

/// Ordered vertex pair of C(H), carried by coset labels so that it survives
/// renumbering.
struct VertexPair {
  VertexId u = 0;
  VertexId v = 0;
  Word u_label;
  Word v_label;

  /// u_label * v_label^-1, the double coset representative.
  Word representative() const { return u_label * v_label.inverse(); }
  bool operator==(const VertexPair&) const = default;
};

/// Pairs (u, v) of C(H) whose identification does not raise the rank.
/// Always contains (root, root).
struct PairSet {
  std::vector<VertexPair> pairs;
};

struct PairSetOptions {
  /// Keep one pair per class of the relation (u, v) ~ (u.l, v.l); all pairs
  /// in a class yield the same double coset.
  bool reduce_neighbors = true;
};

/// dep(H) as the union of double cosets H w H over the representatives.
struct DoubleCosetDecomposition {
  CoreGraph base;
  std::vector<Word> representatives;

  /// One "H <rep> H" line per representative.
  std::string to_string() const;
};

struct DependenceWitness {
  bool verdict = false;
  /// g = g1 * g2^-1 with both g1 and g2 read from the root inside C(H).
  /// g1 is the longest prefix of g readable in C(H); g2 is set only when the
  /// remaining suffix is readable backwards from the root.
  Word g1;
  std::optional<Word> g2;
  /// The identified pair, present when verdict is true.
  std::optional<VertexPair> pair;
  std::size_t rank_before = 0;
  /// rank <H, g>, from direct construction.
  std::size_t rank_after = 0;
};

/// Decides whether g depends on H, i.e. rank <H, g> <= rank H, by greedy
/// prefix/suffix reading and a single vertex identification. The verdict is
/// cross-checked against folding C(H) with a g-petal; a disagreement throws
/// std::logic_error. Throws InputError when g uses letters outside H's alphabet.
DependenceWitness is_dependent(const CoreGraph& h, const Word& g);

PairSet pair_set(const CoreGraph& h, const PairSetOptions& options = {});

/// Representatives u v^-1 of pair_set(h), reduced, deduplicated, in shortlex order.
DoubleCosetDecomposition dep_double_cosets(const CoreGraph& h, const PairSetOptions& options = {});

/// g in H w H, decided on the folded graph (g-path) C(H) (w^-1-path).
bool in_double_coset(const CoreGraph& h, const Word& w, const Word& g);

/// g in dep(H) according to the decomposition.
bool in_dep(const DoubleCosetDecomposition& decomposition, const Word& g);

/// basis(H) followed by the non-trivial double coset representatives.
std::vector<Word> dep_generators(const CoreGraph& h, const PairSetOptions& options = {});

/// Glues two cores over disjoint alphabets at their roots. Throws InputError
/// when the alphabets overlap.
CoreGraph wedge(const CoreGraph& lhs, const CoreGraph& rhs);

struct EchelonReport {
  bool echelon = true;
  /// rank(H ∩ F(a_1..a_i)) for i = 0..n.
  std::vector<std::size_t> ranks;
};

/// Echelon test with respect to an ordered basis (must cover H's letters).
EchelonReport is_echelon(const CoreGraph& h, const Alphabet& order);
EchelonReport is_echelon(const CoreGraph& h);

}  // namespace freedep
