#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "freedep/word.hpp"

namespace freedep {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

/// Positively labelled directed edge. Traversing it backwards reads label^-1.
struct Edge {
  VertexId source = 0;
  Letter label;
  VertexId target = 0;

  bool operator==(const Edge&) const = default;
};

/// Arbitrary (possibly unfolded, possibly disconnected) rooted labelled graph:
/// the input to folding.
struct RawGraph {
  Alphabet alphabet;
  std::size_t vertex_count = 1;
  VertexId root = 0;
  std::vector<Edge> edges;

  VertexId add_vertex() { return static_cast<VertexId>(vertex_count++); }
  /// Adds an edge reading `label` from `from` to `to`; inverse labels are
  /// stored reversed.
  void add_edge(VertexId from, Letter label, VertexId to);
  /// Adds a path reading `w` from `from` to `to` through fresh vertices.
  /// An empty word adds nothing.
  void add_path(VertexId from, const Word& w, VertexId to);
  /// Adds a closed path reading `w` at `at`.
  void add_petal(VertexId at, const Word& w) { add_path(at, w, at); }
};

/// Identification of two vertex classes, recorded by class representatives
/// (pre-fold vertex ids). `cause` is the index of the EdgeMerge that forced
/// it; a merge without a cause is an externally requested identification.
struct VertexMerge {
  VertexId kept = 0;
  VertexId absorbed = 0;
  std::optional<std::size_t> cause;

  bool operator==(const VertexMerge&) const = default;
};

/// Fold of two edges (pre-fold edge ids) carrying the same label at a common
/// vertex class. `outgoing` is true when they share their source class, false
/// when they share their target class. `closes_cycle` is set when the far
/// endpoints were already identified, i.e. the fold lowers the rank.
struct EdgeMerge {
  EdgeId kept = 0;
  EdgeId absorbed = 0;
  bool outgoing = true;
  bool closes_cycle = false;

  bool operator==(const EdgeMerge&) const = default;
};

using FoldStep = std::variant<VertexMerge, EdgeMerge>;

/// Replayable log of a fold, plus where every pre-fold vertex ended up.
class FoldHistory {
 public:
  const std::vector<FoldStep>& steps() const { return steps_; }
  /// Surviving vertex of the result for a pre-fold vertex, or nullopt when it
  /// was cut off (other component, or trimmed away).
  std::optional<VertexId> resolve(VertexId pre_fold) const;
  std::size_t cycles_closed() const;

  // Construction (used by the folding engine).
  void record(FoldStep step) { steps_.push_back(step); }
  void set_vertex_map(std::vector<VertexId> map) { vertex_map_ = std::move(map); }
  const std::vector<VertexId>& vertex_map() const { return vertex_map_; }
  /// Post-composes the vertex map with a relabelling of the result.
  void compose(std::span<const VertexId> relabel);

 private:
  std::vector<FoldStep> steps_;
  std::vector<VertexId> vertex_map_;
};

/// Folded, connected, rooted graph in canonical numbering: the root is 0 and
/// the other vertices are numbered in breadth-first order exploring letters
/// in code order (a < A < b < B < ...). Two graphs are therefore isomorphic as
/// rooted labelled graphs iff their tables are equal, and operator==
/// compares exactly that. Graphs produced by build_core, identify, pullback,
/// restrict and trim are cores: every non-root vertex has degree >= 2.
class CoreGraph {
 public:
  using Row = std::array<VertexId, Letter::kCodes>;

  /// The trivial subgroup over an empty alphabet.
  CoreGraph();
  explicit CoreGraph(Alphabet alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return rows_.size(); }
  std::size_t edge_count() const;
  static constexpr VertexId root() { return 0; }

  /// Vertex reached from v along `l`, or kNoVertex.
  VertexId target(VertexId v, Letter l) const { return rows_[static_cast<std::size_t>(v)][l.code()]; }
  /// Edges in canonical order (by source, then label). Edge ids used by
  /// FoldHistory refer to positions in this list.
  std::vector<Edge> edges() const;
  std::size_t degree(VertexId v) const;
  bool is_core() const;
  bool is_trivial() const { return edge_count() == 0; }

  RawGraph to_raw() const;

  /// Builds a graph from a folded table (kNoVertex for absent slots, slots
  /// consistent in both directions), keeping the component of `root` and
  /// renumbering canonically. `relabel`, when given, receives old -> new ids.
  static CoreGraph from_table(Alphabet alphabet, const std::vector<Row>& rows, VertexId root,
                              std::vector<VertexId>* relabel = nullptr);

  bool operator==(const CoreGraph& other) const { return rows_ == other.rows_; }

 private:
  Alphabet alphabet_;
  std::vector<Row> rows_;
};

/// Folds a raw graph and keeps the root component. With `shuffle` the fold
/// order is randomized (for confluence testing); otherwise it is the
/// deterministic worklist order.
CoreGraph fold(const RawGraph& graph, FoldHistory* history = nullptr,
               std::mt19937_64* shuffle = nullptr);

/// Repeatedly deletes non-root vertices of degree <= 1.
CoreGraph trim(const CoreGraph& graph, std::vector<VertexId>* relabel = nullptr);

/// Core graph of <gens>. Throws InputError for letters outside `alphabet`.
CoreGraph build_core(std::span<const Word> gens, const Alphabet& alphabet);
/// As above with the alphabet inferred from the letters present.
CoreGraph build_core(std::span<const Word> gens);

/// Follows w from `start` as far as the graph allows. Returns the number of
/// letters consumed and the vertex reached.
std::pair<std::size_t, VertexId> trace(const CoreGraph& graph, const Word& w,
                                       VertexId start = CoreGraph::root());

bool contains(const CoreGraph& graph, const Word& g);

/// First Betti number |E| - |V| + 1, the rank of the subgroup.
std::size_t rank(const CoreGraph& graph);

/// Lexically least shortest root -> v path (letters ranked by the alphabet).
Word coset_label(const CoreGraph& graph, VertexId v);
std::vector<Word> coset_labels(const CoreGraph& graph);

/// Free basis from the breadth-first spanning tree: one word per non-tree
/// edge, ordered by (source, label).
std::vector<Word> basis(const CoreGraph& graph);

/// Quotient C/(u = v), refolded and trimmed. The history starts with the
/// requested VertexMerge(u, v) and its vertex map refers to ids of `graph`.
CoreGraph identify(const CoreGraph& graph, VertexId u, VertexId v, FoldHistory* history = nullptr);

/// Core of the root component of the product graph: C(H ∩ K).
CoreGraph pullback(const CoreGraph& lhs, const CoreGraph& rhs);

/// Core of H ∩ F(sub): drop edges labelled outside `sub`, keep the root
/// component, trim. The result carries `sub` as its alphabet.
CoreGraph restrict(const CoreGraph& graph, const Alphabet& sub);

/// Index of H in K when H <= K and it is finite, nullopt when H is not a
/// subgroup of K or the index is infinite.
std::optional<std::size_t> relative_index(const CoreGraph& sub, const CoreGraph& super);

/// Deterministic Graphviz rendering; the root is drawn as a double circle.
std::string to_dot(const CoreGraph& graph, const std::string& name = "core");

}  // namespace freedep
