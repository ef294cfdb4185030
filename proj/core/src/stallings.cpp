#include "freedep/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "freedep/errors.hpp"

namespace freedep {

namespace {

CoreGraph::Row empty_row() {
  CoreGraph::Row row;
  row.fill(kNoVertex);
  return row;
}

struct HalfEdge {
  EdgeId edge;
  bool at_source;
};

// Union-find folding engine over a raw graph. Vertex classes are identified
// by their representative (a pre-fold vertex id); edges are folded by
// marking the absorbed one dead.
class Folder {
 public:
  Folder(const RawGraph& graph, FoldHistory* history)
      : graph_(graph),
        history_(history),
        parent_(graph.vertex_count),
        incidence_(graph.vertex_count),
        alive_(graph.edges.size(), true) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const Edge& edge = graph.edges[e];
      incidence_[static_cast<std::size_t>(edge.source)].push_back({static_cast<EdgeId>(e), true});
      incidence_[static_cast<std::size_t>(edge.target)].push_back({static_cast<EdgeId>(e), false});
    }
  }

  void seed(VertexId u, VertexId v) {
    const VertexId a = find(u);
    const VertexId b = find(v);
    if (a == b) return;
    const auto [kept, absorbed] = unite(a, b);
    record(VertexMerge{kept, absorbed, std::nullopt});
    dirty_.push_back(kept);
  }

  void run(std::mt19937_64* rng) {
    std::vector<VertexId> work;
    if (dirty_.empty() || rng != nullptr || !seeded_only_) {
      work.resize(graph_.vertex_count);
      std::iota(work.begin(), work.end(), 0);
    }
    work.insert(work.end(), dirty_.begin(), dirty_.end());
    std::size_t head = 0;
    while (head < work.size()) {
      VertexId x;
      if (rng != nullptr) {
        std::uniform_int_distribution<std::size_t> pick(head, work.size() - 1);
        std::swap(work[head], work[pick(*rng)]);
      }
      x = find(work[head++]);
      std::vector<VertexId> touched;
      if (scan(x, rng, touched)) {
        work.insert(work.end(), touched.begin(), touched.end());
      }
    }
  }

  CoreGraph result(std::vector<VertexId>* vertex_map) {
    std::vector<CoreGraph::Row> rows(graph_.vertex_count, empty_row());
    for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
      if (!alive_[e]) continue;
      const Edge& edge = graph_.edges[e];
      const VertexId s = find(edge.source);
      const VertexId t = find(edge.target);
      rows[static_cast<std::size_t>(s)][edge.label.code()] = t;
      rows[static_cast<std::size_t>(t)][edge.label.inverse().code()] = s;
    }
    std::vector<VertexId> relabel;
    CoreGraph out = CoreGraph::from_table(graph_.alphabet, rows, find(graph_.root), &relabel);
    if (vertex_map != nullptr) {
      vertex_map->assign(graph_.vertex_count, kNoVertex);
      for (std::size_t v = 0; v < graph_.vertex_count; ++v) {
        (*vertex_map)[v] = relabel[static_cast<std::size_t>(find(static_cast<VertexId>(v)))];
      }
    }
    return out;
  }

  // When only an identification was requested on an already folded graph,
  // the merged class is the only place a fold can start.
  void assume_folded() { seeded_only_ = true; }

 private:
  VertexId find(VertexId v) {
    auto& p = parent_;
    while (p[static_cast<std::size_t>(v)] != v) {
      p[static_cast<std::size_t>(v)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(v)])];
      v = p[static_cast<std::size_t>(v)];
    }
    return v;
  }

  std::pair<VertexId, VertexId> unite(VertexId a, VertexId b) {
    const VertexId kept = std::min(a, b);
    const VertexId absorbed = std::max(a, b);
    parent_[static_cast<std::size_t>(absorbed)] = kept;
    auto& into = incidence_[static_cast<std::size_t>(kept)];
    auto& from = incidence_[static_cast<std::size_t>(absorbed)];
    into.insert(into.end(), from.begin(), from.end());
    from.clear();
    from.shrink_to_fit();
    return {kept, absorbed};
  }

  Letter label_from(const HalfEdge& h) const {
    const Letter l = graph_.edges[static_cast<std::size_t>(h.edge)].label;
    return h.at_source ? l : l.inverse();
  }

  VertexId far_end(const HalfEdge& h) const {
    const Edge& e = graph_.edges[static_cast<std::size_t>(h.edge)];
    return h.at_source ? e.target : e.source;
  }

  void record(FoldStep step) {
    ++step_count_;
    if (history_ != nullptr) history_->record(step);
  }

  // Folds the first colliding pair at x, if any.
  bool scan(VertexId x, std::mt19937_64* rng, std::vector<VertexId>& touched) {
    auto& inc = incidence_[static_cast<std::size_t>(x)];
    std::erase_if(inc, [&](const HalfEdge& h) { return !alive_[static_cast<std::size_t>(h.edge)]; });
    if (rng != nullptr) std::shuffle(inc.begin(), inc.end(), *rng);
    std::array<std::int32_t, Letter::kCodes> seen;
    seen.fill(-1);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const int slot = label_from(inc[i]).code();
      if (seen[slot] < 0) {
        seen[slot] = static_cast<std::int32_t>(i);
        continue;
      }
      const HalfEdge kept = inc[static_cast<std::size_t>(seen[slot])];
      const HalfEdge absorbed = inc[i];
      alive_[static_cast<std::size_t>(absorbed.edge)] = false;
      const VertexId far_kept = find(far_end(kept));
      const VertexId far_absorbed = find(far_end(absorbed));
      const bool closes = far_kept == far_absorbed;
      const std::size_t cause = step_count_;
      record(EdgeMerge{kept.edge, absorbed.edge, absorbed.at_source, closes});
      if (!closes) {
        const auto [k, a] = unite(far_kept, far_absorbed);
        record(VertexMerge{k, a, cause});
        touched.push_back(k);
      }
      touched.push_back(find(x));
      return true;
    }
    return false;
  }

  const RawGraph& graph_;
  FoldHistory* history_;
  std::vector<VertexId> parent_;
  std::vector<std::vector<HalfEdge>> incidence_;
  std::vector<bool> alive_;
  std::vector<VertexId> dirty_;
  std::size_t step_count_ = 0;
  bool seeded_only_ = false;
};

}  // namespace

void RawGraph::add_edge(VertexId from, Letter label, VertexId to) {
  if (label.is_inverse()) {
    edges.push_back({to, label.inverse(), from});
  } else {
    edges.push_back({from, label, to});
  }
}

void RawGraph::add_path(VertexId from, const Word& w, VertexId to) {
  if (w.empty()) return;
  VertexId current = from;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const VertexId next = (i + 1 == w.size()) ? to : add_vertex();
    add_edge(current, w[i], next);
    current = next;
  }
}

std::optional<VertexId> FoldHistory::resolve(VertexId pre_fold) const {
  if (pre_fold < 0 || static_cast<std::size_t>(pre_fold) >= vertex_map_.size()) return std::nullopt;
  const VertexId v = vertex_map_[static_cast<std::size_t>(pre_fold)];
  if (v == kNoVertex) return std::nullopt;
  return v;
}

std::size_t FoldHistory::cycles_closed() const {
  return static_cast<std::size_t>(std::count_if(steps_.begin(), steps_.end(), [](const FoldStep& s) {
    const auto* e = std::get_if<EdgeMerge>(&s);
    return e != nullptr && e->closes_cycle;
  }));
}

void FoldHistory::compose(std::span<const VertexId> relabel) {
  for (VertexId& v : vertex_map_) {
    if (v != kNoVertex) v = relabel[static_cast<std::size_t>(v)];
  }
}

CoreGraph::CoreGraph() : rows_{empty_row()} {}

CoreGraph::CoreGraph(Alphabet alphabet) : alphabet_(std::move(alphabet)), rows_{empty_row()} {}

std::size_t CoreGraph::edge_count() const {
  std::size_t n = 0;
  for (const Row& row : rows_) {
    for (int code = 0; code < Letter::kCodes; code += 2) {
      if (row[code] != kNoVertex) ++n;
    }
  }
  return n;
}

std::vector<Edge> CoreGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < rows_.size(); ++v) {
    for (int code = 0; code < Letter::kCodes; code += 2) {
      if (rows_[v][code] != kNoVertex) {
        out.push_back({static_cast<VertexId>(v), Letter::from_code(code), rows_[v][code]});
      }
    }
  }
  return out;
}

std::size_t CoreGraph::degree(VertexId v) const {
  const Row& row = rows_[static_cast<std::size_t>(v)];
  return static_cast<std::size_t>(
      std::count_if(row.begin(), row.end(), [](VertexId t) { return t != kNoVertex; }));
}

bool CoreGraph::is_core() const {
  for (std::size_t v = 1; v < rows_.size(); ++v) {
    if (degree(static_cast<VertexId>(v)) < 2) return false;
  }
  return true;
}

RawGraph CoreGraph::to_raw() const {
  RawGraph raw;
  raw.alphabet = alphabet_;
  raw.vertex_count = rows_.size();
  raw.root = 0;
  raw.edges = edges();
  return raw;
}

CoreGraph CoreGraph::from_table(Alphabet alphabet, const std::vector<Row>& rows, VertexId root,
                                std::vector<VertexId>* relabel) {
  std::vector<VertexId> order(rows.size(), kNoVertex);
  std::vector<VertexId> queue{root};
  order[static_cast<std::size_t>(root)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Row& row = rows[static_cast<std::size_t>(queue[head])];
    for (int code = 0; code < Letter::kCodes; ++code) {
      const VertexId t = row[code];
      if (t == kNoVertex || order[static_cast<std::size_t>(t)] != kNoVertex) continue;
      order[static_cast<std::size_t>(t)] = static_cast<VertexId>(queue.size());
      queue.push_back(t);
    }
  }
  CoreGraph g(std::move(alphabet));
  g.rows_.assign(queue.size(), empty_row());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Row& row = rows[static_cast<std::size_t>(queue[i])];
    for (int code = 0; code < Letter::kCodes; ++code) {
      if (row[code] != kNoVertex) g.rows_[i][code] = order[static_cast<std::size_t>(row[code])];
    }
  }
  if (relabel != nullptr) *relabel = std::move(order);
  return g;
}

CoreGraph fold(const RawGraph& graph, FoldHistory* history, std::mt19937_64* shuffle) {
  Folder folder(graph, history);
  folder.run(shuffle);
  std::vector<VertexId> map;
  CoreGraph out = folder.result(&map);
  if (history != nullptr) history->set_vertex_map(std::move(map));
  return out;
}

CoreGraph trim(const CoreGraph& graph, std::vector<VertexId>* relabel) {
  const std::size_t n = graph.vertex_count();
  std::vector<CoreGraph::Row> rows(n);
  std::vector<std::size_t> degree(n);
  std::vector<VertexId> pending;
  for (std::size_t v = 0; v < n; ++v) {
    for (int code = 0; code < Letter::kCodes; ++code) {
      rows[v][code] = graph.target(static_cast<VertexId>(v), Letter::from_code(code));
    }
    degree[v] = graph.degree(static_cast<VertexId>(v));
    if (v != 0 && degree[v] <= 1) pending.push_back(static_cast<VertexId>(v));
  }
  while (!pending.empty()) {
    const auto v = static_cast<std::size_t>(pending.back());
    pending.pop_back();
    for (int code = 0; code < Letter::kCodes; ++code) {
      const VertexId t = rows[v][code];
      if (t == kNoVertex) continue;
      rows[v][code] = kNoVertex;
      const auto ti = static_cast<std::size_t>(t);
      rows[ti][Letter::from_code(code).inverse().code()] = kNoVertex;
      --degree[v];
      if (ti != v) {
        --degree[ti];
        if (ti != 0 && degree[ti] == 1) pending.push_back(t);
      }
    }
  }
  return CoreGraph::from_table(graph.alphabet(), rows, 0, relabel);
}

CoreGraph build_core(std::span<const Word> gens, const Alphabet& alphabet) {
  RawGraph raw;
  raw.alphabet = alphabet;
  for (const Word& w : gens) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!alphabet.contains(w[i])) {
        throw InputError("generator \"" + w.to_string() + "\" uses letter '" +
                         std::string(1, w[i].to_char()) + "' outside alphabet {" +
                         alphabet.to_string() + "}");
      }
    }
    raw.add_petal(raw.root, w);
  }
  return trim(fold(raw));
}

CoreGraph build_core(std::span<const Word> gens) {
  std::vector<int> letters;
  for (const Word& w : gens) {
    for (int g : w.generators()) letters.push_back(g);
  }
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  return build_core(gens, Alphabet::from_generators(std::move(letters)));
}

std::pair<std::size_t, VertexId> trace(const CoreGraph& graph, const Word& w, VertexId start) {
  VertexId v = start;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const VertexId next = graph.target(v, w[i]);
    if (next == kNoVertex) return {i, v};
    v = next;
  }
  return {w.size(), v};
}

bool contains(const CoreGraph& graph, const Word& g) {
  const auto [consumed, end] = trace(graph, g);
  return consumed == g.size() && end == CoreGraph::root();
}

std::size_t rank(const CoreGraph& graph) {
  return graph.edge_count() + 1 - graph.vertex_count();
}

namespace {

struct BfsTree {
  std::vector<VertexId> parent;
  std::vector<Letter> via;  // letter read from parent to the vertex
};

BfsTree bfs_tree(const CoreGraph& graph) {
  const std::size_t n = graph.vertex_count();
  BfsTree tree{std::vector<VertexId>(n, kNoVertex), std::vector<Letter>(n)};
  std::vector<bool> seen(n, false);
  std::vector<VertexId> queue{CoreGraph::root()};
  seen[0] = true;
  const std::vector<Letter> letters = graph.alphabet().letters();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (Letter l : letters) {
      const VertexId t = graph.target(v, l);
      if (t == kNoVertex || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      tree.parent[static_cast<std::size_t>(t)] = v;
      tree.via[static_cast<std::size_t>(t)] = l;
      queue.push_back(t);
    }
  }
  return tree;
}

Word path_from_root(const BfsTree& tree, VertexId v) {
  std::vector<Letter> rev;
  while (v != CoreGraph::root()) {
    rev.push_back(tree.via[static_cast<std::size_t>(v)]);
    v = tree.parent[static_cast<std::size_t>(v)];
  }
  std::reverse(rev.begin(), rev.end());
  return Word::reduce(rev);
}

}  // namespace

Word coset_label(const CoreGraph& graph, VertexId v) {
  return path_from_root(bfs_tree(graph), v);
}

std::vector<Word> coset_labels(const CoreGraph& graph) {
  const BfsTree tree = bfs_tree(graph);
  std::vector<Word> out;
  out.reserve(graph.vertex_count());
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    out.push_back(path_from_root(tree, static_cast<VertexId>(v)));
  }
  return out;
}

std::vector<Word> basis(const CoreGraph& graph) {
  const BfsTree tree = bfs_tree(graph);
  std::vector<Word> labels;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    labels.push_back(path_from_root(tree, static_cast<VertexId>(v)));
  }
  auto is_tree_edge = [&](const Edge& e) {
    const auto s = static_cast<std::size_t>(e.source);
    const auto t = static_cast<std::size_t>(e.target);
    if (e.target != CoreGraph::root() && tree.parent[t] == e.source && tree.via[t] == e.label) return true;
    return e.source != CoreGraph::root() && tree.parent[s] == e.target && tree.via[s] == e.label.inverse();
  };
  std::vector<Word> out;
  for (const Edge& e : graph.edges()) {
    if (is_tree_edge(e)) continue;
    out.push_back(labels[static_cast<std::size_t>(e.source)] * Word::letter(e.label) *
                  labels[static_cast<std::size_t>(e.target)].inverse());
  }
  return out;
}

CoreGraph identify(const CoreGraph& graph, VertexId u, VertexId v, FoldHistory* history) {
  const RawGraph raw = graph.to_raw();
  Folder folder(raw, history);
  folder.assume_folded();
  folder.seed(u, v);
  folder.run(nullptr);
  std::vector<VertexId> map;
  const CoreGraph folded = folder.result(&map);
  std::vector<VertexId> relabel;
  CoreGraph out = trim(folded, &relabel);
  if (history != nullptr) {
    history->set_vertex_map(std::move(map));
    history->compose(relabel);
  }
  return out;
}

CoreGraph pullback(const CoreGraph& lhs, const CoreGraph& rhs) {
  std::map<std::pair<VertexId, VertexId>, VertexId> ids;
  std::vector<std::pair<VertexId, VertexId>> queue{{0, 0}};
  ids[{0, 0}] = 0;
  std::vector<CoreGraph::Row> rows{empty_row()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [a, b] = queue[head];
    for (int code = 0; code < Letter::kCodes; ++code) {
      const Letter l = Letter::from_code(code);
      const VertexId ta = lhs.target(a, l);
      const VertexId tb = rhs.target(b, l);
      if (ta == kNoVertex || tb == kNoVertex) continue;
      auto [it, inserted] = ids.try_emplace({ta, tb}, static_cast<VertexId>(queue.size()));
      if (inserted) {
        queue.push_back({ta, tb});
        rows.push_back(empty_row());
      }
      rows[head][code] = it->second;
    }
  }
  return trim(CoreGraph::from_table(lhs.alphabet().merged(rhs.alphabet()), rows, 0));
}

CoreGraph restrict(const CoreGraph& graph, const Alphabet& sub) {
  std::vector<CoreGraph::Row> rows(graph.vertex_count(), empty_row());
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    for (int code = 0; code < Letter::kCodes; ++code) {
      const Letter l = Letter::from_code(code);
      if (sub.contains(l)) rows[v][code] = graph.target(static_cast<VertexId>(v), l);
    }
  }
  return trim(CoreGraph::from_table(sub, rows, 0));
}

std::optional<std::size_t> relative_index(const CoreGraph& sub, const CoreGraph& super) {
  // Rewrite the generators of `sub` over the free basis of `super` (one new
  // letter per non-tree edge), then a complete core over that basis has as
  // many vertices as the index.
  const std::vector<Word> super_basis = basis(super);
  if (super_basis.size() > static_cast<std::size_t>(Letter::kMaxGenerators)) {
    throw InputError("relative_index: ambient subgroup rank exceeds 26");
  }
  const BfsTree tree = bfs_tree(super);
  std::map<std::pair<VertexId, int>, Letter> edge_letter;
  {
    int next = 0;
    for (const Edge& e : super.edges()) {
      const auto t = static_cast<std::size_t>(e.target);
      const auto s = static_cast<std::size_t>(e.source);
      const bool tree_edge =
          (e.target != 0 && tree.parent[t] == e.source && tree.via[t] == e.label) ||
          (e.source != 0 && tree.parent[s] == e.target && tree.via[s] == e.label.inverse());
      if (tree_edge) continue;
      const Letter y(next++, false);
      edge_letter[{e.source, e.label.code()}] = y;
      edge_letter[{e.target, e.label.inverse().code()}] = y.inverse();
    }
  }
  std::vector<Word> rewritten;
  for (const Word& h : basis(sub)) {
    std::vector<Letter> out;
    VertexId v = 0;
    for (Letter l : h.letters()) {
      const VertexId next = super.target(v, l);
      if (next == kNoVertex) return std::nullopt;
      if (auto it = edge_letter.find({v, l.code()}); it != edge_letter.end()) out.push_back(it->second);
      v = next;
    }
    if (v != 0) return std::nullopt;
    rewritten.push_back(Word::reduce(out));
  }
  std::vector<int> gens(super_basis.size());
  std::iota(gens.begin(), gens.end(), 0);
  const Alphabet y_alphabet = Alphabet::from_generators(gens);
  const CoreGraph image = build_core(rewritten, y_alphabet);
  for (std::size_t v = 0; v < image.vertex_count(); ++v) {
    if (image.degree(static_cast<VertexId>(v)) != 2 * y_alphabet.size()) return std::nullopt;
  }
  return image.vertex_count();
}

std::string to_dot(const CoreGraph& graph, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    out << "  " << v;
    if (v == 0) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (const Edge& e : graph.edges()) {
    out << "  " << e.source << " -> " << e.target << " [label=\"" << e.label.to_char() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace freedep
