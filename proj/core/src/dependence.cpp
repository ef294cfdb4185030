#include "freedep/dependence.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "freedep/errors.hpp"

namespace freedep {

namespace {

void require_alphabet(const CoreGraph& h, const Word& g, const char* where) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!h.alphabet().contains(g[i])) {
      throw InputError(std::string(where) + ": letter '" + std::string(1, g[i].to_char()) +
                       "' at position " + std::to_string(i) + " of \"" + g.to_string() +
                       "\" is outside the subgroup alphabet {" + h.alphabet().to_string() + "}");
    }
  }
}

// rank <H, g> by folding a g-petal onto C(H).
std::size_t rank_with_petal(const CoreGraph& h, const Word& g) {
  RawGraph raw = h.to_raw();
  raw.add_petal(raw.root, g);
  return rank(fold(raw));
}

}  // namespace

DependenceWitness is_dependent(const CoreGraph& h, const Word& g) {
  require_alphabet(h, g, "is_dependent");
  DependenceWitness w;
  w.rank_before = rank(h);
  w.rank_after = rank_with_petal(h, g);

  const auto [prefix_len, u] = trace(h, g);
  w.g1 = g.prefix(prefix_len);
  bool verdict = false;
  if (prefix_len == g.size() && u == CoreGraph::root()) {
    w.g2 = Word();
    w.pair = VertexPair{0, 0, Word(), Word()};
    verdict = true;
  } else {
    const Word rest = g.suffix_from(prefix_len);
    const Word g2 = rest.inverse();
    const auto [g2_len, v] = trace(h, g2);
    if (g2_len == g2.size()) {
      w.g2 = g2;
      const CoreGraph quotient = identify(h, u, v);
      verdict = rank(quotient) <= w.rank_before;
      if (verdict) w.pair = VertexPair{u, v, coset_label(h, u), coset_label(h, v)};
    }
  }
  if (verdict != (w.rank_after <= w.rank_before)) {
    throw std::logic_error("is_dependent: greedy verdict disagrees with direct rank for g = " +
                           g.to_string());
  }
  w.verdict = verdict;
  return w;
}

PairSet pair_set(const CoreGraph& h, const PairSetOptions& options) {
  const std::size_t n = h.vertex_count();
  const std::size_t base_rank = rank(h);
  const std::vector<Word> labels = coset_labels(h);

  // pass[u * n + v]: identification of u and v keeps the rank.
  std::vector<bool> pass(n * n, false);
  for (std::size_t u = 0; u < n; ++u) {
    pass[u * n + u] = true;
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool ok = rank(identify(h, static_cast<VertexId>(u), static_cast<VertexId>(v))) <= base_rank;
      pass[u * n + v] = ok;
      pass[v * n + u] = ok;
    }
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n * n; ++i) {
    if (pass[i]) keep.push_back(i);
  }

  if (options.reduce_neighbors) {
    // Classes of (u, v) ~ (u.l, v.l); keep the pair with the shortlex-least
    // representative from each class.
    std::vector<std::size_t> parent(n * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i : keep) {
      const auto u = static_cast<VertexId>(i / n);
      const auto v = static_cast<VertexId>(i % n);
      for (int code = 0; code < Letter::kCodes; ++code) {
        const Letter l = Letter::from_code(code);
        const VertexId ul = h.target(u, l);
        const VertexId vl = h.target(v, l);
        if (ul == kNoVertex || vl == kNoVertex) continue;
        const std::size_t j = static_cast<std::size_t>(ul) * n + static_cast<std::size_t>(vl);
        if (pass[j]) parent[find(i)] = find(j);
      }
    }
    std::vector<std::size_t> best(n * n, n * n);
    auto rep_of = [&](std::size_t i) { return labels[i / n] * labels[i % n].inverse(); };
    for (std::size_t i : keep) {
      const std::size_t r = find(i);
      if (best[r] == n * n) {
        best[r] = i;
        continue;
      }
      const Word a = rep_of(i);
      const Word b = rep_of(best[r]);
      if (shortlex_less(a, b, h.alphabet())) best[r] = i;
    }
    std::vector<std::size_t> reduced;
    for (std::size_t i : keep) {
      if (best[find(i)] == i) reduced.push_back(i);
    }
    keep = std::move(reduced);
  }

  PairSet out;
  for (std::size_t i : keep) {
    const auto u = static_cast<VertexId>(i / n);
    const auto v = static_cast<VertexId>(i % n);
    out.pairs.push_back({u, v, labels[i / n], labels[i % n]});
  }
  return out;
}

DoubleCosetDecomposition dep_double_cosets(const CoreGraph& h, const PairSetOptions& options) {
  DoubleCosetDecomposition d{h, {}};
  for (const VertexPair& p : pair_set(h, options).pairs) d.representatives.push_back(p.representative());
  std::sort(d.representatives.begin(), d.representatives.end(),
            [&](const Word& a, const Word& b) { return shortlex_less(a, b, h.alphabet()); });
  d.representatives.erase(std::unique(d.representatives.begin(), d.representatives.end()),
                          d.representatives.end());
  return d;
}

std::string DoubleCosetDecomposition::to_string() const {
  std::ostringstream out;
  for (const Word& w : representatives) out << "H " << w.to_string() << " H\n";
  return out.str();
}

bool in_double_coset(const CoreGraph& h, const Word& w, const Word& g) {
  // g = h1 w h2  <=>  H meets g H w^-1. The reduced paths s -> t of the
  // folded graph (s -g-> root of C(H) -w^-1-> t) spell exactly g H w^-1, so
  // the question is whether some word closes up at the root of C(H) and
  // also leads s to t: reachability in the product graph.
  RawGraph raw = h.to_raw();
  raw.alphabet = raw.alphabet.merged(Alphabet::from_generators(g.generators()))
                     .merged(Alphabet::from_generators(w.generators()));
  const VertexId s = g.empty() ? raw.root : raw.add_vertex();
  raw.add_path(s, g, raw.root);
  const Word w_inv = w.inverse();
  const VertexId t = w_inv.empty() ? raw.root : raw.add_vertex();
  raw.add_path(raw.root, w_inv, t);
  raw.root = s;
  FoldHistory history;
  const CoreGraph y = fold(raw, &history);
  const VertexId ys = *history.resolve(s);
  const VertexId yt = *history.resolve(t);

  std::set<std::pair<VertexId, VertexId>> seen{{0, ys}};
  std::vector<std::pair<VertexId, VertexId>> queue{{0, ys}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [a, b] = queue[head];
    if (a == 0 && b == yt) return true;
    for (int code = 0; code < Letter::kCodes; ++code) {
      const Letter l = Letter::from_code(code);
      const VertexId ta = h.target(a, l);
      const VertexId tb = y.target(b, l);
      if (ta == kNoVertex || tb == kNoVertex) continue;
      if (seen.insert({ta, tb}).second) queue.push_back({ta, tb});
    }
  }
  return false;
}

bool in_dep(const DoubleCosetDecomposition& decomposition, const Word& g) {
  return std::any_of(decomposition.representatives.begin(), decomposition.representatives.end(),
                     [&](const Word& w) { return in_double_coset(decomposition.base, w, g); });
}

std::vector<Word> dep_generators(const CoreGraph& h, const PairSetOptions& options) {
  std::vector<Word> gens = basis(h);
  for (const Word& w : dep_double_cosets(h, options).representatives) {
    if (!w.empty()) gens.push_back(w);
  }
  return gens;
}

CoreGraph wedge(const CoreGraph& lhs, const CoreGraph& rhs) {
  if (!lhs.alphabet().disjoint(rhs.alphabet())) {
    throw InputError("wedge: alphabets {" + lhs.alphabet().to_string() + "} and {" +
                     rhs.alphabet().to_string() + "} overlap");
  }
  RawGraph raw = lhs.to_raw();
  raw.alphabet = lhs.alphabet().merged(rhs.alphabet());
  const VertexId offset = static_cast<VertexId>(raw.vertex_count) - 1;
  raw.vertex_count += rhs.vertex_count() - 1;
  auto place = [&](VertexId v) { return v == 0 ? VertexId{0} : v + offset; };
  for (const Edge& e : rhs.edges()) raw.edges.push_back({place(e.source), e.label, place(e.target)});
  return fold(raw);
}

EchelonReport is_echelon(const CoreGraph& h, const Alphabet& order) {
  for (int g : h.alphabet().generators()) {
    if (!order.contains(g)) {
      throw InputError("is_echelon: order {" + order.to_string() + "} misses letter '" +
                       std::string(1, static_cast<char>('a' + g)) + "'");
    }
  }
  EchelonReport report;
  for (std::size_t i = 0; i <= order.size(); ++i) {
    report.ranks.push_back(rank(restrict(h, order.prefix(i))));
    if (i > 0 && report.ranks[i] > report.ranks[i - 1] + 1) report.echelon = false;
  }
  return report;
}

EchelonReport is_echelon(const CoreGraph& h) { return is_echelon(h, h.alphabet()); }

}  // namespace freedep
