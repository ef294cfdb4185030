#include "freedep/equations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "freedep/dependence.hpp"
#include "freedep/errors.hpp"

namespace freedep {

Equation Equation::normalized(std::vector<Word> coefficients, std::vector<int> exponents) {
  if (coefficients.size() != exponents.size() + 1) {
    throw InputError("equation needs one more coefficient than x-powers");
  }
  Equation eq;
  eq.coefficients_ = {coefficients.front()};
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const int e = exponents[i];
    const Word& next = coefficients[i + 1];
    if (e == 0) {
      eq.coefficients_.back() = eq.coefficients_.back() * next;
      continue;
    }
    if (!eq.exponents_.empty() && eq.coefficients_.back().empty()) {
      eq.coefficients_.pop_back();
      eq.exponents_.back() += e;
      if (eq.exponents_.back() == 0) {
        eq.exponents_.pop_back();
        eq.coefficients_.back() = eq.coefficients_.back() * next;
      } else {
        eq.coefficients_.push_back(next);
      }
      continue;
    }
    eq.exponents_.push_back(e);
    eq.coefficients_.push_back(next);
  }
  // A trailing merge can leave a trivial middle coefficient only if more
  // exponents follow, which the loop already handled.
  return eq;
}

namespace {

bool is_variable_token(std::string_view tok, int& exponent) {
  if (tok.empty() || (tok[0] != 'x' && tok[0] != 'X')) return false;
  const int sign = tok[0] == 'X' ? -1 : 1;
  if (tok.size() == 1) {
    exponent = sign;
    return true;
  }
  if (tok[1] != '^') return false;
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data() + 2, tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InputError("bad exponent in \"" + std::string(tok) + "\"");
  }
  exponent = sign * value;
  return true;
}

bool needs_parentheses(const Word& w) {
  const std::string s = w.to_compact_string();
  return !s.empty() && (s[0] == 'x' || s[0] == 'X');
}

}  // namespace

Equation Equation::parse(std::string_view text) {
  std::string body(text);
  if (auto eq_pos = body.find('='); eq_pos != std::string::npos) {
    std::string rhs = body.substr(eq_pos + 1);
    rhs.erase(std::remove_if(rhs.begin(), rhs.end(), [](unsigned char c) { return std::isspace(c); }),
              rhs.end());
    if (rhs != "1") throw InputError("equation right-hand side must be 1, got \"" + rhs + "\"");
    body.resize(eq_pos);
  }
  std::vector<Word> coefficients{Word()};
  std::vector<int> exponents;
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    int exponent = 0;
    if (is_variable_token(tok, exponent)) {
      exponents.push_back(exponent);
      coefficients.emplace_back();
      continue;
    }
    std::string_view core(tok);
    if (core.size() >= 2 && core.front() == '(' && core.back() == ')') {
      core = core.substr(1, core.size() - 2);
    }
    coefficients.back() = coefficients.back() * Word::parse(core);
  }
  return normalized(std::move(coefficients), std::move(exponents));
}

std::size_t Equation::degree() const {
  std::size_t d = 0;
  for (int e : exponents_) d += static_cast<std::size_t>(std::abs(e));
  return d;
}

Word Equation::evaluate(const Word& g) const {
  Word out = coefficients_.front();
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    out = out * g.power(exponents_[i]) * coefficients_[i + 1];
  }
  return out;
}

std::string Equation::to_string() const {
  std::vector<std::string> tokens;
  auto coefficient = [&](const Word& w) {
    if (w.empty()) return;
    const std::string s = w.to_compact_string();
    tokens.push_back(needs_parentheses(w) ? "(" + s + ")" : s);
  };
  coefficient(coefficients_.front());
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    tokens.push_back(exponents_[i] == 1 ? std::string("x") : "x^" + std::to_string(exponents_[i]));
    coefficient(coefficients_[i + 1]);
  }
  if (tokens.empty()) tokens.push_back("1");
  std::string s;
  for (const std::string& t : tokens) s += t + ' ';
  return s + "= 1";
}

Equation to_coefficient_form(const FormalWord& w, std::span<const Word> gens) {
  if (w.max_generator_index() > gens.size()) {
    throw InputError("to_coefficient_form: word uses g" + std::to_string(w.max_generator_index()) +
                     " but only " + std::to_string(gens.size()) + " generators were given");
  }
  std::vector<Word> coefficients{Word()};
  std::vector<int> exponents;
  for (FormalSymbol s : w.symbols()) {
    if (s.is_variable()) {
      exponents.push_back(s.is_inverse() ? -1 : 1);
      coefficients.emplace_back();
      continue;
    }
    const Word& g = gens[s.index() - 1];
    coefficients.back() = coefficients.back() * (s.is_inverse() ? g.inverse() : g);
  }
  Equation eq = Equation::normalized(std::move(coefficients), std::move(exponents));
  eq.set_formal(w);
  return eq;
}

bool verify(const Equation& eq, const Word& g) { return eq.evaluate(g).empty(); }

bool verify(const FormalWord& w, std::span<const Word> gens, const Word& g) {
  return substitute(w, gens, g).empty();
}

EquationBasis equation_basis(const CoreGraph& h, const Word& g) {
  if (!is_dependent(h, g).verdict) {
    throw DomainError("no nontrivial equation exists: " + g.to_string() +
                      " is independent of the subgroup");
  }
  EquationBasis out;
  out.generators = basis(h);
  out.element = g;

  std::vector<Word> tuple = out.generators;
  tuple.push_back(g);
  out.reduction = nielsen_reduce(std::move(tuple));

  std::vector<FormalWord> formal;
  for (std::uint32_t i = 1; i <= out.generators.size(); ++i) formal.push_back(FormalWord::generator(i));
  formal.push_back(FormalWord::variable());
  formal = apply_log(std::move(formal), out.reduction.log);

  const std::size_t s = out.reduction.nontrivial_count();
  out.surviving.assign(formal.begin(), formal.begin() + static_cast<long>(s));
  out.equations.assign(formal.begin() + static_cast<long>(s), formal.end());
  for (const FormalWord& w : out.equations) {
    if (!verify(w, out.generators, g)) {
      throw std::logic_error("equation_basis: replayed word " + w.to_string() + " does not vanish");
    }
  }
  return out;
}

Equation transport(const Equation& eq, const CoreGraph& h, const Word& h1, const Word& h2) {
  for (const Word* w : {&h1, &h2}) {
    if (!contains(h, *w)) {
      throw InputError("transport: " + w->to_string() + " is not an element of the subgroup");
    }
  }
  const Word h1_inv = h1.inverse();
  const Word h2_inv = h2.inverse();
  std::vector<Word> coefficients;
  std::vector<int> exponents;
  Word current = eq.coefficients().front();
  for (std::size_t i = 0; i < eq.exponents().size(); ++i) {
    const int e = eq.exponents()[i];
    for (int k = 0; k < std::abs(e); ++k) {
      if (e > 0) {
        coefficients.push_back(current * h1_inv);
        exponents.push_back(1);
        current = h2;
      } else {
        coefficients.push_back(current * h2_inv);
        exponents.push_back(-1);
        current = h1;
      }
    }
    current = current * eq.coefficients()[i + 1];
  }
  coefficients.push_back(current);
  return Equation::normalized(std::move(coefficients), std::move(exponents));
}

DegreeBound degree_bound(const CoreGraph& h) {
  DegreeBound out;
  for (const Word& rep : dep_double_cosets(h).representatives) {
    const EquationBasis b = equation_basis(h, rep);
    std::optional<Equation> best;
    for (const FormalWord& w : b.equations) {
      Equation eq = to_coefficient_form(w, b.generators);
      if (!best || eq.degree() < best->degree()) best = std::move(eq);
    }
    out.bound = std::max(out.bound, best->degree());
    out.per_representative.emplace_back(rep, std::move(*best));
  }
  return out;
}

namespace {

// A step of a path in C(H) extended by one extra edge ("jump") from u to v.
struct PathStep {
  bool jump = false;
  EdgeId edge = 0;
  bool forward = true;

  PathStep reversed() const { return {jump, edge, !forward}; }
  bool operator==(const PathStep&) const = default;
};

using Path = std::vector<PathStep>;

void append_reduced(Path& out, const Path& piece) {
  for (const PathStep& s : piece) {
    if (!out.empty() && out.back() == s.reversed()) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
}

Path reversed(const Path& p) {
  Path out;
  out.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(it->reversed());
  return out;
}

// Replays a FoldHistory while keeping, for every identified pair of original
// vertices, a path between them in C(H) + jump whose label reduces to 1.
class LiftTracker {
 public:
  LiftTracker(const std::vector<Edge>& edges, std::size_t vertex_count)
      : edges_(edges), links_(vertex_count) {}

  void link(VertexId a, VertexId b, Path witness) {
    const std::size_t id = witnesses_.size();
    witnesses_.push_back(std::move(witness));
    links_[static_cast<std::size_t>(a)].push_back({b, id, true});
    links_[static_cast<std::size_t>(b)].push_back({a, id, false});
  }

  // Path between two vertices of the same merged class, via the merge forest.
  Path connect(VertexId from, VertexId to) const {
    if (from == to) return {};
    const std::size_t n = links_.size();
    std::vector<std::pair<VertexId, const Link*>> prev(n, {kNoVertex, nullptr});
    std::vector<bool> seen(n, false);
    std::vector<VertexId> queue{from};
    seen[static_cast<std::size_t>(from)] = true;
    for (std::size_t head = 0; head < queue.size() && !seen[static_cast<std::size_t>(to)]; ++head) {
      const VertexId x = queue[head];
      for (const Link& l : links_[static_cast<std::size_t>(x)]) {
        if (seen[static_cast<std::size_t>(l.other)]) continue;
        seen[static_cast<std::size_t>(l.other)] = true;
        prev[static_cast<std::size_t>(l.other)] = {x, &l};
        queue.push_back(l.other);
      }
    }
    if (!seen[static_cast<std::size_t>(to)]) {
      throw std::logic_error("equation_from_folding: vertices not identified in history replay");
    }
    std::vector<Path> pieces;
    for (VertexId x = to; x != from;) {
      const auto [p, link] = prev[static_cast<std::size_t>(x)];
      const Path& w = witnesses_[link->witness];
      pieces.push_back(link->forward ? w : reversed(w));
      x = p;
    }
    Path out;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) append_reduced(out, *it);
    return out;
  }

  // Endpoints of an edge viewed from its shared end.
  std::pair<VertexId, VertexId> shared_and_far(EdgeId e, bool outgoing) const {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    return outgoing ? std::pair{edge.source, edge.target} : std::pair{edge.target, edge.source};
  }

 private:
  struct Link {
    VertexId other;
    std::size_t witness;
    bool forward;
  };
  const std::vector<Edge>& edges_;
  std::vector<std::vector<Link>> links_;
  std::vector<Path> witnesses_;
};

}  // namespace

Equation equation_from_folding(const CoreGraph& h, const Word& g) {
  if (contains(h, g)) return Equation::normalized({Word(), g.inverse()}, {1});

  const DependenceWitness witness = is_dependent(h, g);
  if (!witness.verdict) {
    throw DomainError("no nontrivial equation exists: " + g.to_string() +
                      " is independent of the subgroup");
  }
  const VertexId u = witness.pair->u;
  const VertexId v = witness.pair->v;
  const Word& g1 = witness.g1;
  const Word& g2 = *witness.g2;

  FoldHistory history;
  identify(h, u, v, &history);

  const std::vector<Edge> edges = h.edges();
  LiftTracker tracker(edges, h.vertex_count());
  std::optional<Path> loop;
  for (const FoldStep& step : history.steps()) {
    if (const auto* vm = std::get_if<VertexMerge>(&step)) {
      if (!vm->cause) tracker.link(u, v, Path{PathStep{true, 0, true}});
      continue;
    }
    const auto& em = std::get<EdgeMerge>(step);
    const auto [x1, p] = tracker.shared_and_far(em.kept, em.outgoing);
    const auto [x2, q] = tracker.shared_and_far(em.absorbed, em.outgoing);
    const PathStep kept_out{false, em.kept, em.outgoing};          // x1 -> p
    const PathStep absorbed_out{false, em.absorbed, em.outgoing};  // x2 -> q
    if (em.closes_cycle) {
      Path cycle{kept_out};
      append_reduced(cycle, tracker.connect(p, q));
      append_reduced(cycle, Path{absorbed_out.reversed()});
      append_reduced(cycle, tracker.connect(x2, x1));
      loop = std::move(cycle);
      // Base the loop at the root along the breadth-first tree of C(H).
      Path to_x1;
      const Word label = coset_label(h, x1);
      VertexId at = CoreGraph::root();
      for (Letter l : label.letters()) {
        const VertexId next = h.target(at, l);
        const Edge probe = l.is_inverse() ? Edge{next, l.inverse(), at} : Edge{at, l, next};
        const auto it = std::lower_bound(edges.begin(), edges.end(), probe, [](const Edge& a, const Edge& b) {
          return a.source != b.source ? a.source < b.source : a.label < b.label;
        });
        to_x1.push_back({false, static_cast<EdgeId>(it - edges.begin()), !l.is_inverse()});
        at = next;
      }
      Path based = to_x1;
      append_reduced(based, *loop);
      append_reduced(based, reversed(to_x1));
      loop = std::move(based);
      break;
    }
    Path w{kept_out.reversed()};
    append_reduced(w, tracker.connect(x1, x2));
    append_reduced(w, Path{absorbed_out});
    tracker.link(p, q, std::move(w));
  }
  if (!loop) throw std::logic_error("equation_from_folding: no fold closed a cycle");

  const Word g1_inv = g1.inverse();
  const Word g2_inv = g2.inverse();
  std::vector<Word> coefficients;
  std::vector<int> exponents;
  std::vector<Letter> segment;
  auto close_segment = [&](const Word& tail) {
    coefficients.push_back(Word::reduce(segment) * tail);
    segment.clear();
  };
  auto open_segment = [&](const Word& head) {
    segment.assign(head.letters().begin(), head.letters().end());
  };
  for (const PathStep& s : *loop) {
    if (s.jump) {
      if (s.forward) {
        close_segment(g1_inv);
        exponents.push_back(1);
        open_segment(g2);
      } else {
        close_segment(g2_inv);
        exponents.push_back(-1);
        open_segment(g1);
      }
      continue;
    }
    const Letter l = edges[static_cast<std::size_t>(s.edge)].label;
    segment.push_back(s.forward ? l : l.inverse());
  }
  close_segment(Word());

  Equation eq = Equation::normalized(std::move(coefficients), std::move(exponents));
  if (eq.degree() == 0 || !verify(eq, g)) {
    throw std::logic_error("equation_from_folding: lifted cycle gave " + eq.to_string());
  }
  return eq;
}

}  // namespace freedep
