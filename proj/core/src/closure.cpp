#include "freedep/closure.hpp"

#include <algorithm>
#include <sstream>

#include "freedep/errors.hpp"

namespace freedep {

CoreGraph dep_subgroup(const CoreGraph& h, const PairSetOptions& options) {
  return build_core(dep_generators(h, options), h.alphabet());
}

ClosureResult dependence_closure(const CoreGraph& h, const PairSetOptions& options) {
  ClosureResult result;
  result.chain.push_back(h);
  for (;;) {
    CoreGraph next = dep_subgroup(result.chain.back(), options);
    if (next == result.chain.back()) break;
    result.chain.push_back(std::move(next));
  }
  result.length = result.chain.size() - 1;
  return result;
}

bool is_dependence_closed(const CoreGraph& h) { return dep_subgroup(h) == h; }

std::string OracleReport::to_string() const {
  std::ostringstream out;
  out << (holds ? "holds" : "fails");
  if (witness) out << " witness=" << witness->to_string();
  out << " bound=" << length_bound;
  if (exponent_bound > 0) out << " exponent_bound=" << exponent_bound;
  out << " checked=" << candidates_checked;
  return out.str();
}

std::vector<Word> enumerate_elements(const CoreGraph& g, std::size_t max_length) {
  std::vector<Word> out;
  struct Frame {
    VertexId at;
    std::vector<Letter> path;
  };
  std::vector<Frame> stack{{CoreGraph::root(), {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.at == CoreGraph::root()) out.push_back(Word::reduce(f.path));
    if (f.path.size() == max_length) continue;
    for (int code = 0; code < Letter::kCodes; ++code) {
      const Letter l = Letter::from_code(code);
      if (!f.path.empty() && f.path.back() == l.inverse()) continue;
      const VertexId t = g.target(f.at, l);
      if (t == kNoVertex) continue;
      Frame next{t, f.path};
      next.path.push_back(l);
      stack.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const Word& a, const Word& b) { return shortlex_less(a, b, g.alphabet()); });
  return out;
}

OracleReport is_dependence_closed_in(const CoreGraph& h, const CoreGraph& g, std::size_t max_length) {
  for (const Word& w : basis(h)) {
    if (!contains(g, w)) {
      throw InputError("is_dependence_closed_in: generator " + w.to_string() +
                       " of H is not in G");
    }
  }
  const CoreGraph ambient_h = build_core(basis(h), h.alphabet().merged(g.alphabet()));
  OracleReport report;
  report.length_bound = max_length;
  for (const Word& w : enumerate_elements(g, max_length)) {
    if (contains(h, w)) continue;
    ++report.candidates_checked;
    if (is_dependent(ambient_h, w).verdict) {
      report.holds = false;
      report.witness = w;
      break;
    }
  }
  return report;
}

OracleReport is_pure(const CoreGraph& h, std::size_t max_length, std::size_t max_exponent) {
  OracleReport report;
  report.length_bound = max_length;
  report.exponent_bound = max_exponent;
  for (const Word& w : enumerate_reduced_words(h.alphabet(), max_length)) {
    if (contains(h, w)) continue;
    ++report.candidates_checked;
    Word p = w;
    for (std::size_t k = 2; k <= max_exponent; ++k) {
      p = p * w;
      if (contains(h, p)) {
        report.holds = false;
        report.witness = w;
        return report;
      }
    }
  }
  return report;
}

OracleReport is_malnormal(const CoreGraph& h, std::size_t max_length) {
  OracleReport report;
  report.length_bound = max_length;
  const std::vector<Word> gens = basis(h);
  for (const Word& w : enumerate_reduced_words(h.alphabet(), max_length)) {
    if (contains(h, w)) continue;
    ++report.candidates_checked;
    std::vector<Word> conjugated;
    for (const Word& x : gens) conjugated.push_back(w.inverse() * x * w);
    const CoreGraph conj = build_core(conjugated, h.alphabet());
    if (!pullback(conj, h).is_trivial()) {
      report.holds = false;
      report.witness = w;
      return report;
    }
  }
  return report;
}

OracleReport has_no_finite_index_overgroup(const CoreGraph& h, std::size_t max_length) {
  OracleReport report;
  report.length_bound = max_length;
  std::vector<Word> gens = basis(h);
  for (const Word& w : enumerate_reduced_words(h.alphabet(), max_length)) {
    if (contains(h, w)) continue;
    ++report.candidates_checked;
    std::vector<Word> extended = gens;
    extended.push_back(w);
    const CoreGraph over = build_core(extended, h.alphabet());
    if (relative_index(h, over)) {
      report.holds = false;
      report.witness = w;
      return report;
    }
  }
  return report;
}

}  // namespace freedep
