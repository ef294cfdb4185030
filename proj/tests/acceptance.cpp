// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "freedep/closure.hpp"
#include "freedep/dependence.hpp"
#include "freedep/equations.hpp"

using namespace freedep;
using freedep::testing::CatalogEntry;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

Word W(const char* s) { return Word::parse(s); }

CoreGraph H(std::initializer_list<const char*> gens, const char* alphabet) {
  std::vector<Word> words;
  for (const char* g : gens) words.push_back(W(g));
  return build_core(words, Alphabet(alphabet));
}

bool petal_dependent(const CoreGraph& h, const Word& g) {
  RawGraph raw = h.to_raw();
  raw.add_petal(0, g);
  return rank(fold(raw)) <= rank(h);
}

std::vector<Word> dependent_words(const CatalogEntry& e, const CoreGraph& h, std::size_t max_len) {
  std::vector<Word> out;
  for (const Word& g : enumerate_reduced_words(e.alphabet, max_len)) {
    if (is_dependent(h, g).verdict) out.push_back(g);
  }
  return out;
}

Word random_element(std::mt19937_64& rng, const std::vector<Word>& gens, std::size_t factors) {
  if (gens.empty()) return Word();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  Word out;
  for (std::size_t i = 0; i < factors; ++i) {
    const Word& g = gens[pick(rng)];
    out = out * ((rng() & 1) ? g : g.inverse());
  }
  return out;
}

FormalWord random_formal(std::mt19937_64& rng, std::uint32_t generators, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<std::uint32_t> index(0, generators);
  FormalWord out;
  for (std::size_t i = len(rng); i > 0; --i) {
    const std::uint32_t k = index(rng);
    const int e = (rng() & 1) ? 1 : -1;
    out = out * (k == 0 ? FormalWord::variable(e) : FormalWord::generator(k, e));
  }
  return out;
}

void worked_examples(Outcome& o) {
  const CoreGraph h = H({"abA", "b"}, "abc");
  const CoreGraph g = H({"acA", "c"}, "abc");
  const CoreGraph dh = dep_subgroup(h);
  const CoreGraph dg = dep_subgroup(g);
  o.expect(dh == H({"a", "b"}, "abc"), "Dep<abA,b> != <a,b>");
  o.expect(dg == H({"a", "c"}, "abc"), "Dep<acA,c> != <a,c>");
  o.expect(pullback(h, g).is_trivial(), "H n G not trivial");
  o.expect(dep_subgroup(pullback(h, g)).is_trivial(), "Dep(H n G) not trivial");
  o.expect(pullback(dh, dg) == H({"a"}, "abc"), "Dep H n Dep G != <a>");
  o.detail << "Dep H=<a,b>, Dep G=<a,c>, H n G=1, Dep H n Dep G=<a>";
}

void a10_b10(Outcome& o) {
  const CoreGraph h = H({"a^10", "b^10"}, "ab");
  const DoubleCosetDecomposition d = dep_double_cosets(h);
  for (const auto& [word, expected] : std::vector<std::pair<const char*, bool>>{{"a", true}, {"b", true}, {"ab", false}}) {
    const Word g = W(word);
    const DependenceWitness w = is_dependent(h, g);
    const bool by_rank = petal_dependent(h, g);
    const bool by_coset = in_dep(d, g);
    bool by_pair = false;
    if (w.pair) {
      std::vector<Word> gens = basis(h);
      gens.push_back(g);
      by_pair = identify(h, w.pair->u, w.pair->v) == build_core(gens, h.alphabet()) &&
                in_double_coset(h, w.pair->representative(), g);
    }
    o.expect(by_rank == expected, std::string("rank test on ") + word);
    o.expect(by_coset == expected, std::string("double coset on ") + word);
    o.expect(by_pair == expected && w.verdict == expected, std::string("witness pair on ") + word);
    o.detail << word << (expected ? " dependent" : " independent") << "; ";
  }
  o.detail << d.representatives.size() << " double cosets";
}

void closed_examples(Outcome& o) {
  for (const char* gen : {"aabb", "abAB"}) {
    const CoreGraph h = H({gen}, "ab");
    o.expect(is_dependence_closed(h), std::string(gen) + " not closed");
    o.expect(dependence_closure(h).length == 0, std::string(gen) + " closure length != 0");
  }
  o.detail << "<a^2b^2>, <[a,b]> closed with length 0";
}

void rank_bound(Outcome& o, const std::vector<CatalogEntry>& cat) {
  std::size_t violations = 0;
  for (const CatalogEntry& e : cat) {
    const CoreGraph h = e.core();
    for (bool reduce : {true, false}) {
      if (rank(dep_subgroup(h, PairSetOptions{reduce})) > rank(h)) {
        ++violations;
        o.expect(false, e.name);
      }
    }
  }
  o.expect(cat.size() >= 25, "catalog smaller than 25");
  o.detail << cat.size() << " subgroups, " << violations << " violations";
}

void oracle_equivalence(Outcome& o, const std::vector<CatalogEntry>& cat) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  std::size_t disagreements = 0;
  for (const CatalogEntry& e : cat) {
    const CoreGraph h = e.core();
    const DoubleCosetDecomposition d = dep_double_cosets(h);
    for (const Word& g : enumerate_reduced_words(e.alphabet, 6)) {
      ++checked;
      const bool a = is_dependent(h, g).verdict;
      const bool b = in_dep(d, g);
      const bool c = petal_dependent(h, g);
      if (a != b || a != c) {
        ++disagreements;
        o.expect(false, e.name + " at " + g.to_string());
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(seconds <= 60.0, "runtime over 60 s");
  o.detail << checked << " pairs, " << disagreements << " disagreements, " << seconds << " s";
}

void normal_bases(Outcome& o, const std::vector<CatalogEntry>& cat) {
  std::mt19937_64 rng(41);
  std::size_t pairs = 0;
  std::size_t samples = 0;
  for (const CatalogEntry& e : cat) {
    const CoreGraph h = e.core();
    for (const Word& g : dependent_words(e, h, 4)) {
      ++pairs;
      const EquationBasis b = equation_basis(h, g);
      std::vector<Word> with_g = b.generators;
      with_g.push_back(g);
      const std::size_t s = rank(build_core(with_g, e.alphabet));
      o.expect(b.equations.size() == rank(h) + 1 - s, "basis size for " + e.name + " at " + g.to_string());
      for (const FormalWord& w : b.equations) {
        o.expect(verify(w, b.generators, g), "member fails at " + g.to_string());
      }
      std::uniform_int_distribution<std::size_t> pick(0, b.equations.size() - 1);
      for (int i = 0; i < 200; ++i) {
        FormalWord product;
        for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) {
          const FormalWord c = random_formal(rng, static_cast<std::uint32_t>(b.generators.size()), 4);
          FormalWord m = b.equations[pick(rng)];
          if (rng() & 1) m = m.inverse();
          product = product * c * m * c.inverse();
        }
        ++samples;
        o.expect(verify(product, b.generators, g), "normal closure sample fails at " + g.to_string());
      }
      std::vector<Word> images;
      for (const FormalWord& w : b.surviving) images.push_back(substitute(w, b.generators, g));
      o.expect(images.size() == s && rank(build_core(images, e.alphabet)) == s,
               "surviving images not free of rank s at " + g.to_string());
    }
  }
  o.detail << pairs << " dependent pairs, " << samples << " normal closure samples";
}

void degree_bounds(Outcome& o, const std::vector<CatalogEntry>& cat) {
  std::mt19937_64 rng(43);
  std::size_t checked = 0;
  std::size_t max_bound = 0;
  for (const CatalogEntry& e : cat) {
    const CoreGraph h = e.core();
    const DegreeBound bound = degree_bound(h);
    max_bound = std::max(max_bound, bound.bound);
    const std::vector<Word> gens = basis(h);
    std::uniform_int_distribution<std::size_t> pick(0, bound.per_representative.size() - 1);
    for (int i = 0; i < 100; ++i) {
      const auto& [rep, eq] = bound.per_representative[pick(rng)];
      const Word h1 = random_element(rng, gens, 3);
      const Word h2 = random_element(rng, gens, 3);
      const Word g = h1 * rep * h2.inverse();
      const Equation moved = transport(eq, h, h1, h2);
      ++checked;
      o.expect(moved.degree() <= bound.bound && verify(moved, g), e.name + " at " + g.to_string());
    }
  }
  const std::size_t a2 = degree_bound(H({"aa"}, "a")).bound;
  o.expect(a2 == 2, "bound for <a^2> is " + std::to_string(a2));
  o.detail << checked << " elements, largest bound " << max_bound << ", bound(<a^2>) = " << a2;
}

void folding_equations(Outcome& o, const std::vector<CatalogEntry>& cat) {
  std::size_t checked = 0;
  std::size_t in_h = 0;
  for (const CatalogEntry& e : cat) {
    const CoreGraph h = e.core();
    for (const Word& g : dependent_words(e, h, 4)) {
      ++checked;
      const Equation eq = equation_from_folding(h, g);
      o.expect(verify(eq, g) && eq.degree() > 0, e.name + " at " + g.to_string());
      if (contains(h, g)) {
        ++in_h;
        o.expect(eq == Equation::normalized({Word(), g.inverse()}, {1}), "degree-1 form at " + g.to_string());
      }
    }
  }
  o.detail << checked << " dependent pairs (" << in_h << " inside H)";
}

void free_products(Outcome& o) {
  const auto pairs = testing::wedge_pairs();
  for (const auto& [e1, e2] : pairs) {
    const CoreGraph w = wedge(e1.core(), e2.core());
    const DoubleCosetDecomposition dw = dep_double_cosets(w);
    std::vector<Word> united = dep_double_cosets(e1.core()).representatives;
    for (const Word& r : dep_double_cosets(e2.core()).representatives) united.push_back(r);
    const DoubleCosetDecomposition du{w, united};
    for (const Word& r : dw.representatives) o.expect(in_dep(du, r), e1.name + " * " + e2.name);
    for (const Word& r : united) o.expect(in_dep(dw, r), e1.name + " * " + e2.name);
  }
  o.detail << pairs.size() << " wedge pairs";
}

void echelon(Outcome& o, const std::vector<CatalogEntry>& cat) {
  std::size_t members = 0;
  for (const CatalogEntry& e : cat) {
    const CoreGraph h = e.core();
    if (!is_echelon(h).echelon) continue;
    ++members;
    o.expect(is_echelon(dep_subgroup(h)).echelon, e.name);
  }
  o.detail << members << " echelon members";
}

void closed_oracles(Outcome& o, const std::vector<CatalogEntry>& cat) {
  std::size_t closed = 0;
  for (const CatalogEntry& e : cat) {
    const CoreGraph h = e.core();
    if (!is_dependence_closed(h)) continue;
    ++closed;
    o.expect(is_pure(h, 4, 4).holds, "not pure: " + e.name);
    o.expect(is_malnormal(h, 3).holds, "not malnormal: " + e.name);
  }
  const CoreGraph a2 = H({"aa"}, "ab");
  const OracleReport pure = is_pure(a2, 4, 4);
  const OracleReport mal = is_malnormal(a2, 3);
  o.expect(!pure.holds && pure.witness == W("a"), "<a^2> purity witness");
  o.expect(!mal.holds && mal.witness == W("a"), "<a^2> malnormality witness");
  o.detail << closed << " closed members pass; <a^2> fails both with witness a";
}

void confluence(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::size_t graphs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const RawGraph raw = testing::random_raw_graph(rng, trial % 5);
    ++graphs;
    std::vector<CoreGraph> results;
    for (int order = 0; order < 5; ++order) {
      std::mt19937_64 shuffle(static_cast<std::uint64_t>(trial) * 7919 + static_cast<std::uint64_t>(order));
      results.push_back(fold(raw, nullptr, &shuffle));
    }
    for (const CoreGraph& r : results) o.expect(r == results.front(), "graph " + std::to_string(trial));
  }
  o.detail << graphs << " graphs x 5 fold orders";
}

void closure_lengths(Outcome& o, const std::vector<CatalogEntry>& cat) {
  std::vector<CatalogEntry> inputs = cat;
  std::string found;
  std::size_t searched = 0;
  for (std::uint64_t seed = 1; seed <= 5000 && found.empty(); ++seed) {
    CatalogEntry e = testing::random_catalog(1, seed).front();
    ++searched;
    if (dependence_closure(e.core()).length >= 2) {
      found = e.name;
      inputs.push_back(std::move(e));
    }
  }
  o.expect(!found.empty(), "no subgroup of closure length >= 2 found");
  std::size_t max_length = 0;
  for (const CatalogEntry& e : inputs) {
    const ClosureResult c = dependence_closure(e.core());
    max_length = std::max(max_length, c.length);
    for (std::size_t i = 0; i + 1 < c.chain.size(); ++i) {
      o.expect(rank(c.chain[i + 1]) <= rank(c.chain[i]), "rank increased along " + e.name);
    }
    o.expect(dep_subgroup(c.closure()) == c.closure(), "closure not stable for " + e.name);
  }
  o.detail << "searched " << searched << " random subgroups, found " << found << "; " << inputs.size()
           << " chains terminate with non-increasing ranks, longest " << max_length;
}

}  // namespace

int main() {
  const std::vector<CatalogEntry> cat = testing::full_catalog();
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"<abA,b> and <acA,c>: Dep, intersection, Dep intersection", worked_examples},
      {"<a^10,b^10>: a, b dependent, ab independent by three routes", a10_b10},
      {"<a^2b^2>, <[a,b]> dependence-closed, closure length 0", closed_examples},
      {"rank Dep H <= rank H on the catalog", [&](Outcome& o) { rank_bound(o, cat); }},
      {"oracle equivalence for all |g| <= 6", [&](Outcome& o) { oracle_equivalence(o, cat); }},
      {"normal basis size, kernel samples, injectivity", [&](Outcome& o) { normal_bases(o, cat); }},
      {"degree bound over random double coset elements", [&](Outcome& o) { degree_bounds(o, cat); }},
      {"equations from folding verify", [&](Outcome& o) { folding_equations(o, cat); }},
      {"free products: wedge representatives", free_products},
      {"echelon members have echelon Dep", [&](Outcome& o) { echelon(o, cat); }},
      {"closed members pure and malnormal; <a^2> fails", [&](Outcome& o) { closed_oracles(o, cat); }},
      {"folding confluence", confluence},
      {"closure length >= 2 found; chains terminate", [&](Outcome& o) { closure_lengths(o, cat); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
    for (const std::string& f : o.failures) std::printf("       %s\n", f.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
