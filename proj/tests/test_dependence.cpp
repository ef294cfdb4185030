#include <doctest.h>

#include <random>

#include "catalog.hpp"
#include "freedep/closure.hpp"
#include "freedep/dependence.hpp"
#include "freedep/errors.hpp"

using namespace freedep;
using freedep::testing::CatalogEntry;

namespace {

Word W(const char* s) { return Word::parse(s); }

CoreGraph H(std::initializer_list<const char*> gens, const char* alphabet = "ab") {
  std::vector<Word> words;
  for (const char* g : gens) words.push_back(W(g));
  return build_core(words, Alphabet(alphabet));
}

bool petal_dependent(const CoreGraph& h, const Word& g) {
  RawGraph raw = h.to_raw();
  raw.add_petal(0, g);
  return rank(fold(raw)) <= rank(h);
}

const PairSetOptions kReduced{true};
const PairSetOptions kUnreduced{false};

}  // namespace

TEST_SUITE("dependence") {
  TEST_CASE("is_dependent examples") {
    const CoreGraph h = H({"a^10", "b^10"});
    CHECK(is_dependent(h, W("a")).verdict);
    CHECK(is_dependent(h, W("b")).verdict);
    CHECK_FALSE(is_dependent(h, W("ab")).verdict);

    const CoreGraph k = H({"abA", "b"});
    const DependenceWitness w = is_dependent(k, W("a"));
    CHECK(w.verdict);
    REQUIRE(w.pair.has_value());
    // u ends the g1-path and v ends the g2-path.
    CHECK(w.pair->u == 1);
    CHECK(w.pair->v == 0);
    CHECK(w.pair->representative() == W("a"));
    CHECK(w.g1 == W("a"));
    CHECK(w.g2 == std::optional<Word>(Word()));

    const DependenceWitness in_h = is_dependent(h, W("a^10b^-10"));
    CHECK(in_h.verdict);
    CHECK(in_h.pair->u == 0);
    CHECK(in_h.pair->v == 0);

    CHECK_THROWS_AS(is_dependent(h, W("c")), InputError);
  }

  TEST_CASE("is_dependent reports ranks and an unreadable suffix") {
    const DependenceWitness w = is_dependent(H({"a^10", "b^10"}), W("ab"));
    CHECK(w.rank_before == 2);
    CHECK(w.rank_after == 3);
    CHECK_FALSE(w.pair.has_value());

    const DependenceWitness w2 = is_dependent(H({"aab"}), W("bb"));
    CHECK_FALSE(w2.verdict);
    CHECK_FALSE(w2.g2.has_value());
  }

  TEST_CASE("pair_set examples") {
    for (const PairSetOptions& opt : {kReduced, kUnreduced}) {
      CAPTURE(opt.reduce_neighbors);
      const PairSet a2 = pair_set(H({"aa"}, "a"), opt);
      CHECK(a2.pairs.front() == VertexPair{0, 0, Word(), Word()});
      bool saw_cross = false;
      for (const VertexPair& p : a2.pairs) saw_cross = saw_cross || p.u != p.v;
      CHECK(saw_cross);
      CHECK(a2.pairs.size() == (opt.reduce_neighbors ? 2 : 4));

      const PairSet ab = pair_set(H({"ab"}), opt);
      for (const VertexPair& p : ab.pairs) CHECK(p.u == p.v);
      if (opt.reduce_neighbors) CHECK(ab.pairs.size() == 1);

      const PairSet trivial = pair_set(H({}), opt);
      CHECK(trivial.pairs.size() == 1);
    }
  }

  TEST_CASE("dep_double_cosets examples") {
    CHECK(dep_double_cosets(H({"aa"}, "a")).representatives == std::vector<Word>{Word(), W("a")});
    CHECK(dep_double_cosets(H({"ab"})).representatives == std::vector<Word>{Word()});
    CHECK(dep_double_cosets(H({})).representatives == std::vector<Word>{Word()});
    CHECK(dep_double_cosets(H({"aa"}, "a")).to_string() == "H 1 H\nH a H\n");
  }

  TEST_CASE("in_dep examples") {
    const CoreGraph h = H({"a^10", "b^10"});
    const DoubleCosetDecomposition d = dep_double_cosets(h);
    CHECK(in_dep(d, W("b^10ab^10")));
    CHECK_FALSE(in_dep(d, W("ab")));
    CHECK(in_dep(d, W("a^10")));
    CHECK(in_dep(d, Word()));
    CHECK(in_double_coset(h, W("a"), W("b^10a^11b^-20")));
    CHECK_FALSE(in_double_coset(h, W("a"), W("b^10a^7b^-20")));
    CHECK_FALSE(in_double_coset(h, W("a"), W("b")));
  }

  TEST_CASE("dep_generators examples") {
    const std::vector<Word> gens = dep_generators(H({"abA", "b"}));
    CHECK(build_core(gens, Alphabet("ab")) == H({"a", "b"}));
    CHECK(dep_subgroup(H({"abA", "b"})) == H({"a", "b"}));
    CHECK(dep_subgroup(H({"acA", "c"}, "ac")) == H({"a", "c"}, "ac"));
    CHECK(dep_subgroup(H({"aabb"})) == H({"aabb"}));
  }

  TEST_CASE("Dep of the intersection lies in the intersection of Dep") {
    const CoreGraph h = H({"abA", "b"}, "abc");
    const CoreGraph g = H({"acA", "c"}, "abc");
    const CoreGraph dh = dep_subgroup(h);
    const CoreGraph dg = dep_subgroup(g);
    CHECK(dh == H({"a", "b"}, "abc"));
    CHECK(dg == H({"a", "c"}, "abc"));
    CHECK(pullback(h, g).is_trivial());
    CHECK(dep_subgroup(pullback(h, g)).is_trivial());
    CHECK(pullback(dh, dg) == H({"a"}, "abc"));
  }

  TEST_CASE("wedge examples") {
    const CoreGraph a2 = H({"aa"}, "a");
    const CoreGraph b2 = H({"bb"}, "b");
    CHECK(wedge(a2, b2) == H({"aa", "bb"}));
    CHECK(wedge(H({"aab", "bA"}), H({}, "c")) == H({"aab", "bA"}, "abc"));
    CHECK_THROWS_AS(wedge(a2, H({"ab"})), InputError);
  }

  TEST_CASE("is_echelon examples") {
    const EchelonReport yes = is_echelon(H({"a", "baB"}), Alphabet("ab"));
    CHECK(yes.echelon);
    CHECK(yes.ranks == std::vector<std::size_t>{0, 1, 2});
    const EchelonReport no = is_echelon(H({"a", "baB", "bbaBB"}), Alphabet("ab"));
    CHECK_FALSE(no.echelon);
    CHECK(no.ranks == std::vector<std::size_t>{0, 1, 3});
    CHECK(is_echelon(H({"a", "b", "c"}, "abc")).echelon);
    CHECK_THROWS_AS(is_echelon(H({"ab"}), Alphabet("a")), InputError);
  }

  TEST_CASE("property: the three dependence criteria agree") {
    for (const CatalogEntry& e : testing::full_catalog()) {
      CAPTURE(e.name);
      const CoreGraph h = e.core();
      const DoubleCosetDecomposition reduced = dep_double_cosets(h, kReduced);
      const DoubleCosetDecomposition full = dep_double_cosets(h, kUnreduced);
      for (const Word& g : enumerate_reduced_words(e.alphabet, 5)) {
        CAPTURE(g.to_string());
        const DependenceWitness w = is_dependent(h, g);
        CHECK(w.verdict == petal_dependent(h, g));
        CHECK(w.verdict == in_dep(reduced, g));
        CHECK(w.verdict == in_dep(full, g));
        CHECK((w.g1 * w.g2.value_or(Word()).inverse() == g || !w.g2));
      }
    }
  }

  TEST_CASE("property: witnesses reproduce <H, g>") {
    std::mt19937_64 rng(5);
    for (const CatalogEntry& e : testing::full_catalog()) {
      CAPTURE(e.name);
      const CoreGraph h = e.core();
      for (int i = 0; i < 30; ++i) {
        const Word g = testing::random_word(rng, e.alphabet, static_cast<std::size_t>(i % 9));
        const DependenceWitness w = is_dependent(h, g);
        if (!w.verdict) continue;
        std::vector<Word> gens = basis(h);
        gens.push_back(g);
        CHECK(identify(h, w.pair->u, w.pair->v) == build_core(gens, e.alphabet));
        CHECK(w.pair->u_label == coset_label(h, w.pair->u));
        CHECK(w.pair->v_label == coset_label(h, w.pair->v));
        CHECK(in_double_coset(h, w.pair->representative(), g));
      }
    }
  }

  TEST_CASE("property: neighbor reduction does not change Dep") {
    for (const CatalogEntry& e : testing::full_catalog()) {
      CAPTURE(e.name);
      const CoreGraph h = e.core();
      CHECK(dep_subgroup(h, kReduced) == dep_subgroup(h, kUnreduced));
      const PairSet small = pair_set(h, kReduced);
      const PairSet all = pair_set(h, kUnreduced);
      CHECK(small.pairs.size() <= all.pairs.size());
      for (const VertexPair& p : all.pairs) {
        const CoreGraph q = identify(h, p.u, p.v);
        CHECK(rank(q) <= rank(h));
      }
    }
  }

  TEST_CASE("property: rank Dep H <= rank H and H <= Dep H") {
    for (const CatalogEntry& e : testing::full_catalog()) {
      CAPTURE(e.name);
      const CoreGraph h = e.core();
      for (const PairSetOptions& opt : {kReduced, kUnreduced}) {
        const CoreGraph d = dep_subgroup(h, opt);
        CHECK(rank(d) <= rank(h));
        for (const Word& g : e.gens) CHECK(contains(d, g));
        for (const Word& rep : dep_double_cosets(h, opt).representatives) CHECK(contains(d, rep));
      }
    }
  }

  TEST_CASE("property: wedge representatives are the union of the factors'") {
    const auto pairs = testing::wedge_pairs();
    for (const auto& [e1, e2] : pairs) {
      CAPTURE(e1.name);
      CAPTURE(e2.name);
      const CoreGraph h1 = e1.core();
      const CoreGraph h2 = e2.core();
      const CoreGraph w = wedge(h1, h2);
      std::vector<Word> both = e1.gens;
      both.insert(both.end(), e2.gens.begin(), e2.gens.end());
      CHECK(w == build_core(both, e1.alphabet.merged(e2.alphabet)));

      const DoubleCosetDecomposition dw = dep_double_cosets(w);
      const DoubleCosetDecomposition d1 = dep_double_cosets(h1);
      const DoubleCosetDecomposition d2 = dep_double_cosets(h2);
      std::vector<Word> united = d1.representatives;
      united.insert(united.end(), d2.representatives.begin(), d2.representatives.end());
      const DoubleCosetDecomposition du{w, united};
      for (const Word& r : dw.representatives) CHECK(in_dep(du, r));
      for (const Word& r : united) CHECK(in_dep(dw, r));
    }
  }

  TEST_CASE("property: echelon subgroups have echelon Dep") {
    std::size_t echelon_members = 0;
    for (const CatalogEntry& e : testing::full_catalog()) {
      CAPTURE(e.name);
      const CoreGraph h = e.core();
      if (!is_echelon(h).echelon) continue;
      ++echelon_members;
      CHECK(is_echelon(dep_subgroup(h)).echelon);
    }
    CHECK(echelon_members > 10);
  }

  TEST_CASE("property: Dep(H n G) <= Dep H n Dep G") {
    const auto cat = testing::full_catalog();
    for (std::size_t i = 0; i < cat.size(); ++i) {
      for (std::size_t j = i + 1; j < cat.size(); j += 2) {
        if (!(cat[i].alphabet == cat[j].alphabet)) continue;
        const CoreGraph h = cat[i].core();
        const CoreGraph g = cat[j].core();
        const CoreGraph lhs = dep_subgroup(pullback(h, g));
        const CoreGraph rhs = pullback(dep_subgroup(h), dep_subgroup(g));
        for (const Word& w : basis(lhs)) CHECK(contains(rhs, w));
      }
    }
  }
}
