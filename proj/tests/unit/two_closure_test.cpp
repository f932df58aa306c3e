#include "dcicheck/two_closure.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "dcicheck/digraph.hpp"
#include "dcicheck/error.hpp"
#include "support/corpus.hpp"

namespace dcicheck {
namespace {

using testing::affine_parts;
using testing::cycle_perm;
using testing::joined_with_conjugate;
using testing::translation_group;

// Orbit-closure oracle: BFS over pairs from (i, j) using all group elements.
std::size_t count_orbitals_by_elements(const PermGroup& g) {
  const std::size_t n = g.degree();
  auto elements = g.elements();
  std::vector<bool> seen(n * n, false);
  std::size_t count = 0;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (seen[k]) continue;
    ++count;
    for (const auto& x : elements) seen[x[k / n] * n + x[k % n]] = true;
  }
  return count;
}

TEST(Orbitals, Counts) {
  EXPECT_EQ(orbital_partition(PermGroup::symmetric(7)).count, 2u);
  PermGroup c5(5, {cycle_perm(5)});
  EXPECT_EQ(orbital_partition(c5).count, 5u);
  Wreath w(5);
  EXPECT_EQ(orbital_partition(w.literal_r()).count, 30u);
  for (const auto& [name, g] : testing::two_closure_corpus()) {
    if (g.order() > 100'000) continue;
    EXPECT_EQ(orbital_partition(g).count, count_orbitals_by_elements(g)) << name;
  }
}

TEST(Orbitals, DiagonalColorsStayOnDiagonal) {
  for (const auto& [name, g] : testing::two_closure_corpus()) {
    auto c = orbital_partition(g);
    std::set<std::uint32_t> diagonal;
    for (std::size_t i = 0; i < c.n; ++i) diagonal.insert(c.at(i, i));
    for (std::size_t i = 0; i < c.n; ++i) {
      for (std::size_t j = 0; j < c.n; ++j) {
        if (i != j) EXPECT_FALSE(diagonal.count(c.at(i, j))) << name;
      }
    }
    for (const auto& gen : g.generators()) EXPECT_TRUE(c.preserved_by(gen)) << name;
  }
}

TEST(TwoClosure, SymmetricIsClosed) {
  for (std::size_t n : {3, 5, 8}) EXPECT_EQ(two_closure(PermGroup::symmetric(n)).order(), PermGroup::symmetric(n).order());
}

TEST(TwoClosure, RegularC5ByBruteForce) {
  PermGroup c5(5, {cycle_perm(5)});
  auto coloring = orbital_partition(c5);
  std::vector<Point> images{0, 1, 2, 3, 4};
  std::set<Permutation> preserving;
  do {
    Permutation x(images);
    if (coloring.preserved_by(x)) preserving.insert(x);
  } while (std::next_permutation(images.begin(), images.end()));
  auto closure = two_closure(c5);
  EXPECT_EQ(preserving.size(), 5u);
  EXPECT_EQ(closure.order(), 5);
  for (const auto& x : preserving) EXPECT_TRUE(closure.contains(x));
}

TEST(TwoClosure, SixIndependentCycles) {
  Wreath w(5);
  auto t = translation_group(w);
  auto closure = two_closure(t);
  EXPECT_EQ(closure.order(), 15625);
  for (const auto& gen : t.generators()) EXPECT_TRUE(closure.contains(gen));
  EXPECT_TRUE(t.contains(closure));
}

TEST(TwoClosure, CorpusProperties) {
  for (const auto& [name, g] : testing::two_closure_corpus()) {
    TwoClosure g2(g);
    const auto& closure = g2.closure();
    EXPECT_TRUE(closure.contains(g)) << name;
    for (const auto& gen : closure.generators()) EXPECT_TRUE(g2.coloring().preserved_by(gen)) << name;
    auto again = two_closure(closure);
    EXPECT_EQ(again.order(), closure.order()) << name;
    EXPECT_TRUE(closure.contains(again)) << name;
  }
}

TEST(TwoClosure, AutomorphismGroupsAreClosed) {
  for (const auto& c : testing::cayley_corpus()) {
    auto a = automorphism_group(c.digraph, cayley_hints(c.group));
    auto closure = two_closure(a);
    EXPECT_EQ(closure.order(), a.order()) << c.name;
  }
}

TEST(BlockRestriction, Examples) {
  Wreath w(5);
  auto r1 = w.r1();
  std::vector<Point> all(30);
  std::iota(all.begin(), all.end(), Point{0});
  EXPECT_EQ(block_restriction(r1, all), r1);
  EXPECT_TRUE(block_restriction(r1, {}).is_identity());
  auto c = w.c();
  Permutation id(5);
  EXPECT_EQ(block_restriction(r1, w.block_points({1, 2, 3})), w.base({c, c, c, id, id, id}));
  EXPECT_THROW(block_restriction(w.r2(), w.block_points({1})), InputError);
}

// Oracle for the second description: blocks lambda, lambda' are equivalent
// iff every element of P is trivial on both or on neither.
Partition equivalence_by_supports(const PermGroup& p, const Wreath& w) {
  std::vector<std::uint8_t> signature_bits;
  std::vector<std::vector<bool>> trivial(6);
  p.for_each_element([&](const Permutation& x) {
    for (std::size_t l = 0; l < 6; ++l) {
      bool t = true;
      for (std::size_t d = 0; d < w.p(); ++d) t = t && x[w.point(d, l)] == w.point(d, l);
      trivial[l].push_back(t);
    }
  });
  std::vector<std::vector<Point>> classes;
  std::vector<int> cls(6, -1);
  for (std::size_t l = 0; l < 6; ++l) {
    if (cls[l] >= 0) continue;
    cls[l] = static_cast<int>(classes.size());
    classes.push_back({});
    for (std::size_t m = l; m < 6; ++m) {
      if (cls[m] < 0 && trivial[m] == trivial[l]) cls[m] = cls[l];
      if (cls[m] == cls[l]) {
        for (std::size_t d = 0; d < w.p(); ++d) classes.back().push_back(w.point(d, m));
      }
    }
  }
  return Partition::normalized(classes);
}

TEST(StabilizerEquivalence, BlockShapes) {
  Wreath w(5);
  auto semiregular = PermGroup(30, {w.r1()});
  EXPECT_EQ(stabilizer_equivalence(semiregular).size(), 1u);
  EXPECT_EQ(stabilizer_equivalence(translation_group(w)).size(), 6u);
  auto c = w.c();
  Permutation id(5);
  PermGroup three(30, {w.base({c, id, id, c, id, id}), w.base({id, c, id, id, id, c}), w.base({id, id, c, id, c, id})});
  auto classes = stabilizer_equivalence(three);
  ASSERT_EQ(classes.size(), 3u);
  std::vector<std::vector<Point>> expected{w.block_points({1, 4}), w.block_points({2, 6}), w.block_points({3, 5})};
  EXPECT_EQ(classes, Partition::normalized(expected));
  EXPECT_THROW(stabilizer_equivalence(PermGroup::symmetric(4)), PreconditionError);
}

TEST(StabilizerEquivalence, SupportCharacterization) {
  for (std::size_t p : {5, 7}) {
    Wreath w(p);
    std::mt19937_64 rng(p);
    for (int t = 0; t < 40; ++t) {
      std::vector<Permutation> gens;
      int k = 1 + t % 4;
      for (int i = 0; i < k; ++i) {
        std::array<std::size_t, 6> v{};
        for (auto& e : v) e = rng() % 3 == 0 ? 0 : rng() % p;
        gens.push_back(w.translation(v));
      }
      PermGroup grp(w.degree(), gens);
      auto by_stab = stabilizer_equivalence(grp);
      auto by_support = equivalence_by_supports(grp, w);
      // Points fixed by the whole group form singleton orbits; compare on
      // blocks the group moves.
      auto orbits = grp.orbits();
      if (orbits.size() != 6) continue;
      EXPECT_EQ(by_stab, by_support);
    }
  }
}

TEST(Lemma42, RegularGroup) {
  Wreath w(5);
  std::vector<Point> all(30);
  std::iota(all.begin(), all.end(), Point{0});
  EXPECT_TRUE(lemma42_membership(w.literal_r(), w, w.r1(), all));
  EXPECT_THROW(lemma42_membership(w.literal_r(), w, w.r2(), all), PreconditionError);
  EXPECT_THROW(lemma42_membership(w.literal_r(), w, w.r1(), w.block_points({1})), PreconditionError);
}

TEST(Lemma42, CaseThreeShape) {
  Wreath w(5);
  auto pi = w.base(affine_parts(w, {{{0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 1}, {0, 1}}}));
  TwoClosure g2(joined_with_conjugate(w, pi));
  auto e = w.block_points({4, 5, 6});
  EXPECT_TRUE(lemma42_membership(g2, w, w.r1(), e));
  auto c = w.c();
  Permutation id(5);
  EXPECT_TRUE(g2.contains(w.base({id, id, id, c, c, c})));
}

TEST(Lemma42, CaseFourShape) {
  Wreath w(5);
  auto pi = w.base(affine_parts(w, {{{0, 0}, {0, 1}, {0, 1}, {0, 0}, {0, 1}, {0, 1}}}));
  TwoClosure g2(joined_with_conjugate(w, pi));
  auto g = w.r2().inverse() * conjugate(w.r2(), pi);
  auto e = w.block_points({2, 5});
  EXPECT_TRUE(lemma42_membership(g2, w, g, e));
  Permutation id(5);
  auto beta = w.alpha();
  EXPECT_EQ(block_restriction(g, e), w.base({id, beta, id, id, beta, id}));
}

}  // namespace
}  // namespace dcicheck
