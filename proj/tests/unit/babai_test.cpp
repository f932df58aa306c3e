#include "dcicheck/babai.hpp"

#include <gtest/gtest.h>

#include <random>

#include "dcicheck/error.hpp"
#include "dcicheck/scan.hpp"
#include "dcicheck/wreath.hpp"

namespace dcicheck {
namespace {

TEST(Babai, EmptySetUsesSymmetricGroup) {
  auto r = is_dci_graph_babai(dihedral(6), {});
  EXPECT_TRUE(r.dci);
  EXPECT_TRUE(r.symmetric_shortcut);
  EXPECT_EQ(r.classes, 1u);
}

TEST(Babai, SmallestDihedralCounterexample) {
  auto g = dihedral(6);
  auto r = is_dci_graph_babai(g, g.parse_set("b,a^3"));
  EXPECT_FALSE(r.dci);
  EXPECT_EQ(r.classes, 2u);
  ASSERT_EQ(r.representatives.size(), 2u);
  EXPECT_TRUE(r.representatives[0].conjugator.has_value());
  EXPECT_FALSE(r.representatives[1].conjugator.has_value());
  for (const auto& w : r.representatives) EXPECT_TRUE(PermGroup(g.order(), w.generators).is_regular());
}

TEST(Babai, AgreesWithDirectOnSmallGroups) {
  for (const auto& g : {dihedral(3), dihedral(4), cyclic(8), cyclic(9)}) {
    DciOracle oracle(g);
    OrbitEnumerator e(g, automorphisms(g), ClaimMode::kDci, false);
    e.for_each(g.order(), [&](SetMask m) {
      auto s = from_mask(m);
      EXPECT_EQ(is_dci_graph_babai(g, s).dci, oracle.query(s).dci) << g.name() << " " << g.format_set(s);
    });
  }
}

TEST(Babai, AgreesWithDirectOnDihedralSix) {
  auto g = dihedral(6);
  DciOracle oracle(g);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    auto s = from_mask(rng() & 0xfff);
    EXPECT_EQ(is_dci_graph_babai(g, s).dci, oracle.query(s).dci) << g.format_set(s);
  }
}

TEST(Babai, Alt4RandomSetsAreDci) {
  auto g = alt4();
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    auto s = from_mask(rng() & 0xfff);
    EXPECT_TRUE(is_dci_graph_babai(g, s).dci) << g.format_set(s);
  }
}

TEST(Babai, OrderCap) { EXPECT_THROW(is_dci_graph_babai(cyclic(43), {}), CapExceeded); }

TEST(StrongCheck, IdentityIsTrivial) {
  auto r = babai_strong_check(dihedral(15), Permutation(30));
  EXPECT_TRUE(r.conjugate);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(StrongCheck, BlockSwap) {
  Wreath w(5);
  auto r = babai_strong_check(w.dihedral_r(), w.top(Permutation::parse("(5,6)", 6)));
  EXPECT_TRUE(r.conjugate);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.closure_order % r.joined_order == 0);
}

TEST(StrongCheck, RandomPermutationsOfDihedralFifteen) {
  auto g = dihedral(15);
  std::mt19937_64 rng(8);
  std::vector<Point> images(30);
  for (int t = 0; t < 5; ++t) {
    for (std::size_t i = 0; i < 30; ++i) images[i] = static_cast<Point>(i);
    std::shuffle(images.begin(), images.end(), rng);
    auto r = babai_strong_check(g, Permutation(images));
    EXPECT_TRUE(r.conjugate);
  }
}

TEST(StrongCheck, RejectsNonRegular) {
  EXPECT_THROW(babai_strong_check(PermGroup::symmetric(4), Permutation(4)), PreconditionError);
}

TEST(Dichotomy, AllRegularSym3Subgroups) {
  auto report = sym3_dichotomy_check();
  EXPECT_EQ(report.subgroups.size(), 20u);
  EXPECT_EQ(report.pairs.size(), 400u);
  EXPECT_EQ(report.anomalies, 0u);
  EXPECT_EQ(report.conjugate_branch + report.product_branch, 400u);
  EXPECT_GT(report.product_branch, 0u);
  for (const auto& pair : report.pairs) {
    if (pair.a == pair.b) {
      ASSERT_TRUE(pair.conjugator.has_value());
      EXPECT_FALSE(pair.direct_product);
    }
  }
}

TEST(Dichotomy, BlockActionPair) {
  auto report = sym3_dichotomy_check();
  auto find = [&](const char* x, const char* y) {
    PermGroup target(6, {Permutation::parse(x, 6), Permutation::parse(y, 6)});
    for (std::size_t i = 0; i < report.subgroups.size(); ++i) {
      PermGroup h(6, report.subgroups[i]);
      if (h.contains(target) && target.contains(h)) return i;
    }
    return report.subgroups.size();
  };
  std::size_t a = find("(1,2,3)(4,5,6)", "(1,4)(2,6)(3,5)");
  std::size_t b = find("(1,2,3)(4,6,5)", "(1,4)(2,5)(3,6)");
  ASSERT_LT(a, report.subgroups.size());
  ASSERT_LT(b, report.subgroups.size());
  const auto& pair = report.pairs[a * report.subgroups.size() + b];
  EXPECT_TRUE(pair.direct_product);
  EXPECT_FALSE(pair.conjugator.has_value());
  EXPECT_EQ(pair.joined_order, 36);
}

}  // namespace
}  // namespace dcicheck
