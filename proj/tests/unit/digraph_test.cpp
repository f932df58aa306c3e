#include "dcicheck/digraph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "dcicheck/error.hpp"

namespace dcicheck {
namespace {

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

Digraph random_digraph(std::size_t n, double density, std::mt19937_64& rng, bool loops = true) {
  std::bernoulli_distribution coin(density);
  Digraph d(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if ((loops || u != v) && coin(rng)) d.add_arc(u, v);
    }
  }
  return d;
}

Digraph undirected(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  Digraph d(n);
  for (auto [u, v] : edges) {
    d.add_arc(u, v);
    d.add_arc(v, u);
  }
  return d;
}

Digraph three_four_cycles() {
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 4; ++i) edges.emplace_back(4 * c + i, 4 * c + (i + 1) % 4);
  }
  return undirected(12, edges);
}

// Independent oracle: counts arc-preserving bijections by vertex-by-vertex
// backtracking, or tests isomorphism over all bijections.
std::uint64_t count_automorphisms(const Digraph& d) {
  const std::size_t n = d.n();
  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      ++count;
      return;
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      bool ok = d.vertex_colors()[k] == d.vertex_colors()[t];
      for (std::size_t j = 0; j <= k && ok; ++j) {
        std::size_t tj = j == k ? t : static_cast<std::size_t>(img[j]);
        ok = d.has_arc(k, j) == d.has_arc(t, tj) && d.has_arc(j, k) == d.has_arc(tj, t);
      }
      if (!ok) continue;
      img[k] = static_cast<int>(t);
      used[t] = true;
      rec(k + 1);
      used[t] = false;
    }
  };
  rec(0);
  return count;
}

bool brute_isomorphic(const Digraph& a, const Digraph& b) {
  if (a.n() != b.n()) return false;
  std::vector<Point> images(a.n());
  std::iota(images.begin(), images.end(), Point{0});
  do {
    if (a.relabeled(Permutation(images)) == b) return true;
  } while (std::next_permutation(images.begin(), images.end()));
  return false;
}

TEST(Digraph, TextFormat) {
  auto d = Digraph::parse("3 2\n1 2\n2 3\n");
  EXPECT_TRUE(d.has_arc(0, 1));
  EXPECT_TRUE(d.has_arc(1, 2));
  EXPECT_EQ(d.arc_count(), 2u);
  EXPECT_EQ(Digraph::parse(d.to_text()), d);
  EXPECT_THROW(Digraph::parse("3 2\n1 2\n"), InputError);
  EXPECT_THROW(Digraph::parse("3 1\n1 4\n"), InputError);
  EXPECT_THROW(Digraph::parse("65 0"), CapExceeded);
  EXPECT_THROW(Digraph::parse("x"), InputError);
}

TEST(Cayley, EmptyAndFull) {
  auto g = dihedral(6);
  EXPECT_EQ(cayley_digraph(g, {}).arc_count(), 0u);
  FiniteGroup::ElementSet all;
  for (FiniteGroup::Element x = 1; x < 12; ++x) all.push_back(x);
  EXPECT_EQ(cayley_digraph(g, all), complete_digraph(12));
  EXPECT_THROW(cayley_digraph(g, {12}), InputError);
}

TEST(Cayley, ArcRuleAndDegree) {
  auto g = dihedral(15);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    FiniteGroup::ElementSet s;
    for (FiniteGroup::Element x = 0; x < 30; ++x) {
      if (rng() % 3 == 0) s.push_back(x);
    }
    auto d = cayley_digraph(g, s);
    for (std::size_t x = 0; x < 30; ++x) {
      EXPECT_EQ(static_cast<std::size_t>(std::popcount(d.out_row(x))), s.size());
      for (std::size_t y = 0; y < 30; ++y) {
        auto diff = g.mul(static_cast<FiniteGroup::Element>(x), g.inverse(static_cast<FiniteGroup::Element>(y)));
        EXPECT_EQ(d.has_arc(x, y), std::binary_search(s.begin(), s.end(), diff));
      }
    }
    for (const auto& h : cayley_hints(g)) EXPECT_TRUE(d.is_automorphism(h));
  }
}

TEST(Cayley, InverseClosedIsSymmetric) {
  auto g = alt4();
  for (FiniteGroup::Element x = 1; x < 12; ++x) {
    FiniteGroup::ElementSet s{x, g.inverse(x)};
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    EXPECT_TRUE(cayley_digraph(g, s).is_symmetric());
  }
}

TEST(Cayley, LemmaPairIsThreeFourCycles) {
  auto g = dihedral(6);
  auto d1 = cayley_digraph(g, g.parse_set("b,a^3"));
  auto d2 = cayley_digraph(g, g.parse_set("b,a^3b"));
  auto target = canonical_form(three_four_cycles()).bytes;
  EXPECT_EQ(canonical_form(d1).bytes, target);
  EXPECT_EQ(canonical_form(d2).bytes, target);
  EXPECT_TRUE(are_isomorphic(d1, d2));
  EXPECT_FALSE(d1.is_connected());
  EXPECT_TRUE(d1.complement().is_connected());
}

TEST(Cayley, DihedralNinePairIsomorphic) {
  auto g = dihedral(9);
  auto d1 = cayley_digraph(g, g.parse_set("a,a^4,a^6,a^7"));
  auto d2 = cayley_digraph(g, g.parse_set("a^2,a^5,a^6,a^8"));
  EXPECT_EQ(canonical_form(d1).bytes, canonical_form(d2).bytes);
  auto f = are_isomorphic(d1, d2);
  ASSERT_TRUE(f);
  EXPECT_EQ(d1.relabeled(*f), d2);
}

TEST(Complement, InvolutionAndConnectivity) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    auto d = random_digraph(1 + t % 20, 0.3, rng);
    EXPECT_EQ(d.complement().complement(), d);
  }
  EXPECT_TRUE(complete_digraph(7).is_connected());
  EXPECT_FALSE(Digraph(3).is_connected());
  EXPECT_TRUE(directed_cycle(9).is_connected());
  EXPECT_EQ(complete_digraph(5).complement().arc_count(), 0u);
}

TEST(DigraphAutomorphisms, KnownGroups) {
  EXPECT_EQ(automorphism_group(complete_digraph(6)).order(), 720);
  EXPECT_EQ(automorphism_group(complete_digraph(30)).order(), PermGroup::symmetric(30).order());
  EXPECT_EQ(automorphism_group(Digraph(10)).order(), PermGroup::symmetric(10).order());
  for (std::size_t n = 2; n <= 7; ++n) {
    auto c = directed_cycle(n);
    EXPECT_EQ(automorphism_group(c).order(), n);
    EXPECT_EQ(count_automorphisms(c), n);
  }
  auto three = three_four_cycles();
  EXPECT_EQ(count_automorphisms(three), 3072u);
  EXPECT_EQ(automorphism_group(three).order(), 3072);
  auto g = dihedral(6);
  auto a = automorphism_group(cayley_digraph(g, g.parse_set("b,a^3")), cayley_hints(g));
  EXPECT_EQ(a.order(), 3072);
}

TEST(DigraphAutomorphisms, MatchBacktrackCount) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 2 + t % 7;
    auto d = random_digraph(n, t % 2 ? 0.5 : 0.25, rng);
    if (t % 5 == 0) {
      std::vector<std::uint32_t> colors(n);
      for (auto& c : colors) c = static_cast<std::uint32_t>(rng() % 2);
      d.set_vertex_colors(colors);
    }
    auto a = automorphism_group(d);
    EXPECT_EQ(a.order(), count_automorphisms(d)) << d.to_text();
    for (const auto& gen : a.generators()) EXPECT_TRUE(d.is_automorphism(gen));
  }
}

TEST(DigraphAutomorphisms, RightRegularInsideCayleyAutomorphisms) {
  std::mt19937_64 rng(77);
  for (const auto& g : {dihedral(6), dihedral(9), alt4(), quasidihedral18(), dihedral(15)}) {
    auto rr = right_regular(g);
    for (int t = 0; t < 10; ++t) {
      FiniteGroup::ElementSet s;
      for (FiniteGroup::Element x = 0; x < g.order(); ++x) {
        if (rng() % 2) s.push_back(x);
      }
      auto a = automorphism_group(cayley_digraph(g, s));
      EXPECT_TRUE(a.contains(rr));
    }
  }
}

TEST(Canonical, RelabelInvariance) {
  std::mt19937_64 rng(5);
  auto g = dihedral(9);
  for (int t = 0; t < 200; ++t) {
    Digraph d(18);
    if (t % 2) {
      d = random_digraph(18, 0.2 + 0.1 * (t % 4), rng);
    } else {
      FiniteGroup::ElementSet s;
      for (FiniteGroup::Element x = 0; x < 18; ++x) {
        if (rng() % 3 == 0) s.push_back(x);
      }
      d = cayley_digraph(g, s);
    }
    auto pi = random_permutation(18, rng);
    auto c1 = canonical_form(d), c2 = canonical_form(d.relabeled(pi));
    EXPECT_EQ(c1.bytes, c2.bytes);
    // The labelling realizes the certificate.
    Permutation lab(c1.labeling);
    EXPECT_EQ(canonical_form(d.relabeled(lab)).bytes, c1.bytes);
  }
}

TEST(Canonical, DistinguishesNonIsomorphic) {
  EXPECT_NE(canonical_form(Digraph(5)).bytes, canonical_form(complete_digraph(5)).bytes);
  auto c4 = undirected(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto p4 = undirected(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_FALSE(are_isomorphic(c4, p4));
  Digraph loop(3);
  loop.add_arc(0, 0);
  Digraph loop2(3);
  loop2.add_arc(2, 2);
  EXPECT_TRUE(are_isomorphic(loop, loop2));
  EXPECT_FALSE(are_isomorphic(loop, Digraph(3)));
}

TEST(Canonical, IdentityIsomorphism) {
  auto d = directed_cycle(6);
  auto f = are_isomorphic(d, d);
  ASSERT_TRUE(f);
  EXPECT_TRUE(d.is_automorphism(*f));
}

TEST(Isomorphism, AllSmallDigraphsAgreeWithBruteForce) {
  // Every digraph on 3 vertices against every other one.
  std::vector<Digraph> all;
  for (unsigned mask = 0; mask < 512; ++mask) {
    Digraph d(3);
    for (unsigned b = 0; b < 9; ++b) {
      if (mask >> b & 1U) d.add_arc(b / 3, b % 3);
    }
    all.push_back(d);
  }
  std::vector<std::string> certs;
  for (const auto& d : all) certs.push_back(canonical_form(d).bytes);
  for (std::size_t i = 0; i < all.size(); i += 3) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      EXPECT_EQ(certs[i] == certs[j], brute_isomorphic(all[i], all[j]));
    }
  }
}

TEST(Isomorphism, RandomPairsAgreeWithBruteForce) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 4 + t % 4;
    auto a = random_digraph(n, 0.4, rng);
    Digraph b = a.relabeled(random_permutation(n, rng));
    if (t % 3 == 1) {
      // Flip one arc of the relabelled copy.
      std::size_t u = rng() % n, v = rng() % n;
      Digraph flipped(n);
      for (const auto& [x, y] : b.arcs()) {
        if (!(x == u && y == v)) flipped.add_arc(x, y);
      }
      if (!b.has_arc(u, v)) flipped.add_arc(u, v);
      b = flipped;
    } else if (t % 3 == 2) {
      b = random_digraph(n, 0.4, rng);
    }
    auto f = are_isomorphic(a, b);
    EXPECT_EQ(f.has_value(), brute_isomorphic(a, b));
    if (f) EXPECT_EQ(a.relabeled(*f), b);
  }
}

}  // namespace
}  // namespace dcicheck
