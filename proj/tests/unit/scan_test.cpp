#include "dcicheck/scan.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "dcicheck/digraph.hpp"
#include "dcicheck/error.hpp"

namespace dcicheck {
namespace {

bool inverse_closed(const FiniteGroup& g, const FiniteGroup::ElementSet& s) {
  for (auto x : s) {
    if (!std::count(s.begin(), s.end(), g.inverse(x))) return false;
  }
  return true;
}

FiniteGroup::ElementSet sorted(FiniteGroup::ElementSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

// Brute force over all 2^n subsets: orbits by applying every automorphism,
// isomorphism by pairwise search between orbit representatives of equal
// size. Returns the number of orbits and the number of orbits that share
// an isomorphism class with another orbit.
struct BruteForce {
  std::size_t orbits = 0;
  std::size_t clashing = 0;
};

BruteForce brute_force(const FiniteGroup& g, ClaimMode mode) {
  const std::size_t n = g.order();
  auto autos = automorphisms(g);
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::vector<FiniteGroup::ElementSet> reps;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (seen[m]) continue;
    auto s = from_mask(m);
    if (mode == ClaimMode::kCi && !inverse_closed(g, s)) continue;
    for (const auto& phi : autos) seen[to_mask(apply_automorphism(phi, s))] = true;
    reps.push_back(s);
  }
  BruteForce out;
  out.orbits = reps.size();
  std::vector<Digraph> graphs;
  for (const auto& s : reps) graphs.push_back(cayley_digraph(g, s));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (i != j && reps[i].size() == reps[j].size() && are_isomorphic(graphs[i], graphs[j])) {
        ++out.clashing;
        break;
      }
    }
  }
  return out;
}

std::uint64_t count_reps(const FiniteGroup& g, ClaimMode mode) {
  OrbitEnumerator e(g, automorphisms(g), mode, false);
  std::uint64_t count = 0;
  e.for_each(g.order(), [&](SetMask) { ++count; });
  return count;
}

TEST(OrbitEnumerator, MatchesBruteForceOrbits) {
  for (const auto& g : {cyclic(5), cyclic(6), cyclic(8), dihedral(3), dihedral(4)}) {
    for (auto mode : {ClaimMode::kDci, ClaimMode::kCi}) {
      EXPECT_EQ(count_reps(g, mode), brute_force(g, mode).orbits) << g.name() << " " << to_string(mode);
    }
  }
}

TEST(OrbitEnumerator, RepresentativesAreOrbitMinima) {
  auto g = dihedral(6);
  auto autos = automorphisms(g);
  OrbitEnumerator e(g, autos, ClaimMode::kDci, false);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    SetMask m = rng() & ((SetMask{1} << g.order()) - 1);
    SetMask rep = e.representative(m);
    bool in_orbit = false;
    for (const auto& phi : autos) {
      SetMask image = to_mask(apply_automorphism(phi, from_mask(m)));
      in_orbit = in_orbit || image == rep;
    }
    EXPECT_TRUE(in_orbit);
    EXPECT_EQ(e.representative(rep), rep);
  }
}

TEST(OrbitEnumerator, SubsetCounts) {
  auto g = dihedral(15);
  OrbitEnumerator dci(g, automorphisms(g), ClaimMode::kDci, false);
  EXPECT_DOUBLE_EQ(dci.subset_count(30), 1073741824.0);
  EXPECT_DOUBLE_EQ(dci.subset_count(2), 1.0 + 30 + 435);
  EXPECT_EQ(dci.largest_size_within(1.0 + 30 + 435), 2u);
}

TEST(Scan, MatchesBruteForce) {
  for (const auto& g : {cyclic(4), cyclic(5), cyclic(6), cyclic(8), dihedral(3), dihedral(4)}) {
    for (auto mode : {ClaimMode::kDci, ClaimMode::kCi}) {
      ScanOptions opt;
      opt.mode = mode;
      auto result = scan_group(g, opt);
      auto oracle = brute_force(g, mode);
      std::size_t flagged_orbits = 0;
      for (const auto& b : result.flagged) flagged_orbits += b.members.size();
      EXPECT_EQ(flagged_orbits, oracle.clashing) << g.name() << " " << to_string(mode);
      EXPECT_EQ(result.verdict == Verdict::kRefuted, oracle.clashing > 0) << g.name();
      EXPECT_EQ(result.scope, "full");
    }
  }
}

TEST(Scan, KnownCyclicGroups) {
  // Z_n is a DCI-group exactly for n in {k, 2k, 4k} with k odd squarefree.
  EXPECT_EQ(scan_group(cyclic(4), {}).verdict, Verdict::kConfirmed);
  EXPECT_EQ(scan_group(cyclic(6), {}).verdict, Verdict::kConfirmed);
  EXPECT_EQ(scan_group(cyclic(8), {}).verdict, Verdict::kRefuted);
  EXPECT_EQ(scan_group(cyclic(9), {}).verdict, Verdict::kRefuted);
  EXPECT_EQ(scan_group(cyclic(12), {}).verdict, Verdict::kConfirmed);
}

TEST(Scan, WitnessesAreVerified) {
  auto g = dihedral(9);
  auto autos = automorphisms(g);
  auto result = scan_group(g, {});
  ASSERT_EQ(result.verdict, Verdict::kRefuted);
  ASSERT_FALSE(result.witnesses.empty());
  for (const auto& w : result.witnesses) {
    EXPECT_TRUE(are_isomorphic(cayley_digraph(g, w.s), cayley_digraph(g, w.t)).has_value());
    for (const auto& phi : autos) EXPECT_NE(sorted(apply_automorphism(phi, w.s)), sorted(w.t));
    EXPECT_EQ(canonical_form(cayley_digraph(g, w.s)).hex(), w.certificate);
    EXPECT_EQ(canonical_form(cayley_digraph(g, w.t)).hex(), w.certificate);
  }
  EXPECT_THROW(verify_witness(g, autos, g.parse_set("a"), g.parse_set("a^2")), InternalError);
}

TEST(Scan, CiWitnessesAreInverseClosed) {
  auto g = dihedral(6);
  ScanOptions opt;
  opt.mode = ClaimMode::kCi;
  auto result = scan_group(g, opt);
  ASSERT_EQ(result.verdict, Verdict::kRefuted);
  for (const auto& w : result.witnesses) {
    EXPECT_TRUE(inverse_closed(g, w.s));
    EXPECT_TRUE(inverse_closed(g, w.t));
  }
}

TEST(Scan, SmallestDihedralCiCounterexample) {
  auto g = dihedral(6);
  ScanOptions opt;
  opt.mode = ClaimMode::kCi;
  auto result = scan_group(g, opt);
  OrbitEnumerator e(g, automorphisms(g), ClaimMode::kCi, false);
  SetMask s = e.representative(to_mask(g.parse_set("b,a^3")));
  SetMask t = e.representative(to_mask(g.parse_set("b,a^3b")));
  bool found = false;
  for (const auto& bucket : result.flagged) {
    std::set<SetMask> members;
    for (const auto& m : bucket.members) members.insert(to_mask(m));
    found = found || (members.count(s) && members.count(t));
  }
  EXPECT_TRUE(found);
}

TEST(Scan, ShuffledOrderGivesSameResult) {
  auto g = dihedral(9);
  ScanOptions base;
  auto reference = scan_group(g, base);
  for (std::uint64_t seed : {3u, 17u}) {
    ScanOptions opt = base;
    opt.shuffle_seed = seed;
    auto shuffled = scan_group(g, opt);
    EXPECT_EQ(shuffled.verdict, reference.verdict);
    ASSERT_EQ(shuffled.flagged.size(), reference.flagged.size());
    for (std::size_t i = 0; i < shuffled.flagged.size(); ++i) {
      EXPECT_EQ(shuffled.flagged[i].certificate, reference.flagged[i].certificate);
      EXPECT_EQ(shuffled.flagged[i].members, reference.flagged[i].members);
    }
  }
}

TEST(Scan, WorkersDoNotChangeResult) {
  auto g = quasidihedral18();
  ScanOptions one;
  ScanOptions three;
  three.workers = 3;
  auto a = scan_group(g, one), b = scan_group(g, three);
  EXPECT_EQ(a.verdict, b.verdict);
  ASSERT_EQ(a.flagged.size(), b.flagged.size());
  for (std::size_t i = 0; i < a.flagged.size(); ++i) EXPECT_EQ(a.flagged[i].members, b.flagged[i].members);
}

TEST(Scan, ConnectedOnlyAgreesOnVerdict) {
  for (const auto& g : {dihedral(6), dihedral(9), quasidihedral18()}) {
    for (auto mode : {ClaimMode::kDci, ClaimMode::kCi}) {
      ScanOptions all, connected;
      all.mode = connected.mode = mode;
      connected.connected_only = true;
      auto a = scan_group(g, all), b = scan_group(g, connected);
      EXPECT_EQ(a.verdict, b.verdict) << g.name() << " " << to_string(mode);
      EXPECT_LE(b.orbit_representatives, a.orbit_representatives);
    }
  }
}

TEST(Scan, InfeasibleScopeIsReported) {
  ScanOptions opt;
  opt.subset_cap = 5000;
  auto result = scan_group(dihedral(15), opt);
  EXPECT_EQ(result.verdict, Verdict::kInfeasible);
  ASSERT_TRUE(result.scanned_size.has_value());
  // The requested scope stays on record next to the bound actually scanned.
  EXPECT_EQ(result.scope, "full");
  EXPECT_EQ(*result.scanned_size, 3u);
  EXPECT_LE(result.raw_sets, 5000.0);
}

TEST(Scan, BoundedScopeIsRecorded) {
  ScanOptions opt;
  opt.max_set_size = 3;
  auto result = scan_group(dihedral(15), opt);
  EXPECT_EQ(result.verdict, Verdict::kConfirmed);
  EXPECT_EQ(result.scope, "|S|<=3");
}

TEST(Scan, ExcludeIdentity) {
  auto g = dihedral(6);
  ScanOptions opt;
  opt.exclude_identity = true;
  opt.mode = ClaimMode::kCi;
  auto result = scan_group(g, opt);
  for (const auto& w : result.witnesses) {
    EXPECT_FALSE(std::count(w.s.begin(), w.s.end(), g.identity()));
    EXPECT_FALSE(std::count(w.t.begin(), w.t.end(), g.identity()));
  }
  EXPECT_EQ(result.verdict, Verdict::kRefuted);
}

TEST(WalkProfile, InvariantUnderAutomorphisms) {
  auto g = dihedral(9);
  auto autos = automorphisms(g);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    SetMask m = rng() & ((SetMask{1} << g.order()) - 1);
    auto s = from_mask(m);
    for (std::size_t k = 0; k < autos.size(); k += 7) {
      EXPECT_EQ(walk_profile(g, m), walk_profile(g, to_mask(apply_automorphism(autos[k], s))));
    }
  }
}

TEST(Direct, SmallestDihedralCounterexamples) {
  auto d6 = dihedral(6);
  auto r = is_dci_graph_direct(d6, d6.parse_set("b,a^3"));
  EXPECT_FALSE(r.dci);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(are_isomorphic(cayley_digraph(d6, d6.parse_set("b,a^3")), cayley_digraph(d6, *r.witness)));

  auto d9 = dihedral(9);
  auto s = d9.parse_set("a,a^4,a^6,a^7");
  auto r9 = is_dci_graph_direct(d9, s);
  EXPECT_FALSE(r9.dci);
  EXPECT_TRUE(are_isomorphic(cayley_digraph(d9, s), cayley_digraph(d9, d9.parse_set("a^2,a^5,a^6,a^8"))));
}

TEST(Direct, AgreesWithScanOnEveryRepresentative) {
  // A set is a DCI-graph iff its orbit is in no flagged bucket.
  auto g = dihedral(6);
  auto scan = scan_group(g, {});
  std::set<SetMask> flagged;
  for (const auto& b : scan.flagged) {
    for (const auto& m : b.members) flagged.insert(to_mask(m));
  }
  DciOracle oracle(g);
  OrbitEnumerator e(g, automorphisms(g), ClaimMode::kDci, false);
  e.for_each(g.order(), [&](SetMask m) {
    EXPECT_EQ(oracle.query(from_mask(m)).dci, !flagged.count(m)) << g.format_set(from_mask(m));
  });
}

TEST(Direct, EmptyAndFullSets) {
  auto g = dihedral(15);
  EXPECT_TRUE(is_dci_graph_direct(g, {}).dci);
  FiniteGroup::ElementSet all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_TRUE(is_dci_graph_direct(g, all).dci);
}

}  // namespace
}  // namespace dcicheck
