#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcicheck/finite_group.hpp"
#include "dcicheck/perm_group.hpp"

namespace dcicheck {

/// A regular subgroup T <= Aut(Cay(G,S)) isomorphic to G, given by the
/// images of G's generators, together with an element of Aut(Cay(G,S))
/// conjugating the right regular representation onto it when T lies in
/// that class.
struct RegularSubgroupWitness {
  std::vector<Permutation> generators;
  std::optional<Permutation> conjugator;
};

struct BabaiResult {
  bool dci = true;
  /// Number of Aut(Cay(G,S))-classes of regular subgroups isomorphic to G.
  std::size_t classes = 0;
  /// One subgroup per class; the first is the right regular representation.
  std::vector<RegularSubgroupWitness> representatives;
  BigInt aut_order;
  std::uint64_t regular_subgroups_found = 0;
  /// Aut(Cay(G,S)) is the full symmetric group; every regular subgroup
  /// isomorphic to G is conjugate to the right regular one there.
  bool symmetric_shortcut = false;
};

struct BabaiOptions {
  /// Aut(Cay(G,S)) is enumerated element by element; larger groups throw
  /// CapExceeded (except the full symmetric group).
  std::uint64_t element_cap = 4'000'000;
};

/// Babai's criterion: Cay(G,S) is a DCI-graph iff its automorphism group
/// has a single conjugacy class of regular subgroups isomorphic to G.
///
/// The images t_i of G's generators g_i are searched among the
/// fixed-point-free semiregular elements of the right orders; t_1 runs over
/// representatives of the conjugacy classes of such elements only, which
/// still meets every class of subgroups. A tuple is accepted when g_i ->
/// t_i extends to a homomorphism whose image is regular. Classes are then
/// separated by closing each found subgroup under conjugation.
BabaiResult is_dci_graph_babai(const FiniteGroup& g, const FiniteGroup::ElementSet& s,
                               const BabaiOptions& options = {});

/// All regular subgroups of `ambient` isomorphic to G up to conjugacy in
/// `ambient` (the search behind is_dci_graph_babai). Generators returned
/// as images of G's generators.
std::vector<std::vector<Permutation>> regular_subgroup_classes(const FiniteGroup& g, const PermGroup& ambient,
                                                               std::uint64_t element_cap,
                                                               std::uint64_t* found = nullptr);

struct StrongCheckResult {
  bool conjugate = false;
  /// g in <R, R^pi>^(2) with R^g = R^pi, verified.
  std::optional<Permutation> witness;
  BigInt closure_order;
  BigInt joined_order;
};

/// For a regular permutation group R and pi in Sym: are R and R^pi
/// conjugate inside <R, R^pi>^(2)? Membership in the 2-closure is decided
/// by the orbital colouring, so the closure group is only built for the
/// reported order.
StrongCheckResult babai_strong_check(const PermGroup& r, const Permutation& pi);
StrongCheckResult babai_strong_check(const FiniteGroup& g, const Permutation& pi);

struct DichotomyPair {
  std::size_t a = 0;
  std::size_t b = 0;
  BigInt joined_order;
  /// Conjugate branch: an element of <A,B> with A^g = B.
  std::optional<Permutation> conjugator;
  bool direct_product = false;
};

struct DichotomyReport {
  /// The regular subgroups of Sym(6) isomorphic to Sym(3), each as
  /// (element of order 3, involution).
  std::vector<std::vector<Permutation>> subgroups;
  std::vector<DichotomyPair> pairs;
  std::size_t conjugate_branch = 0;
  std::size_t product_branch = 0;
  /// Pairs in neither or both branches; must be zero.
  std::size_t anomalies = 0;
};

/// For every ordered pair (A, B) of regular Sym(3)-subgroups of Sym(6):
/// either B = A^g for some g in <A,B>, or <A,B> = A x B.
DichotomyReport sym3_dichotomy_check();

}  // namespace dcicheck
