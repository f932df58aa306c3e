#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dcicheck/canon.hpp"
#include "dcicheck/perm_group.hpp"
#include "dcicheck/wreath.hpp"

namespace dcicheck {

/// The orbits of a permutation group on ordered pairs. Colours are numbered
/// in order of first appearance when scanning pairs (i, j) row by row.
struct OrbitalColoring {
  std::size_t n = 0;
  std::size_t count = 0;
  std::vector<std::uint32_t> color;

  std::uint32_t at(std::size_t i, std::size_t j) const { return color[i * n + j]; }
  /// True iff x maps every colour class onto itself.
  bool preserved_by(const Permutation& x) const;
  /// Complete digraph with arc colour = orbital + 1.
  ColoredGraph graph() const;
};

OrbitalColoring orbital_partition(const PermGroup& g);

/// G^(2), the colour-preserving symmetries of the orbital colouring.
PermGroup two_closure(const PermGroup& g);

/// Caches the orbital colouring of G; membership in G^(2) is a direct
/// colour check, the closure group itself is built on first request.
class TwoClosure {
 public:
  explicit TwoClosure(PermGroup g);

  const PermGroup& group() const { return g_; }
  const OrbitalColoring& coloring() const { return coloring_; }
  bool contains(const Permutation& x) const { return coloring_.preserved_by(x); }
  const PermGroup& closure() const;

 private:
  PermGroup g_;
  OrbitalColoring coloring_;
  mutable std::shared_ptr<const PermGroup> closure_;
};

/// Agrees with rho on E and fixes every other point. Throws InputError
/// unless E is rho-invariant.
Permutation block_restriction(const Permutation& rho, const std::vector<Point>& e);

/// omega ~ omega' iff P_omega = P_omega'. Throws PreconditionError when P is
/// not abelian.
Partition stabilizer_equivalence(const PermGroup& p);

/// rho_E in G^(2) for rho in the block kernel of G and E a class of the
/// stabilizer equivalence of the normal p-part. Returns true after the
/// colour check is confirmed by sifting through the closure group; a
/// negative or inconsistent answer throws InternalError. Precondition
/// failures throw PreconditionError.
bool lemma42_membership(const TwoClosure& g2, const Wreath& w, const Permutation& rho,
                        const std::vector<Point>& e);
bool lemma42_membership(const PermGroup& g, const Wreath& w, const Permutation& rho, const std::vector<Point>& e);

}  // namespace dcicheck
