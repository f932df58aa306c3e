#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcicheck/permutation.hpp"

namespace dcicheck {

using BigInt = boost::multiprecision::cpp_int;

/// Disjoint blocks covering {0, ..., n-1}. Normalized: every block sorted,
/// blocks ordered by their smallest point.
struct Partition {
  std::vector<std::vector<Point>> blocks;

  static Partition normalized(std::vector<std::vector<Point>> blocks);
  /// Block index of every point; throws InputError unless the blocks
  /// partition {0, ..., degree-1}.
  std::vector<std::size_t> block_of(std::size_t degree) const;
  std::size_t size() const { return blocks.size(); }
  /// "{1,2,3}{4,5}" with 1-based points.
  std::string to_string() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// One level of a stabilizer chain: the base point, the strong generators
/// fixing all earlier base points, and a transversal for the basic orbit.
struct ChainLevel {
  Point base = 0;
  std::vector<Permutation> generators;
  std::vector<Point> orbit;
  /// Position of a point in `orbit`, or -1.
  std::vector<int> orbit_index;
  /// transversal[k] maps `base` to orbit[k]; inverse_transversal[k] is its inverse.
  std::vector<Permutation> transversal;
  std::vector<Permutation> inverse_transversal;
};

/// Base and strong generating set built by deterministic Schreier-Sims.
struct StabilizerChain {
  std::size_t degree = 0;
  std::vector<ChainLevel> levels;

  std::vector<Point> base() const;
  BigInt order() const;
  /// Sifts x; returns the residue and the level at which sifting stopped
  /// (levels.size() when it passed every level).
  std::pair<Permutation, std::size_t> sift(const Permutation& x, std::size_t start = 0) const;
};

/// A permutation group given by generators. The stabilizer chain is built
/// lazily on first use; building mutates the object, so a group shared
/// between threads must have its chain built first (see build_chain()).
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }
  static PermGroup symmetric(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  /// Builds the chain if absent. Base points are chosen in increasing order
  /// after the optional prefix.
  const StabilizerChain& build_chain() const;
  const StabilizerChain& chain() const { return build_chain(); }

  BigInt order() const { return chain().order(); }
  bool contains(const Permutation& x) const;
  bool contains(const PermGroup& other) const;

  Partition orbits() const;
  std::vector<Point> orbit(Point point) const;
  bool is_transitive() const;
  /// Transitive with trivial point stabilizers.
  bool is_regular() const;
  bool is_abelian() const;

  /// Pointwise stabilizer of the given points, from a chain whose base
  /// starts with them.
  PermGroup stabilizer(std::span<const Point> points) const;

  /// Visits every element once. Throws CapExceeded when the order exceeds
  /// `cap`.
  void for_each_element(const std::function<void(const Permutation&)>& visit,
                        std::uint64_t cap = 10'000'000) const;
  std::vector<Permutation> elements(std::uint64_t cap = 10'000'000) const;

  /// Group generated by the conjugates of the generators by pi.
  PermGroup conjugated(const Permutation& pi) const;

  std::string to_string() const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  mutable std::shared_ptr<const StabilizerChain> chain_;
};

/// Deterministic Schreier-Sims; `base_prefix` points come first in the base.
StabilizerChain schreier_sims(std::size_t degree, const std::vector<Permutation>& generators,
                              std::span<const Point> base_prefix = {});

/// Closure of the generators by breadth-first multiplication. Test-grade:
/// throws CapExceeded past `cap` elements.
std::vector<Permutation> brute_force_closure(std::size_t degree,
                                             const std::vector<Permutation>& generators,
                                             std::size_t cap = 100'000);

/// Searches g in `ambient` with a^g = b. The search assigns images of the
/// generators of `a` in `b` (pruned by the cycle types of the generators and
/// of their pairwise products) and then propagates point images, so it is
/// aimed at the transitive and small-orbit groups this library handles. The
/// returned witness is verified generator by generator. Throws InputError
/// if a or b is not contained in `ambient`, CapExceeded if the search
/// exceeds its node budget.
std::optional<Permutation> are_conjugate_subgroups(const PermGroup& ambient, const PermGroup& a,
                                                   const PermGroup& b);

/// Same search, with the ambient group given only by a membership oracle.
std::optional<Permutation> find_conjugator(
    const PermGroup& a, const PermGroup& b,
    const std::function<bool(const Permutation&)>& in_ambient,
    std::uint64_t node_budget = 50'000'000);

}  // namespace dcicheck
