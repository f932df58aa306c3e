#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include "dcicheck/perm_group.hpp"
#include "dcicheck/permutation.hpp"

namespace dcicheck {

/// Block coordinates on a set of 6p points viewed as Delta x Lambda with
/// |Delta| = p and |Lambda| = 6. The 0-based point (delta, lambda) has index
/// lambda * p + delta; Delta is identified with Z_p, so the 1-based point k of
/// a block is the residue k - 1.
///
/// Wreath elements are written sigma * (y_1, ..., y_6): sigma moves blocks
/// and y_lambda then acts inside block lambda, so (delta, lambda) goes to
/// (y_{lambda^sigma}(delta), lambda^sigma).
class Wreath {
 public:
  /// p must be an odd prime.
  explicit Wreath(std::size_t p);

  std::size_t p() const { return p_; }
  std::size_t degree() const { return 6 * p_; }
  /// Smallest primitive root mod p; alpha is x -> g*x.
  std::size_t primitive_root() const { return root_; }

  Point point(std::size_t delta, std::size_t lambda) const {
    return static_cast<Point>(lambda * p_ + delta);
  }
  std::size_t block_of(Point x) const { return x / p_; }
  /// The blocks Delta_1, ..., Delta_6.
  Partition blocks() const;
  std::vector<Point> block_points(std::initializer_list<std::size_t> lambdas) const;

  /// x -> x + 1 on Delta.
  Permutation c() const { return affine(1, 0); }
  /// x -> g*x on Delta; fixes the residue 0.
  Permutation alpha() const { return affine(0, 1); }
  /// c^u alpha^v on Delta: x -> g^v (x + u).
  Permutation affine(std::int64_t u, std::int64_t v) const;
  /// x -> -x on Delta.
  Permutation inversion() const;

  Permutation element(const Permutation& sigma, const std::array<Permutation, 6>& ys) const;
  Permutation base(const std::array<Permutation, 6>& ys) const;
  Permutation top(const Permutation& sigma) const;

  /// Splits a block-preserving permutation into sigma and (y_1, ..., y_6);
  /// nullopt when x does not preserve the blocks.
  std::optional<std::pair<Permutation, std::array<Permutation, 6>>> decompose(const Permutation& x) const;
  bool preserves_blocks(const Permutation& x) const { return decompose(x).has_value(); }

  /// (c, c, c, c, c, c).
  Permutation r1() const;
  /// (1,2,3)(4,5,6) on blocks.
  Permutation r2() const;
  /// (1,4)(2,6)(3,5) on blocks.
  Permutation r3() const;
  /// r3 followed by x -> -x in every block; with r1 r2 it generates a
  /// dihedral group of order 6p.
  Permutation r3_dihedral() const;

  /// <r1, r2, r3>, which is C_p x Sym(3).
  PermGroup literal_r() const;
  /// <r1 r2, r3_dihedral>, dihedral of order 6p and regular.
  PermGroup dihedral_r() const;

  /// Translation vector (t_1, ..., t_6) when x = (c^t_1, ..., c^t_6).
  std::optional<std::array<std::size_t, 6>> translation_vector(const Permutation& x) const;
  Permutation translation(const std::array<std::size_t, 6>& t) const;

 private:
  std::size_t p_;
  std::size_t root_;
};

bool is_prime(std::size_t n);
std::size_t smallest_primitive_root(std::size_t p);

/// The normal p-part of a group G <= <c, alpha> wr Sym(6) of degree 6p: the
/// elements of G that are translations in every block. Returned as a group
/// generated by an F_p-basis of translation vectors. Verifies that the result
/// is normal in G. Throws PreconditionError when G does not preserve the
/// blocks or some block action is not affine.
PermGroup normal_p_subgroup(const PermGroup& g, const Wreath& w);

/// Kernel of the action of G on the six blocks.
PermGroup block_kernel(const PermGroup& g, const Wreath& w);

}  // namespace dcicheck
