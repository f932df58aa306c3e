#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcicheck {

/// A point of the ambient set, 0-based.
using Point = std::uint16_t;

/// A bijection of {0, ..., n-1} stored as its image array.
///
/// Products follow the right-action convention: `sigma * tau` applies
/// sigma first and then tau, so `(sigma * tau)[i] == tau[sigma[i]]`.
/// Text I/O uses disjoint cycle notation over 1-based points.
class Permutation {
 public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);

  /// Takes ownership of an image array; throws InputError if it is not a
  /// bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Parses "(1,4)(2,6)(3,5)"; "()" or an empty string is the identity.
  /// Whitespace is ignored.
  static Permutation parse(std::string_view text, std::size_t degree);

  /// Builds the permutation from a list of cycles over 0-based points.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  /// Order as an element of Sym(n): lcm of the cycle lengths.
  std::uint64_t order() const;

  /// Sorted cycle lengths including fixed points.
  std::vector<std::size_t> cycle_type() const;

  /// Non-trivial cycles, each starting at its smallest point, ordered by
  /// that point.
  std::vector<std::vector<Point>> cycles() const;

  /// True iff every cycle has the same length (the element acts
  /// semiregularly as a cyclic group).
  bool is_semiregular() const;

  /// Smallest moved point, or degree() if the identity.
  std::size_t first_moved_point() const;

  /// Cycle notation, 1-based; the identity prints as "()".
  std::string to_string() const;

  Permutation pow(std::int64_t k) const;

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// Applies sigma first, then tau.
Permutation compose(const Permutation& sigma, const Permutation& tau);

/// Returns pi^-1 * x * pi, i.e. x relabelled by pi.
Permutation conjugate(const Permutation& x, const Permutation& pi);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace dcicheck
