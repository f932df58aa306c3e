#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcicheck/canon.hpp"
#include "dcicheck/finite_group.hpp"
#include "dcicheck/perm_group.hpp"

namespace dcicheck {

/// Digraph on at most 64 vertices with one bit row per vertex. Loops are
/// allowed; parallel arcs are not representable. Optional vertex colours.
class Digraph {
 public:
  explicit Digraph(std::size_t n = 0);

  std::size_t n() const { return n_; }
  void add_arc(std::size_t u, std::size_t v);
  bool has_arc(std::size_t u, std::size_t v) const { return (rows_[u] >> v) & 1U; }
  std::uint64_t out_row(std::size_t u) const { return rows_[u]; }
  std::size_t arc_count() const;
  std::vector<std::pair<Point, Point>> arcs() const;

  void set_vertex_colors(std::vector<std::uint32_t> colors);
  const std::vector<std::uint32_t>& vertex_colors() const { return colors_; }

  /// "n m" followed by m lines "u v", 1-based.
  static Digraph parse(std::string_view text);
  std::string to_text() const;

  /// Arc (u, v) becomes (pi[u], pi[v]).
  Digraph relabeled(const Permutation& pi) const;
  /// Toggles every non-loop arc; loops are kept as they are.
  Digraph complement() const;
  /// Weak connectivity.
  bool is_connected() const;
  bool is_symmetric() const;
  bool is_automorphism(const Permutation& g) const;
  ColoredGraph colored() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint32_t> colors_;
};

/// Cay(G, S): vertices are element indices, (x, y) is an arc iff x*y^-1 in S.
Digraph cayley_digraph(const FiniteGroup& g, const FiniteGroup::ElementSet& s);

/// Directed n-cycle i -> i+1.
Digraph directed_cycle(std::size_t n);
Digraph complete_digraph(std::size_t n);

struct CanonicalCertificate {
  std::string bytes;
  /// labeling[v] is the canonical index of vertex v.
  std::vector<Point> labeling;
  std::string hex() const { return to_hex(bytes); }
};

CanonicalCertificate canonical_form(const Digraph& d, const std::vector<Permutation>& hints = {});
/// A vertex bijection mapping the arcs of a onto the arcs of b, verified.
std::optional<Permutation> are_isomorphic(const Digraph& a, const Digraph& b);
/// Full automorphism group (arc- and colour-preserving).
PermGroup automorphism_group(const Digraph& d, const std::vector<Permutation>& hints = {});

/// Right translations by the generators of G; automorphisms of every
/// Cayley digraph of G.
std::vector<Permutation> cayley_hints(const FiniteGroup& g);

}  // namespace dcicheck
