#include "dcicheck/digraph.hpp"

#include <bit>
#include <sstream>

#include "dcicheck/error.hpp"

namespace dcicheck {

Digraph::Digraph(std::size_t n) : n_(n), rows_(n, 0), colors_(n, 0) {
  if (n > 64) throw CapExceeded("digraphs are limited to 64 vertices");
}

void Digraph::add_arc(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw InputError("arc endpoint out of range");
  rows_[u] |= std::uint64_t{1} << v;
}

std::size_t Digraph::arc_count() const {
  std::size_t m = 0;
  for (auto r : rows_) m += static_cast<std::size_t>(std::popcount(r));
  return m;
}

std::vector<std::pair<Point, Point>> Digraph::arcs() const {
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (has_arc(u, v)) out.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
    }
  }
  return out;
}

void Digraph::set_vertex_colors(std::vector<std::uint32_t> colors) {
  if (colors.size() != n_) throw InputError("vertex colour list has the wrong length");
  colors_ = std::move(colors);
}

Digraph Digraph::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("digraph text must start with 'n m'");
  if (n > 64) throw CapExceeded("digraphs are limited to 64 vertices");
  Digraph d(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw InputError("digraph text has fewer arcs than announced");
    if (u < 1 || v < 1 || u > n || v > n) throw InputError("arc endpoint out of range");
    d.add_arc(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  }
  std::string rest;
  if (in >> rest) throw InputError("trailing data after the arc list");
  return d;
}

std::string Digraph::to_text() const {
  std::ostringstream out;
  out << n_ << ' ' << arc_count() << '\n';
  for (const auto& [u, v] : arcs()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Digraph Digraph::relabeled(const Permutation& pi) const {
  if (pi.degree() != n_) throw InputError("relabelling has the wrong degree");
  Digraph d(n_);
  for (const auto& [u, v] : arcs()) d.add_arc(pi[u], pi[v]);
  for (std::size_t v = 0; v < n_; ++v) d.colors_[pi[v]] = colors_[v];
  return d;
}

Digraph Digraph::complement() const {
  Digraph d(n_);
  d.colors_ = colors_;
  std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  for (std::size_t u = 0; u < n_; ++u) {
    std::uint64_t loop = std::uint64_t{1} << u;
    d.rows_[u] = ((~rows_[u]) & all & ~loop) | (rows_[u] & loop);
  }
  return d;
}

bool Digraph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<std::uint64_t> sym(rows_);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (has_arc(u, v)) sym[v] |= std::uint64_t{1} << u;
    }
  }
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= sym[static_cast<std::size_t>(std::countr_zero(f))];
    frontier = next & ~seen;
    seen |= next;
  }
  return static_cast<std::size_t>(std::popcount(seen)) == n_;
}

bool Digraph::is_symmetric() const {
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (has_arc(u, v) != has_arc(v, u)) return false;
    }
  }
  return true;
}

bool Digraph::is_automorphism(const Permutation& g) const {
  if (g.degree() != n_) return false;
  for (std::size_t u = 0; u < n_; ++u) {
    if (colors_[g[u]] != colors_[u]) return false;
    for (std::size_t v = 0; v < n_; ++v) {
      if (has_arc(u, v) != has_arc(g[u], g[v])) return false;
    }
  }
  return true;
}

ColoredGraph Digraph::colored() const {
  ColoredGraph g(n_);
  g.vertex_color = colors_;
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) g.at(u, v) = has_arc(u, v) ? 1 : 0;
  }
  return g;
}

Digraph cayley_digraph(const FiniteGroup& g, const FiniteGroup::ElementSet& s) {
  Digraph d(g.order());
  for (auto x : s) {
    if (x >= g.order()) throw InputError("connection set element out of range");
  }
  for (FiniteGroup::Element x = 0; x < g.order(); ++x) {
    for (auto t : s) d.add_arc(x, g.mul(g.inverse(t), x));
  }
  return d;
}

Digraph directed_cycle(std::size_t n) {
  Digraph d(n);
  for (std::size_t i = 0; i < n; ++i) d.add_arc(i, (i + 1) % n);
  return d;
}

Digraph complete_digraph(std::size_t n) {
  Digraph d(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v) d.add_arc(u, v);
    }
  }
  return d;
}

CanonicalCertificate canonical_form(const Digraph& d, const std::vector<Permutation>& hints) {
  auto r = canonize(d.colored(), CanonMode::kCanonical, hints);
  return CanonicalCertificate{std::move(r.certificate), std::move(r.labeling)};
}

std::optional<Permutation> are_isomorphic(const Digraph& a, const Digraph& b) {
  if (a.n() != b.n() || a.arc_count() != b.arc_count()) return std::nullopt;
  auto ca = canonical_form(a), cb = canonical_form(b);
  if (ca.bytes != cb.bytes) return std::nullopt;
  std::vector<Point> inv_b(b.n());
  for (std::size_t v = 0; v < b.n(); ++v) inv_b[cb.labeling[v]] = static_cast<Point>(v);
  std::vector<Point> images(a.n());
  for (std::size_t v = 0; v < a.n(); ++v) images[v] = inv_b[ca.labeling[v]];
  Permutation f(std::move(images));
  if (a.relabeled(f) != b) throw InternalError("isomorphism witness failed verification");
  return f;
}

PermGroup automorphism_group(const Digraph& d, const std::vector<Permutation>& hints) {
  auto r = canonize(d.colored(), CanonMode::kAutomorphismsOnly, hints);
  return PermGroup(d.n(), std::move(r.automorphisms));
}

std::vector<Permutation> cayley_hints(const FiniteGroup& g) {
  std::vector<Permutation> out;
  for (auto x : g.generators()) out.push_back(right_translation(g, x));
  return out;
}

}  // namespace dcicheck
