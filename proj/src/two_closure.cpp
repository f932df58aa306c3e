#include "dcicheck/two_closure.hpp"

#include <algorithm>
#include <numeric>

#include "dcicheck/error.hpp"

namespace dcicheck {

bool OrbitalColoring::preserved_by(const Permutation& x) const {
  if (x.degree() != n) throw InputError("degree mismatch in colour check");
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t* row = &color[i * n];
    const std::uint32_t* image = &color[x[i] * n];
    for (std::size_t j = 0; j < n; ++j) {
      if (image[x[j]] != row[j]) return false;
    }
  }
  return true;
}

ColoredGraph OrbitalColoring::graph() const {
  ColoredGraph g(n);
  for (std::size_t k = 0; k < n * n; ++k) g.arc[k] = color[k] + 1;
  return g;
}

OrbitalColoring orbital_partition(const PermGroup& g) {
  const std::size_t n = g.degree();
  if (n > 64) throw CapExceeded("orbital colourings are limited to degree 64");
  std::vector<std::size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& gen : g.generators()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t a = find(i * n + j), b = find(gen[i] * n + gen[j]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  OrbitalColoring c;
  c.n = n;
  c.color.assign(n * n, 0);
  std::vector<std::uint32_t> id(n * n, UINT32_MAX);
  for (std::size_t k = 0; k < n * n; ++k) {
    std::size_t r = find(k);
    if (id[r] == UINT32_MAX) id[r] = static_cast<std::uint32_t>(c.count++);
    c.color[k] = id[r];
  }
  return c;
}

PermGroup two_closure(const PermGroup& g) {
  auto coloring = orbital_partition(g);
  auto r = canonize(coloring.graph(), CanonMode::kAutomorphismsOnly, g.generators());
  return PermGroup(g.degree(), std::move(r.automorphisms));
}

TwoClosure::TwoClosure(PermGroup g) : g_(std::move(g)), coloring_(orbital_partition(g_)) {}

const PermGroup& TwoClosure::closure() const {
  if (!closure_) {
    auto r = canonize(coloring_.graph(), CanonMode::kAutomorphismsOnly, g_.generators());
    closure_ = std::make_shared<const PermGroup>(g_.degree(), std::move(r.automorphisms));
  }
  return *closure_;
}

Permutation block_restriction(const Permutation& rho, const std::vector<Point>& e) {
  const std::size_t n = rho.degree();
  std::vector<bool> in(n, false);
  for (Point x : e) {
    if (x >= n) throw InputError("point out of range in restriction set");
    in[x] = true;
  }
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t x = 0; x < n; ++x) {
    if (!in[x]) continue;
    if (!in[rho[x]]) throw InputError("restriction set is not invariant under the permutation");
    images[x] = rho[x];
  }
  return Permutation(std::move(images));
}

Partition stabilizer_equivalence(const PermGroup& p) {
  if (!p.is_abelian()) throw PreconditionError("stabilizer equivalence needs an abelian group");
  auto orbits = p.orbits();
  std::vector<PermGroup> stabs;
  for (const auto& orb : orbits.blocks) {
    Point rep = orb.front();
    stabs.push_back(p.stabilizer(std::span<const Point>(&rep, 1)));
  }
  std::vector<int> cls(orbits.size(), -1);
  std::vector<std::vector<Point>> classes;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<int>(classes.size());
    classes.push_back(orbits.blocks[i]);
    for (std::size_t j = i + 1; j < orbits.size(); ++j) {
      if (cls[j] < 0 && stabs[i].contains(stabs[j]) && stabs[j].contains(stabs[i])) {
        cls[j] = cls[i];
        auto& c = classes.back();
        c.insert(c.end(), orbits.blocks[j].begin(), orbits.blocks[j].end());
      }
    }
  }
  return Partition::normalized(std::move(classes));
}

bool lemma42_membership(const TwoClosure& g2, const Wreath& w, const Permutation& rho, const std::vector<Point>& e) {
  const PermGroup& g = g2.group();
  if (!g.contains(rho)) throw PreconditionError("rho is not an element of G");
  auto parts = w.decompose(rho);
  if (!parts || !parts->first.is_identity()) throw PreconditionError("rho does not fix every block");
  std::vector<Point> sorted(e);
  std::sort(sorted.begin(), sorted.end());
  auto classes = stabilizer_equivalence(normal_p_subgroup(g, w));
  if (std::find(classes.blocks.begin(), classes.blocks.end(), sorted) == classes.blocks.end()) {
    throw PreconditionError("E is not an equivalence class of the normal p-part");
  }
  Permutation restricted = block_restriction(rho, sorted);
  bool by_colors = g2.contains(restricted);
  bool by_group = g2.closure().contains(restricted);
  if (by_colors != by_group) throw InternalError("colour check and closure group disagree on rho_E");
  if (!by_colors) throw InternalError("rho_E is not in the 2-closure");
  return true;
}

bool lemma42_membership(const PermGroup& g, const Wreath& w, const Permutation& rho, const std::vector<Point>& e) {
  return lemma42_membership(TwoClosure(g), w, rho, e);
}

}  // namespace dcicheck
