#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dcicheck/digraph.hpp"
#include "dcicheck/finite_group.hpp"
#include "dcicheck/perm_group.hpp"
#include "dcicheck/wreath.hpp"

namespace dcicheck::testing {

inline Permutation cycle_perm(std::size_t n) {
  std::vector<Point> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>(i);
  return Permutation::from_cycles(n, {c});
}

inline std::array<Permutation, 6> affine_parts(const Wreath& w, std::array<std::pair<int, int>, 6> uv) {
  std::array<Permutation, 6> ys;
  for (std::size_t l = 0; l < 6; ++l) ys[l] = w.affine(uv[l].first, uv[l].second);
  return ys;
}

/// <R, R^pi> for the generator triple R.
inline PermGroup joined_with_conjugate(const Wreath& w, const Permutation& pi) {
  auto r = w.literal_r();
  std::vector<Permutation> gens = r.generators();
  for (const auto& x : r.generators()) gens.push_back(conjugate(x, pi));
  return PermGroup(w.degree(), gens);
}

inline PermGroup translation_group(const Wreath& w) {
  std::vector<Permutation> gens;
  for (std::size_t l = 0; l < 6; ++l) {
    std::array<std::size_t, 6> t{};
    t[l] = 1;
    gens.push_back(w.translation(t));
  }
  return PermGroup(w.degree(), gens);
}

/// Twenty permutation groups of degree at most 42.
inline std::vector<std::pair<std::string, PermGroup>> two_closure_corpus() {
  std::vector<std::pair<std::string, PermGroup>> out;
  for (const auto& g : {dihedral(3), dihedral(6), dihedral(9), dihedral(15), alt4(), quasidihedral18(), cyclic(5),
                        cyclic(7)}) {
    out.emplace_back("regular " + g.name(), right_regular(g));
  }
  out.emplace_back("Sym(5)", PermGroup::symmetric(5));
  out.emplace_back("Sym(6)", PermGroup::symmetric(6));
  out.emplace_back("Alt(5)", PermGroup(5, {Permutation::parse("(1,2,3)", 5), Permutation::parse("(1,2,3,4,5)", 5)}));
  out.emplace_back("C5 x C5 on 10 points", PermGroup(10, {Permutation::parse("(1,2,3,4,5)", 10),
                                                          Permutation::parse("(6,7,8,9,10)", 10)}));
  out.emplace_back("D8 on 4 points", PermGroup(4, {Permutation::parse("(1,2,3,4)", 4), Permutation::parse("(1,3)", 4)}));
  Wreath w5(5), w7(7);
  out.emplace_back("R at p=5", w5.literal_r());
  out.emplace_back("R at p=7", w7.literal_r());
  out.emplace_back("dihedral R at p=5", w5.dihedral_r());
  out.emplace_back("T at p=5", translation_group(w5));
  out.emplace_back("case II shape p=5",
                   joined_with_conjugate(w5, w5.base(affine_parts(w5, {{{0, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}))));
  out.emplace_back("case III shape p=5",
                   joined_with_conjugate(w5, w5.base(affine_parts(w5, {{{0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 1}, {0, 1}}}))));
  out.emplace_back("case IV shape p=5",
                   joined_with_conjugate(w5, w5.base(affine_parts(w5, {{{0, 0}, {0, 1}, {0, 1}, {0, 0}, {0, 1}, {0, 1}}}))));
  return out;
}

struct CayleyCase {
  std::string name;
  FiniteGroup group;
  FiniteGroup::ElementSet set;
  Digraph digraph;
};

/// Cayley digraphs over the zoo: the named connection sets plus seeded
/// random ones.
inline std::vector<CayleyCase> cayley_corpus(std::size_t random_per_group = 4) {
  std::vector<CayleyCase> out;
  auto add = [&](const FiniteGroup& g, const FiniteGroup::ElementSet& s) {
    out.push_back({g.name() + " " + g.format_set(s), g, s, cayley_digraph(g, s)});
  };
  auto d6 = dihedral(6), d9 = dihedral(9);
  add(d6, d6.parse_set("b,a^3"));
  add(d6, d6.parse_set("b,a^3b"));
  add(d9, d9.parse_set("a,a^4,a^6,a^7"));
  add(d9, d9.parse_set("a^2,a^5,a^6,a^8"));
  std::mt19937_64 rng(31);
  for (const auto& g : {dihedral(3), d6, d9, dihedral(15), alt4(), quasidihedral18(), cyclic(7)}) {
    add(g, {});
    for (std::size_t t = 0; t < random_per_group; ++t) {
      FiniteGroup::ElementSet s;
      for (FiniteGroup::Element x = 0; x < g.order(); ++x) {
        if (rng() % (2 + t % 3) == 0) s.push_back(x);
      }
      add(g, s);
    }
  }
  return out;
}

}  // namespace dcicheck::testing
