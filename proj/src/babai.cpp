#include "dcicheck/babai.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "dcicheck/digraph.hpp"
#include "dcicheck/error.hpp"
#include "dcicheck/two_closure.hpp"

namespace dcicheck {

namespace {

using Key = std::vector<Point>;

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

bool regular_element(const Permutation& x, std::size_t order) {
  auto type = x.cycle_type();
  return type.front() == order && type.back() == order;
}

// Homomorphism check for g_i -> t_i on the subgroup generated by the first
// `used` generators. Fills phi (indexed by element) and fails when two
// words disagree or two elements move the point 0 to the same place.
bool extend_homomorphism(const FiniteGroup& g, const std::vector<FiniteGroup::Element>& gens,
                         const std::vector<const Permutation*>& images, std::size_t used,
                         std::vector<std::optional<Permutation>>& phi) {
  const std::size_t n = g.order();
  phi.assign(n, std::nullopt);
  std::vector<bool> hit(n, false);
  phi[g.identity()] = Permutation(n);
  hit[0] = true;
  std::deque<FiniteGroup::Element> queue{g.identity()};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < used; ++i) {
      auto y = g.mul(x, gens[i]);
      Permutation image = *phi[x] * *images[i];
      if (phi[y]) {
        if (*phi[y] != image) return false;
        continue;
      }
      if (hit[image[0]]) return false;
      hit[image[0]] = true;
      phi[y] = std::move(image);
      queue.push_back(y);
    }
  }
  return true;
}

Key key_of(const std::vector<Permutation>& elements, std::size_t n) {
  Key key(n * n);
  for (const auto& t : elements) {
    auto img = t.images();
    std::copy(img.begin(), img.end(), key.begin() + static_cast<std::ptrdiff_t>(t[0] * n));
  }
  return key;
}

// Conjugate of the regular subgroup stored in `key` by a.
Key conjugate_key(const Key& key, const Permutation& a, const Permutation& a_inv, std::size_t n) {
  Key out(n * n);
  for (std::size_t v = 0; v < n; ++v) {
    const Point* t = &key[v * n];
    Point image_of_zero = a[t[a_inv[0]]];
    Point* dst = &out[image_of_zero * n];
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[t[a_inv[i]]];
  }
  return out;
}

// Marks the conjugacy class of `start` under `ambient` in `covered`.
void close_class(const Key& start, const PermGroup& ambient, std::size_t n, std::set<Key>& covered) {
  std::vector<std::pair<Permutation, Permutation>> gens;
  for (const auto& a : ambient.generators()) gens.emplace_back(a, a.inverse());
  std::vector<Key> frontier{start};
  covered.insert(start);
  while (!frontier.empty()) {
    Key k = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& [a, a_inv] : gens) {
      Key next = conjugate_key(k, a, a_inv, n);
      if (covered.insert(next).second) frontier.push_back(std::move(next));
    }
  }
}

std::vector<Permutation> regular_generators(const FiniteGroup& g) {
  std::vector<Permutation> out;
  for (auto x : g.generators()) out.push_back(right_translation(g, x));
  return out;
}

}  // namespace

std::vector<std::vector<Permutation>> regular_subgroup_classes(const FiniteGroup& g, const PermGroup& ambient,
                                                               std::uint64_t element_cap, std::uint64_t* found) {
  const std::size_t n = g.order();
  if (ambient.degree() != n) throw InputError("ambient group must act on the elements of the group");
  const auto& gens = g.generators();
  if (gens.empty()) {
    if (found) *found = 1;
    return {{}};
  }
  if (ambient.order() > element_cap) {
    throw CapExceeded("automorphism group of order " + ambient.order().str() + " exceeds the enumeration cap");
  }

  // Fixed-point-free semiregular elements, per required order.
  std::map<std::size_t, std::vector<Permutation>> by_order;
  for (auto x : gens) by_order[g.element_order(x)];
  ambient.for_each_element(
      [&](const Permutation& x) {
        if (x.is_identity()) return;
        auto it = by_order.find(x.order());
        if (it != by_order.end() && regular_element(x, it->first)) it->second.push_back(x);
      },
      element_cap);
  for (auto& [order, list] : by_order) std::sort(list.begin(), list.end());

  // The image of the first generator only needs to run over conjugacy
  // class representatives.
  std::vector<Permutation> first_reps;
  {
    const auto& list = by_order[g.element_order(gens[0])];
    std::unordered_set<Permutation, PermutationHash> seen;
    for (const auto& x : list) {
      if (seen.count(x)) continue;
      first_reps.push_back(x);
      std::vector<Permutation> frontier{x};
      seen.insert(x);
      while (!frontier.empty()) {
        Permutation y = std::move(frontier.back());
        frontier.pop_back();
        for (const auto& a : ambient.generators()) {
          Permutation z = conjugate(y, a);
          if (seen.insert(z).second) frontier.push_back(std::move(z));
        }
      }
    }
  }

  std::map<Key, std::vector<Permutation>> subgroups;
  std::vector<const Permutation*> images(gens.size(), nullptr);
  std::vector<std::optional<Permutation>> phi;
  std::function<void(std::size_t)> choose = [&](std::size_t i) {
    if (i == gens.size()) {
      if (!extend_homomorphism(g, gens, images, gens.size(), phi)) return;
      std::vector<Permutation> elements;
      for (auto& e : phi) {
        if (!e) return;
        elements.push_back(*e);
      }
      Key key = key_of(elements, n);
      if (!subgroups.count(key)) {
        std::vector<Permutation> tuple;
        for (auto* p : images) tuple.push_back(*p);
        subgroups.emplace(std::move(key), std::move(tuple));
      }
      return;
    }
    const auto& pool = i == 0 ? first_reps : by_order[g.element_order(gens[i])];
    for (const auto& x : pool) {
      images[i] = &x;
      if (i > 0 && i + 1 < gens.size() && !extend_homomorphism(g, gens, images, i + 1, phi)) continue;
      choose(i + 1);
    }
  };
  choose(0);
  if (found) *found = subgroups.size();

  std::vector<std::vector<Permutation>> classes;
  std::set<Key> covered;
  {
    auto rr = regular_generators(g);
    std::vector<const Permutation*> rr_ptrs;
    for (const auto& x : rr) rr_ptrs.push_back(&x);
    if (!extend_homomorphism(g, gens, rr_ptrs, gens.size(), phi)) throw InternalError("right regular check failed");
    std::vector<Permutation> elements;
    for (auto& e : phi) elements.push_back(*e);
    if (!ambient.contains(PermGroup(n, rr))) throw PreconditionError("ambient group does not contain R_r");
    close_class(key_of(elements, n), ambient, n, covered);
    classes.push_back(std::move(rr));
  }
  bool right_regular_class_met = false;
  for (const auto& [key, tuple] : subgroups) {
    if (covered.count(key)) {
      right_regular_class_met = true;
      continue;
    }
    close_class(key, ambient, n, covered);
    classes.push_back(tuple);
  }
  if (!right_regular_class_met) throw InternalError("search missed the class of the right regular representation");
  return classes;
}

BabaiResult is_dci_graph_babai(const FiniteGroup& g, const FiniteGroup::ElementSet& s, const BabaiOptions& options) {
  if (g.order() > 42) throw CapExceeded("Babai route is limited to groups of order <= 42");
  const std::size_t n = g.order();
  PermGroup aut = automorphism_group(cayley_digraph(g, s), cayley_hints(g));
  BabaiResult result;
  result.aut_order = aut.order();
  if (result.aut_order == factorial(n)) {
    result.symmetric_shortcut = true;
    result.classes = 1;
    result.representatives.push_back({regular_generators(g), Permutation(n)});
    return result;
  }
  auto classes = regular_subgroup_classes(g, aut, options.element_cap, &result.regular_subgroups_found);
  const auto target = fingerprint(g);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    PermGroup t(n, classes[i]);
    if (!t.is_regular() || fingerprint(t) != target) throw InternalError("regular subgroup fails the shape check");
    RegularSubgroupWitness w{classes[i], std::nullopt};
    if (i == 0) w.conjugator = Permutation(n);
    result.representatives.push_back(std::move(w));
  }
  result.classes = classes.size();
  result.dci = result.classes == 1;
  return result;
}

StrongCheckResult babai_strong_check(const PermGroup& r, const Permutation& pi) {
  const std::size_t n = r.degree();
  if (n > 42) throw CapExceeded("strong check is limited to degree <= 42");
  if (pi.degree() != n) throw InputError("degree mismatch in strong check");
  if (!r.is_regular()) throw PreconditionError("strong check needs a regular group");
  PermGroup b = r.conjugated(pi);
  std::vector<Permutation> gens = r.generators();
  for (const auto& x : b.generators()) gens.push_back(x);
  TwoClosure closure(PermGroup(n, gens));
  StrongCheckResult result;
  result.joined_order = closure.group().order();
  result.closure_order = closure.closure().order();
  auto witness = find_conjugator(r, b, [&](const Permutation& x) { return closure.contains(x); });
  if (witness) {
    if (!closure.contains(*witness) || !closure.closure().contains(*witness)) {
      throw InternalError("strong check witness is not in the 2-closure");
    }
    for (const auto& x : r.generators()) {
      if (!b.contains(conjugate(x, *witness))) throw InternalError("strong check witness does not conjugate");
    }
  }
  result.conjugate = witness.has_value();
  result.witness = std::move(witness);
  return result;
}

StrongCheckResult babai_strong_check(const FiniteGroup& g, const Permutation& pi) {
  return babai_strong_check(right_regular(g), pi);
}

DichotomyReport sym3_dichotomy_check() {
  const std::size_t n = 6;
  auto elements = PermGroup::symmetric(n).elements();
  std::vector<Permutation> threes, twos;
  for (const auto& x : elements) {
    if (x.is_identity()) continue;
    if (regular_element(x, 3)) threes.push_back(x);
    if (regular_element(x, 2)) twos.push_back(x);
  }
  DichotomyReport report;
  std::set<std::vector<Permutation>> seen;
  for (const auto& x : threes) {
    for (const auto& y : twos) {
      if (y * x * y != x.inverse()) continue;
      PermGroup h(n, {x, y});
      if (h.order() != 6 || !h.is_regular()) continue;
      auto key = h.elements();
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) report.subgroups.push_back({x, y});
    }
  }
  for (std::size_t i = 0; i < report.subgroups.size(); ++i) {
    for (std::size_t j = 0; j < report.subgroups.size(); ++j) {
      PermGroup a(n, report.subgroups[i]);
      PermGroup b(n, report.subgroups[j]);
      std::vector<Permutation> gens = report.subgroups[i];
      gens.insert(gens.end(), report.subgroups[j].begin(), report.subgroups[j].end());
      PermGroup joined(n, gens);
      DichotomyPair pair;
      pair.a = i;
      pair.b = j;
      pair.joined_order = joined.order();
      pair.conjugator = are_conjugate_subgroups(joined, a, b);
      bool commute = true;
      for (const auto& x : report.subgroups[i]) {
        for (const auto& y : report.subgroups[j]) commute = commute && x * y == y * x;
      }
      bool trivial_meet = true;
      for (const auto& x : a.elements()) trivial_meet = trivial_meet && (x.is_identity() || !b.contains(x));
      pair.direct_product = commute && trivial_meet && pair.joined_order == 36;
      if (pair.conjugator.has_value() == pair.direct_product) {
        ++report.anomalies;
      } else if (pair.conjugator) {
        ++report.conjugate_branch;
      } else {
        ++report.product_branch;
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

}  // namespace dcicheck
