#include "dcicheck/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "dcicheck/error.hpp"

namespace dcicheck {

namespace {

void compute_orbit(ChainLevel& level, std::size_t degree) {
  level.orbit.assign(1, level.base);
  level.orbit_index.assign(degree, -1);
  level.orbit_index[level.base] = 0;
  level.transversal.assign(1, Permutation(degree));
  level.inverse_transversal.assign(1, Permutation(degree));
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    for (const auto& gen : level.generators) {
      Point image = gen[level.orbit[k]];
      if (level.orbit_index[image] >= 0) continue;
      level.orbit_index[image] = static_cast<int>(level.orbit.size());
      level.orbit.push_back(image);
      Permutation t = level.transversal[k] * gen;
      level.inverse_transversal.push_back(t.inverse());
      level.transversal.push_back(std::move(t));
    }
  }
}

bool fixes_all(const Permutation& g, std::span<const Point> points) {
  return std::all_of(points.begin(), points.end(), [&](Point p) { return g[p] == p; });
}

std::vector<std::size_t> union_find_roots(std::size_t n, const std::vector<Permutation>& gens) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = find(i), b = find(g[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  for (std::size_t i = 0; i < n; ++i) parent[i] = find(i);
  return parent;
}

}  // namespace

// ---------------------------------------------------------------------------
// Partition

Partition Partition::normalized(std::vector<std::vector<Point>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  blocks.erase(std::remove_if(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); }),
               blocks.end());
  std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return Partition{std::move(blocks)};
}

std::vector<std::size_t> Partition::block_of(std::size_t degree) const {
  std::vector<std::size_t> owner(degree, blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Point p : blocks[b]) {
      if (p >= degree || owner[p] != blocks.size()) throw InputError("blocks are not disjoint or out of range");
      owner[p] = b;
    }
  }
  for (std::size_t p = 0; p < degree; ++p) {
    if (owner[p] == blocks.size()) throw InputError("blocks do not cover the point set");
  }
  return owner;
}

std::string Partition::to_string() const {
  std::ostringstream out;
  for (const auto& b : blocks) {
    out << '{';
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << b[i] + 1;
    out << '}';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// StabilizerChain

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> result;
  for (const auto& level : levels) result.push_back(level.base);
  return result;
}

BigInt StabilizerChain::order() const {
  BigInt result = 1;
  for (const auto& level : levels) result *= level.orbit.size();
  return result;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(const Permutation& x, std::size_t start) const {
  Permutation h = x;
  for (std::size_t l = start; l < levels.size(); ++l) {
    const auto& level = levels[l];
    int k = level.orbit_index[h[level.base]];
    if (k < 0) return {std::move(h), l};
    h = h * level.inverse_transversal[static_cast<std::size_t>(k)];
  }
  return {std::move(h), levels.size()};
}

StabilizerChain schreier_sims(std::size_t degree, const std::vector<Permutation>& generators,
                              std::span<const Point> base_prefix) {
  StabilizerChain chain;
  chain.degree = degree;

  std::vector<Permutation> gens;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw InputError("generator degree mismatch");
    if (!g.is_identity()) gens.push_back(g);
  }

  std::vector<Point> base;
  for (Point p : base_prefix) {
    if (p >= degree) throw InputError("base point out of range");
    if (std::find(base.begin(), base.end(), p) == base.end()) base.push_back(p);
  }
  for (const auto& g : gens) {
    if (fixes_all(g, base)) base.push_back(static_cast<Point>(g.first_moved_point()));
  }

  for (std::size_t i = 0; i < base.size(); ++i) {
    ChainLevel level;
    level.base = base[i];
    std::span<const Point> earlier(base.data(), i);
    for (const auto& g : gens) {
      if (fixes_all(g, earlier)) level.generators.push_back(g);
    }
    compute_orbit(level, degree);
    chain.levels.push_back(std::move(level));
  }

  long i = static_cast<long>(chain.levels.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    const std::size_t li = static_cast<std::size_t>(i);
    for (std::size_t k = 0; k < chain.levels[li].orbit.size() && !restarted; ++k) {
      for (std::size_t s = 0; s < chain.levels[li].generators.size(); ++s) {
        const ChainLevel& level = chain.levels[li];
        const Permutation& gen = level.generators[s];
        Point image = gen[level.orbit[k]];
        Permutation h = level.transversal[k] * gen *
                        level.inverse_transversal[static_cast<std::size_t>(level.orbit_index[image])];
        if (h.is_identity()) continue;
        auto [residue, stop] = chain.sift(h, li + 1);
        if (residue.is_identity()) continue;
        if (stop == chain.levels.size()) {
          ChainLevel fresh;
          fresh.base = static_cast<Point>(residue.first_moved_point());
          chain.levels.push_back(std::move(fresh));
        }
        for (std::size_t l = li + 1; l <= stop; ++l) {
          chain.levels[l].generators.push_back(residue);
          compute_orbit(chain.levels[l], degree);
        }
        i = static_cast<long>(stop);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
  return chain;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.degree() != degree_) throw InputError("generator degree mismatch");
  }
}

PermGroup PermGroup::symmetric(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<Point> cycle(degree);
    std::iota(cycle.begin(), cycle.end(), Point{0});
    gens.push_back(Permutation::from_cycles(degree, {{0, 1}}));
    if (degree >= 3) gens.push_back(Permutation::from_cycles(degree, {cycle}));
  }
  return PermGroup(degree, std::move(gens));
}

const StabilizerChain& PermGroup::build_chain() const {
  if (!chain_) chain_ = std::make_shared<const StabilizerChain>(schreier_sims(degree_, generators_));
  return *chain_;
}

bool PermGroup::contains(const Permutation& x) const {
  if (x.degree() != degree_) throw InputError("degree mismatch in membership test");
  return chain().sift(x).first.is_identity();
}

bool PermGroup::contains(const PermGroup& other) const {
  if (other.degree() != degree_) throw InputError("degree mismatch in containment test");
  return std::all_of(other.generators().begin(), other.generators().end(),
                     [&](const Permutation& g) { return contains(g); });
}

Partition PermGroup::orbits() const {
  auto roots = union_find_roots(degree_, generators_);
  std::vector<std::vector<Point>> blocks(degree_);
  for (std::size_t i = 0; i < degree_; ++i) blocks[roots[i]].push_back(static_cast<Point>(i));
  return Partition::normalized(std::move(blocks));
}

std::vector<Point> PermGroup::orbit(Point point) const {
  std::vector<Point> result{point};
  std::vector<bool> seen(degree_, false);
  seen[point] = true;
  for (std::size_t k = 0; k < result.size(); ++k) {
    for (const auto& g : generators_) {
      Point image = g[result[k]];
      if (!seen[image]) {
        seen[image] = true;
        result.push_back(image);
      }
    }
  }
  return result;
}

bool PermGroup::is_transitive() const { return degree_ <= 1 || orbits().size() == 1; }

bool PermGroup::is_regular() const { return is_transitive() && order() == degree_; }

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (generators_[i] * generators_[j] != generators_[j] * generators_[i]) return false;
    }
  }
  return true;
}

PermGroup PermGroup::stabilizer(std::span<const Point> points) const {
  auto chain = schreier_sims(degree_, generators_, points);
  // Levels exist for every distinct prefix point.
  std::vector<Point> distinct;
  for (Point p : points) {
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  }
  if (chain.levels.size() <= distinct.size()) return trivial(degree_);
  return PermGroup(degree_, chain.levels[distinct.size()].generators);
}

void PermGroup::for_each_element(const std::function<void(const Permutation&)>& visit,
                                 std::uint64_t cap) const {
  const auto& c = chain();
  if (c.order() > cap) throw CapExceeded("group order " + c.order().str() + " exceeds enumeration cap");
  std::function<void(long, const Permutation&)> rec = [&](long level, const Permutation& acc) {
    if (level < 0) {
      visit(acc);
      return;
    }
    for (const auto& t : c.levels[static_cast<std::size_t>(level)].transversal) rec(level - 1, acc * t);
  };
  rec(static_cast<long>(c.levels.size()) - 1, Permutation(degree_));
}

std::vector<Permutation> PermGroup::elements(std::uint64_t cap) const {
  std::vector<Permutation> result;
  for_each_element([&](const Permutation& g) { result.push_back(g); }, cap);
  return result;
}

PermGroup PermGroup::conjugated(const Permutation& pi) const {
  std::vector<Permutation> gens;
  gens.reserve(generators_.size());
  for (const auto& g : generators_) gens.push_back(conjugate(g, pi));
  return PermGroup(degree_, std::move(gens));
}

std::string PermGroup::to_string() const {
  std::ostringstream out;
  out << '<';
  for (std::size_t i = 0; i < generators_.size(); ++i) out << (i ? ", " : "") << generators_[i].to_string();
  out << '>';
  return out.str();
}

std::vector<Permutation> brute_force_closure(std::size_t degree, const std::vector<Permutation>& generators,
                                             std::size_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> result{Permutation(degree)};
  seen.insert(result.front());
  for (std::size_t k = 0; k < result.size(); ++k) {
    for (const auto& g : generators) {
      Permutation next = result[k] * g;
      if (seen.insert(next).second) {
        result.push_back(std::move(next));
        if (result.size() > cap) throw CapExceeded("closure exceeds cap");
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Subgroup conjugacy

namespace {

struct ConjugatorSearch {
  std::size_t n;
  std::vector<Permutation> a_gens;
  std::vector<std::vector<const Permutation*>> candidates;
  std::vector<std::vector<std::vector<std::size_t>>> pair_types;  // [i][j] for j < i
  std::vector<Point> a_orbit_reps;
  std::vector<Point> b_orbit_mins;
  const std::function<bool(const Permutation&)>& in_ambient;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  std::vector<const Permutation*> tuple;
  std::vector<int> g;
  std::vector<bool> used;
  std::optional<Permutation> found;

  void tick() {
    if (++nodes > budget) throw CapExceeded("subgroup conjugacy search exceeded its node budget");
  }

  bool choose_tuple(std::size_t i) {
    if (i == a_gens.size()) return solve_points(0);
    for (const Permutation* cand : candidates[i]) {
      tick();
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = ((*tuple[j]) * (*cand)).cycle_type() == pair_types[i][j];
      }
      if (!ok) continue;
      tuple[i] = cand;
      if (choose_tuple(i + 1)) return true;
    }
    return false;
  }

  // Assigns g(x) = y and closes under the generator relations. Returns the
  // list of newly assigned points, or nullopt on conflict (after undoing).
  std::optional<std::vector<Point>> propagate(Point x, Point y) {
    std::vector<Point> assigned;
    auto undo = [&] {
      for (Point p : assigned) {
        used[static_cast<std::size_t>(g[p])] = false;
        g[p] = -1;
      }
    };
    if (used[y]) return std::nullopt;
    g[x] = y;
    used[y] = true;
    assigned.push_back(x);
    for (std::size_t k = 0; k < assigned.size(); ++k) {
      Point u = assigned[k];
      for (std::size_t i = 0; i < a_gens.size(); ++i) {
        Point u2 = a_gens[i][u];
        Point v2 = (*tuple[i])[static_cast<std::size_t>(g[u])];
        if (g[u2] < 0) {
          if (used[v2]) {
            undo();
            return std::nullopt;
          }
          g[u2] = v2;
          used[v2] = true;
          assigned.push_back(u2);
        } else if (static_cast<Point>(g[u2]) != v2) {
          undo();
          return std::nullopt;
        }
      }
    }
    return assigned;
  }

  bool solve_points(std::size_t r) {
    if (r == a_orbit_reps.size()) {
      std::vector<Point> images(n);
      for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Point>(g[i]);
      Permutation candidate(std::move(images));
      if (!in_ambient(candidate)) return false;
      found = std::move(candidate);
      return true;
    }
    Point x = a_orbit_reps[r];
    const std::vector<Point>* choices = nullptr;
    std::vector<Point> all;
    if (r == 0) {
      choices = &b_orbit_mins;
    } else {
      all.resize(n);
      std::iota(all.begin(), all.end(), Point{0});
      choices = &all;
    }
    for (Point y : *choices) {
      tick();
      if (used[y]) continue;
      auto assigned = propagate(x, y);
      if (!assigned) continue;
      if (solve_points(r + 1)) return true;
      for (Point p : *assigned) {
        used[static_cast<std::size_t>(g[p])] = false;
        g[p] = -1;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Permutation> find_conjugator(const PermGroup& a, const PermGroup& b,
                                           const std::function<bool(const Permutation&)>& in_ambient,
                                           std::uint64_t node_budget) {
  if (a.degree() != b.degree()) throw InputError("degree mismatch in subgroup conjugacy");
  const std::size_t n = a.degree();
  if (a.order() != b.order()) return std::nullopt;

  auto orbit_sizes = [](const PermGroup& h) {
    std::vector<std::size_t> sizes;
    for (const auto& blk : h.orbits().blocks) sizes.push_back(blk.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  if (orbit_sizes(a) != orbit_sizes(b)) return std::nullopt;

  if (b.contains(a)) {
    Permutation id(n);
    if (in_ambient(id)) return id;
  }

  ConjugatorSearch search{n, {}, {}, {}, {}, {}, in_ambient, node_budget, 0, {}, {}, {}, std::nullopt};
  std::unordered_set<Permutation, PermutationHash> distinct;
  for (const auto& gen : a.generators()) {
    if (!gen.is_identity() && distinct.insert(gen).second) search.a_gens.push_back(gen);
  }

  auto b_elements = b.elements(2'000'000);
  search.candidates.resize(search.a_gens.size());
  search.pair_types.resize(search.a_gens.size());
  for (std::size_t i = 0; i < search.a_gens.size(); ++i) {
    auto type = search.a_gens[i].cycle_type();
    for (const auto& e : b_elements) {
      if (e.cycle_type() == type) search.candidates[i].push_back(&e);
    }
    for (std::size_t j = 0; j < i; ++j) {
      search.pair_types[i].push_back((search.a_gens[j] * search.a_gens[i]).cycle_type());
    }
  }

  // One representative per orbit of <a_gens>, smallest point first.
  for (const auto& blk : a.orbits().blocks) search.a_orbit_reps.push_back(blk.front());
  // With B inside the ambient group a conjugator can be followed by any
  // element of B, so the first point may go to B-orbit minima only.
  bool b_inside = true;
  for (const auto& gen : b.generators()) b_inside = b_inside && in_ambient(gen);
  if (b_inside) {
    for (const auto& blk : b.orbits().blocks) search.b_orbit_mins.push_back(blk.front());
  } else {
    search.b_orbit_mins.resize(n);
    std::iota(search.b_orbit_mins.begin(), search.b_orbit_mins.end(), Point{0});
  }

  search.tuple.assign(search.a_gens.size(), nullptr);
  search.g.assign(n, -1);
  search.used.assign(n, false);
  if (!search.choose_tuple(0)) return std::nullopt;

  const Permutation& witness = *search.found;
  for (const auto& gen : a.generators()) {
    if (!b.contains(conjugate(gen, witness))) throw InternalError("conjugacy witness failed verification");
  }
  return witness;
}

std::optional<Permutation> are_conjugate_subgroups(const PermGroup& ambient, const PermGroup& a,
                                                   const PermGroup& b) {
  if (a.degree() != ambient.degree() || b.degree() != ambient.degree()) {
    throw InputError("degree mismatch in subgroup conjugacy");
  }
  if (!ambient.contains(a) || !ambient.contains(b)) throw InputError("subgroup is not contained in the ambient group");
  return find_conjugator(a, b, [&](const Permutation& g) { return ambient.contains(g); });
}

}  // namespace dcicheck
