#include "dcicheck/scan.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "dcicheck/digraph.hpp"
#include "dcicheck/error.hpp"

namespace dcicheck {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> guard(failure_lock);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

SetMask all_elements(std::size_t n) { return n >= 64 ? ~SetMask{0} : (SetMask{1} << n) - 1; }

std::string certificate_of(const FiniteGroup& g, SetMask s, const std::vector<Permutation>& hints) {
  return canonical_form(cayley_digraph(g, from_mask(s)), hints).bytes;
}

}  // namespace

std::string to_string(ClaimMode mode) { return mode == ClaimMode::kDci ? "dci" : "ci"; }

ClaimMode parse_claim_mode(std::string_view text) {
  if (text == "dci" || text == "DCI") return ClaimMode::kDci;
  if (text == "ci" || text == "CI") return ClaimMode::kCi;
  throw InputError("unknown mode '" + std::string(text) + "' (expected dci or ci)");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kConfirmed:
      return "confirmed";
    case Verdict::kRefuted:
      return "refuted";
    case Verdict::kInfeasible:
      return "infeasible";
  }
  return "?";
}

SetMask to_mask(const FiniteGroup::ElementSet& s) {
  SetMask m = 0;
  for (auto x : s) {
    if (x >= 64) throw InputError("connection sets are limited to groups of order <= 64");
    m |= SetMask{1} << x;
  }
  return m;
}

FiniteGroup::ElementSet from_mask(SetMask m) {
  FiniteGroup::ElementSet out;
  for (; m; m &= m - 1) out.push_back(static_cast<FiniteGroup::Element>(std::countr_zero(m)));
  return out;
}

OrbitEnumerator::OrbitEnumerator(const FiniteGroup& g, const std::vector<GroupAutomorphism>& autos, ClaimMode mode,
                                 bool exclude_identity) {
  const std::size_t n = g.order();
  if (n > 64) throw CapExceeded("connection-set scans are limited to groups of order <= 64");
  atom_of_element_.assign(n, -1);
  for (FiniteGroup::Element x = 0; x < n; ++x) {
    if (atom_of_element_[x] >= 0 || (exclude_identity && x == g.identity())) continue;
    SetMask atom = SetMask{1} << x;
    if (mode == ClaimMode::kCi) atom |= SetMask{1} << g.inverse(x);
    for (auto y : from_mask(atom)) atom_of_element_[y] = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    atom_size_.push_back(static_cast<std::size_t>(std::popcount(atom)));
  }
  chunks_ = (atoms_.size() + 7) / 8;
  for (const auto& phi : autos) {
    bool identity = true;
    for (std::size_t x = 0; x < n; ++x) identity = identity && phi.mapping[x] == x;
    if (identity) continue;
    std::vector<std::size_t> atom_image(atoms_.size());
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      int b = atom_of_element_[phi.mapping[std::countr_zero(atoms_[a])]];
      if (b < 0) throw InternalError("automorphism moves the identity");
      atom_image[a] = static_cast<std::size_t>(b);
    }
    for (std::size_t c = 0; c < chunks_; ++c) {
      for (std::size_t byte = 0; byte < 256; ++byte) {
        std::uint64_t img = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
          std::size_t a = c * 8 + bit;
          if ((byte >> bit) & 1U && a < atoms_.size()) img |= std::uint64_t{1} << atom_image[a];
        }
        tables_.push_back(img);
      }
    }
    ++phis_;
  }
}

std::uint64_t OrbitEnumerator::image(std::size_t phi, std::uint64_t atoms) const {
  const std::uint64_t* t = &tables_[phi * chunks_ * 256];
  std::uint64_t out = 0;
  for (std::size_t c = 0; c < chunks_; ++c, t += 256) out |= t[(atoms >> (8 * c)) & 0xFF];
  return out;
}

bool OrbitEnumerator::is_canonical(std::uint64_t atoms) const {
  for (std::size_t phi = 0; phi < phis_; ++phi) {
    std::uint64_t y = image(phi, atoms);
    std::uint64_t d = y ^ atoms;
    // The lowest index where the two sets differ decides the lexicographic
    // order of their sorted tuples.
    if (d & y & (~d + 1)) return false;
  }
  return true;
}

std::uint64_t OrbitEnumerator::to_atoms(SetMask elements) const {
  std::uint64_t out = 0;
  for (auto x : from_mask(elements)) {
    if (x >= atom_of_element_.size() || atom_of_element_[x] < 0) throw InputError("set is outside the scanned atoms");
    out |= std::uint64_t{1} << atom_of_element_[x];
  }
  if (to_elements(out) != elements) throw InputError("set is not a union of atoms");
  return out;
}

SetMask OrbitEnumerator::to_elements(std::uint64_t atoms) const {
  SetMask out = 0;
  for (; atoms; atoms &= atoms - 1) out |= atoms_[std::countr_zero(atoms)];
  return out;
}

double OrbitEnumerator::subset_count(std::size_t max_size) const {
  std::vector<double> ways(max_size + 1, 0.0);
  ways[0] = 1.0;
  for (std::size_t size : atom_size_) {
    for (std::size_t s = max_size + 1; s-- > size;) ways[s] += ways[s - size];
  }
  double total = 0;
  for (double w : ways) total += w;
  return total;
}

std::size_t OrbitEnumerator::largest_size_within(double cap) const {
  std::size_t total = 0;
  for (std::size_t s : atom_size_) total += s;
  std::size_t k = 0;
  while (k < total && subset_count(k + 1) <= cap) ++k;
  return k;
}

void OrbitEnumerator::for_each(std::size_t max_size, const std::function<void(SetMask)>& visit) const {
  visit(0);
  const std::size_t count = atoms_.size();
  std::function<void(std::uint64_t, std::size_t, std::size_t)> extend = [&](std::uint64_t set, std::size_t from,
                                                                             std::size_t size) {
    for (std::size_t a = from; a < count; ++a) {
      if (size + atom_size_[a] > max_size) continue;
      std::uint64_t next = set | (std::uint64_t{1} << a);
      if (!is_canonical(next)) continue;
      visit(to_elements(next));
      extend(next, a + 1, size + atom_size_[a]);
    }
  };
  extend(0, 0, 0);
}

SetMask OrbitEnumerator::representative(SetMask elements) const {
  std::uint64_t best = to_atoms(elements);
  const std::uint64_t start = best;
  for (std::size_t phi = 0; phi < phis_; ++phi) {
    std::uint64_t y = image(phi, start);
    std::uint64_t d = y ^ best;
    if (d & y & (~d + 1)) best = y;
  }
  return to_elements(best);
}

std::uint64_t walk_profile(const FiniteGroup& g, SetMask s) {
  const std::size_t n = g.order();
  std::vector<FiniteGroup::Element> steps;
  for (auto t : from_mask(s)) steps.push_back(g.inverse(t));
  std::vector<std::vector<std::uint64_t>> walks(5, std::vector<std::uint64_t>(n, 0));
  walks[0][g.identity()] = 1;
  for (std::size_t len = 1; len <= 4; ++len) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!walks[len - 1][x]) continue;
      for (auto t : steps) walks[len][g.mul(t, static_cast<FiniteGroup::Element>(x))] += walks[len - 1][x];
    }
  }
  std::uint64_t h = mix(steps.size());
  for (std::size_t x = 0; x < n; ++x) {
    std::uint64_t v = 0;
    for (std::size_t len = 1; len <= 4; ++len) v = mix(v ^ walks[len][x]);
    h += v;
  }
  return h;
}

bool generates_group(const FiniteGroup& g, SetMask s) {
  SetMask reached = SetMask{1} << g.identity();
  std::vector<FiniteGroup::Element> frontier{g.identity()};
  auto gens = from_mask(s);
  while (!frontier.empty()) {
    auto x = frontier.back();
    frontier.pop_back();
    for (auto t : gens) {
      auto y = g.mul(x, t);
      if (!((reached >> y) & 1U)) {
        reached |= SetMask{1} << y;
        frontier.push_back(y);
      }
    }
  }
  return reached == all_elements(g.order());
}

void verify_witness(const FiniteGroup& g, const std::vector<GroupAutomorphism>& autos,
                    const FiniteGroup::ElementSet& s, const FiniteGroup::ElementSet& t) {
  if (!are_isomorphic(cayley_digraph(g, s), cayley_digraph(g, t))) {
    throw InternalError("witness digraphs " + g.format_set(s) + " and " + g.format_set(t) + " are not isomorphic");
  }
  for (const auto& phi : autos) {
    if (apply_automorphism(phi, s) == t) {
      throw InternalError("witness sets " + g.format_set(s) + " and " + g.format_set(t) + " are automorphic");
    }
  }
}

ScanResult scan_group(const FiniteGroup& g, const ScanOptions& options) {
  const auto autos = automorphisms(g);
  OrbitEnumerator enumerator(g, autos, options.mode, options.exclude_identity);
  const std::size_t requested = options.max_set_size.value_or(g.order());
  ScanResult result;
  result.scope = options.max_set_size ? "|S|<=" + std::to_string(*options.max_set_size) : "full";
  std::size_t size_bound = requested;
  bool truncated = false;
  if (enumerator.subset_count(requested) > options.subset_cap) {
    size_bound = enumerator.largest_size_within(options.subset_cap);
    truncated = true;
  }
  result.scanned_size = size_bound;
  result.raw_sets = enumerator.subset_count(size_bound);

  std::vector<SetMask> reps;
  enumerator.for_each(size_bound, [&](SetMask m) {
    if (!options.connected_only || generates_group(g, m)) reps.push_back(m);
  });
  if (options.shuffle_seed) {
    std::mt19937_64 rng(options.shuffle_seed);
    std::shuffle(reps.begin(), reps.end(), rng);
  }
  result.orbit_representatives = reps.size();

  std::vector<std::uint64_t> profile(reps.size());
  parallel_for(reps.size(), options.workers, [&](std::size_t i) { profile[i] = walk_profile(g, reps[i]); });

  std::map<std::pair<int, std::uint64_t>, std::vector<SetMask>> by_profile;
  for (std::size_t i = 0; i < reps.size(); ++i) by_profile[{std::popcount(reps[i]), profile[i]}].push_back(reps[i]);
  std::vector<SetMask> colliding;
  for (auto& [key, members] : by_profile) {
    if (members.size() > 1) colliding.insert(colliding.end(), members.begin(), members.end());
  }
  const auto hints = cayley_hints(g);
  std::vector<std::string> certs(colliding.size());
  parallel_for(colliding.size(), options.workers,
               [&](std::size_t i) { certs[i] = certificate_of(g, colliding[i], hints); });
  result.canonized = colliding.size();

  std::map<std::string, std::vector<FiniteGroup::ElementSet>> by_cert;
  for (std::size_t i = 0; i < colliding.size(); ++i) by_cert[certs[i]].push_back(from_mask(colliding[i]));
  for (auto& [cert, members] : by_cert) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    result.flagged.push_back({to_hex(cert), members});
  }
  std::sort(result.flagged.begin(), result.flagged.end(), [](const ScanBucket& a, const ScanBucket& b) {
    if (a.members[0].size() != b.members[0].size()) return a.members[0].size() < b.members[0].size();
    return a.members < b.members;
  });
  for (const auto& bucket : result.flagged) {
    for (std::size_t i = 1; i < bucket.members.size(); ++i) {
      verify_witness(g, autos, bucket.members[0], bucket.members[i]);
      result.witnesses.push_back({bucket.members[0], bucket.members[i], bucket.certificate});
    }
  }
  if (!result.flagged.empty()) {
    result.verdict = Verdict::kRefuted;
  } else {
    result.verdict = truncated ? Verdict::kInfeasible : Verdict::kConfirmed;
  }
  return result;
}

DciOracle::DciOracle(FiniteGroup g)
    : g_(std::move(g)), autos_(automorphisms(g_)), enumerator_(g_, autos_, ClaimMode::kDci, true) {
  if (g_.order() > 30) throw ScopeInfeasible("direct DCI-graph test is limited to groups of order <= 30");
}

void DciOracle::ensure_layer(std::size_t k) {
  if (any_generated_ && generated_ >= k) return;
  layers_.assign(k + 1, {});
  profiles_.assign(k + 1, {});
  enumerator_.for_each(k, [&](SetMask m) { layers_[std::popcount(m)].push_back(m); });
  generated_ = k;
  any_generated_ = true;
}

DirectResult DciOracle::query(const FiniteGroup::ElementSet& s) {
  const std::size_t n = g_.order();
  for (auto x : s) {
    if (x >= n) throw InputError("element index out of range");
  }
  const SetMask original = to_mask(s);
  const SetMask identity_bit = SetMask{1} << g_.identity();
  const SetMask others = all_elements(n) & ~identity_bit;
  SetMask core = original & others;
  const bool complemented = static_cast<std::size_t>(std::popcount(core)) > (n - 1) / 2;
  if (complemented) core = others ^ core;
  const std::size_t k = static_cast<std::size_t>(std::popcount(core));

  ensure_layer(k);
  auto& reps = layers_[k];
  auto& profiles = profiles_[k];
  if (profiles.size() != reps.size()) {
    profiles.resize(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) profiles[i] = walk_profile(g_, reps[i]);
  }
  const auto hints = cayley_hints(g_);
  const std::uint64_t target_profile = walk_profile(g_, core);
  const std::string target = certificate_of(g_, core, hints);
  const SetMask own = enumerator_.representative(core);

  std::vector<SetMask> matches;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (profiles[i] == target_profile && certificate_of(g_, reps[i], hints) == target) matches.push_back(reps[i]);
  }
  if (std::find(matches.begin(), matches.end(), own) == matches.end()) {
    throw InternalError("direct oracle lost the orbit of " + g_.format_set(s));
  }
  DirectResult result;
  result.isomorphic_orbits = matches.size();
  result.dci = matches.size() == 1;
  for (SetMask m : matches) {
    if (m == own) continue;
    SetMask t = complemented ? others ^ m : m;
    t |= original & identity_bit;
    result.witness = from_mask(t);
    verify_witness(g_, autos_, s, *result.witness);
    break;
  }
  return result;
}

DirectResult is_dci_graph_direct(const FiniteGroup& g, const FiniteGroup::ElementSet& s) {
  DciOracle oracle(g);
  return oracle.query(s);
}

}  // namespace dcicheck
