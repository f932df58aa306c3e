#include "dcicheck/commands.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <sstream>

#include "dcicheck/babai.hpp"
#include "dcicheck/cases.hpp"
#include "dcicheck/digraph.hpp"
#include "dcicheck/error.hpp"
#include "dcicheck/scan.hpp"
#include "dcicheck/two_closure.hpp"
#include "dcicheck/wreath.hpp"

namespace dcicheck {

using Json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

Json labels(const FiniteGroup& g, const FiniteGroup::ElementSet& s) { return Json(g.labels_of(s)); }

Json witness_json(const FiniteGroup& g, const ScanWitness& w) {
  Json out;
  out["S"] = labels(g, w.s);
  out["T"] = labels(g, w.t);
  out["certificate"] = w.certificate;
  return out;
}

Json skeleton(const std::string& group, const std::string& claim, const std::string& mode, const std::string& scope,
              std::uint64_t seed) {
  Json r;
  r["group"] = group;
  r["claim"] = claim;
  r["mode"] = mode;
  r["scope"] = scope;
  r["verdict"] = "confirmed";
  r["witnesses"] = Json::array();
  r["seed"] = seed;
  r["details"] = Json::object();
  return r;
}

int exit_for(const std::string& verdict) {
  if (verdict == "confirmed") return kExitConfirmed;
  if (verdict == "refuted") return kExitRefuted;
  return kExitInfeasible;
}

CommandOutput finish(Json report, Clock::time_point start) {
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report["timings"] = Json{{"wall_seconds", seconds}};
  CommandOutput out;
  out.exit_code = exit_for(report["verdict"].get<std::string>());
  out.report = std::move(report);
  return out;
}

ScanOptions scan_options(const CommandConfig& c, ClaimMode mode) {
  ScanOptions o;
  o.mode = mode;
  o.max_set_size = c.max_set_size;
  o.connected_only = c.connected_only;
  o.exclude_identity = c.exclude_identity;
  o.workers = std::max(1u, c.workers);
  o.shuffle_seed = c.seed;
  return o;
}

Json scan_summary(const FiniteGroup& g, const ScanResult& r) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  out["scope"] = r.scope;
  if (r.scanned_size) {
    out["scanned_max_set_size"] = *r.scanned_size;
  } else {
    out["scanned_max_set_size"] = nullptr;
  }
  out["orbit_representatives"] = r.orbit_representatives;
  out["canonized"] = r.canonized;
  out["raw_sets"] = static_cast<std::uint64_t>(r.raw_sets);
  out["flagged_buckets"] = r.flagged.size();
  Json buckets = Json::array();
  for (const auto& b : r.flagged) {
    Json members = Json::array();
    for (const auto& m : b.members) members.push_back(labels(g, m));
    buckets.push_back(Json{{"certificate", b.certificate}, {"members", members}});
  }
  out["buckets"] = buckets;
  return out;
}

// Locates the flagged bucket holding the orbits of s and t.
bool pair_in_flagged(const FiniteGroup& g, const ScanResult& r, ClaimMode mode, bool exclude_identity,
                     const FiniteGroup::ElementSet& s, const FiniteGroup::ElementSet& t) {
  OrbitEnumerator e(g, automorphisms(g), mode, exclude_identity);
  SetMask ms = e.representative(to_mask(s)), mt = e.representative(to_mask(t));
  for (const auto& b : r.flagged) {
    bool has_s = false, has_t = false;
    for (const auto& m : b.members) {
      has_s = has_s || to_mask(m) == ms;
      has_t = has_t || to_mask(m) == mt;
    }
    if (has_s && has_t) return true;
  }
  return false;
}

Digraph disjoint_undirected_cycles(std::size_t count, std::size_t length) {
  Digraph d(count * length);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < length; ++i) {
      std::size_t u = c * length + i, v = c * length + (i + 1) % length;
      d.add_arc(u, v);
      d.add_arc(v, u);
    }
  }
  return d;
}

std::vector<Permutation> parse_generators(const std::string& text, std::size_t degree) {
  std::vector<Permutation> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(Permutation::parse(item, degree));
  }
  return out;
}

Json cycle_strings(const std::vector<Permutation>& gens) {
  Json out = Json::array();
  for (const auto& x : gens) out.push_back(x.to_string());
  return out;
}

// Random pi for the strong check, cycling through three families: wreath
// elements with affine block parts, base elements only, and uniform
// permutations of all 6p points.
Permutation random_pi(const Wreath& w, std::mt19937_64& rng, std::size_t family) {
  const std::size_t p = w.p();
  if (family == 2) {
    std::vector<Point> images(w.degree());
    for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<Point>(i);
    std::shuffle(images.begin(), images.end(), rng);
    return Permutation(images);
  }
  std::vector<Point> order{0, 1, 2, 3, 4, 5};
  if (family == 0) std::shuffle(order.begin(), order.end(), rng);
  std::array<Permutation, 6> ys;
  for (auto& y : ys) {
    auto u = static_cast<std::int64_t>(rng() % p);
    auto v = static_cast<std::int64_t>(rng() % (p - 1));
    y = w.affine(u, v);
  }
  return w.element(Permutation(order), ys);
}

const char* kFamilies[] = {"wreath-affine", "base-only", "uniform"};

}  // namespace

std::string stable_dump(const Json& report) {
  Json copy = report;
  copy.erase("timings");
  return copy.dump(2);
}

CommandOutput cmd_verify_theorem(std::size_t p, const CommandConfig& config) {
  auto start = Clock::now();
  if (p != 2 && p != 3 && p != 5) throw InputError("verify-theorem takes p in {2, 3, 5}");
  FiniteGroup g = dihedral(3 * p);
  Json report;
  if (p == 2) {
    auto ci = scan_group(g, scan_options(config, ClaimMode::kCi));
    report = skeleton(g.name(), "dihedral-6p:not-ci:p=2", "ci", ci.scope, config.seed);
    auto s = g.parse_set("b,a^3"), t = g.parse_set("b,a^3*b");
    bool located = pair_in_flagged(g, ci, ClaimMode::kCi, config.exclude_identity, s, t);
    std::string cycles = canonical_form(disjoint_undirected_cycles(3, 4)).hex();
    bool s_cycles = canonical_form(cayley_digraph(g, s)).hex() == cycles;
    bool t_cycles = canonical_form(cayley_digraph(g, t)).hex() == cycles;
    for (const auto& w : ci.witnesses) report["witnesses"].push_back(witness_json(g, w));
    report["details"]["ci_scan"] = scan_summary(g, ci);
    report["details"]["expected_pair"] = Json{{"S", labels(g, s)},
                                              {"T", labels(g, t)},
                                              {"found_in_flagged_bucket", located},
                                              {"S_is_three_4_cycles", s_cycles},
                                              {"T_is_three_4_cycles", t_cycles},
                                              {"three_4_cycles_certificate", cycles}};
    if (ci.verdict == Verdict::kInfeasible) {
      report["verdict"] = "infeasible";
    } else {
      report["verdict"] = ci.verdict == Verdict::kRefuted && located && s_cycles && t_cycles ? "confirmed" : "refuted";
    }
  } else if (p == 3) {
    auto dci = scan_group(g, scan_options(config, ClaimMode::kDci));
    auto ci = scan_group(g, scan_options(config, ClaimMode::kCi));
    report = skeleton(g.name(), "dihedral-6p:ci-not-dci:p=3", "dci+ci", dci.scope, config.seed);
    auto s = g.parse_set("a,a^4,a^6,a^7"), t = g.parse_set("a^2,a^5,a^6,a^8");
    bool located = pair_in_flagged(g, dci, ClaimMode::kDci, config.exclude_identity, s, t);
    for (const auto& w : dci.witnesses) report["witnesses"].push_back(witness_json(g, w));
    report["details"]["dci_scan"] = scan_summary(g, dci);
    report["details"]["ci_scan"] = scan_summary(g, ci);
    report["details"]["expected_pair"] =
        Json{{"S", labels(g, s)}, {"T", labels(g, t)}, {"found_in_flagged_bucket", located}};
    if (dci.verdict == Verdict::kInfeasible || ci.verdict == Verdict::kInfeasible) {
      report["verdict"] = "infeasible";
    } else {
      bool ok = dci.verdict == Verdict::kRefuted && located && ci.verdict == Verdict::kConfirmed;
      report["verdict"] = ok ? "confirmed" : "refuted";
    }
  } else {
    CommandConfig bounded = config;
    if (!bounded.max_set_size) bounded.max_set_size = 4;
    auto dci = scan_group(g, scan_options(bounded, ClaimMode::kDci));
    report = skeleton(g.name(), "dihedral-6p:dci:p=5", "dci", dci.scope, config.seed);
    for (const auto& w : dci.witnesses) report["witnesses"].push_back(witness_json(g, w));
    report["details"]["dci_scan"] = scan_summary(g, dci);
    report["verdict"] = to_string(dci.verdict);
  }
  return finish(std::move(report), start);
}

CommandOutput cmd_scan(const CommandConfig& config) {
  auto start = Clock::now();
  FiniteGroup g = group_from_selector(config.group);
  ClaimMode mode = parse_claim_mode(config.mode);
  auto r = scan_group(g, scan_options(config, mode));
  Json report = skeleton(g.name(), to_string(mode) + "-group:" + g.name(), to_string(mode), r.scope, config.seed);
  report["verdict"] = to_string(r.verdict);
  for (const auto& w : r.witnesses) report["witnesses"].push_back(witness_json(g, w));
  report["details"] = scan_summary(g, r);
  report["details"]["connected_only"] = config.connected_only;
  report["details"]["exclude_identity"] = config.exclude_identity;
  return finish(std::move(report), start);
}

CommandOutput cmd_two_closure(const std::string& generators, std::size_t degree, const CommandConfig& config) {
  auto start = Clock::now();
  PermGroup g;
  std::string name;
  if (generators.empty()) {
    FiniteGroup fg = group_from_selector(config.group);
    g = right_regular(fg);
    name = fg.name() + " (right regular)";
  } else {
    if (degree == 0) throw InputError("two-closure needs --degree with --gens");
    g = PermGroup(degree, parse_generators(generators, degree));
    name = "<" + generators + ">";
  }
  TwoClosure tc(g);
  Json report = skeleton(name, "two-closure", "n/a", "full", config.seed);
  report["details"]["degree"] = g.degree();
  report["details"]["group_order"] = g.order().str();
  report["details"]["orbitals"] = tc.coloring().count;
  report["details"]["closure_order"] = tc.closure().order().str();
  report["details"]["closure_generators"] = cycle_strings(tc.closure().generators());
  report["details"]["two_closed"] = tc.closure().order() == g.order();
  return finish(std::move(report), start);
}

CommandOutput cmd_dci_graph(const std::string& set, const CommandConfig& config) {
  auto start = Clock::now();
  FiniteGroup g = group_from_selector(config.group);
  auto s = g.parse_set(set);
  auto direct = is_dci_graph_direct(g, s);
  Json report = skeleton(g.name(), "dci-graph:" + g.format_set(s), "dci", "all T with |T| = |S|", config.seed);
  report["details"]["S"] = labels(g, s);
  report["details"]["isomorphic_orbits"] = direct.isomorphic_orbits;
  if (direct.witness) {
    report["verdict"] = "refuted";
    ScanWitness w{s, *direct.witness, canonical_form(cayley_digraph(g, s)).hex()};
    report["witnesses"].push_back(witness_json(g, w));
  }
  try {
    auto babai = is_dci_graph_babai(g, s);
    if (babai.dci != direct.dci) throw InternalError("Babai criterion and direct test disagree");
    Json classes = Json::array();
    for (const auto& rep : babai.representatives) classes.push_back(cycle_strings(rep.generators));
    report["details"]["babai"] = Json{{"dci", babai.dci},
                                      {"classes", babai.classes},
                                      {"aut_order", babai.aut_order.str()},
                                      {"regular_subgroups_found", babai.regular_subgroups_found},
                                      {"symmetric_shortcut", babai.symmetric_shortcut},
                                      {"class_representatives", classes}};
  } catch (const CapExceeded& e) {
    report["details"]["babai"] = Json{{"skipped", e.what()}};
  }
  return finish(std::move(report), start);
}

CommandOutput cmd_dichotomy(const CommandConfig& config) {
  auto start = Clock::now();
  auto d = sym3_dichotomy_check();
  Json report = skeleton("Sym(6)", "sym3-dichotomy", "n/a", "all ordered pairs", config.seed);
  Json subgroups = Json::array();
  for (const auto& gens : d.subgroups) subgroups.push_back(cycle_strings(gens));
  // The pair A = <(1,2,3)(4,5,6),(1,4)(2,6)(3,5)>, B = A^(5,6).
  auto index_of = [&](const char* x, const char* y) {
    PermGroup want(6, {Permutation::parse(x, 6), Permutation::parse(y, 6)});
    for (std::size_t i = 0; i < d.subgroups.size(); ++i) {
      PermGroup h(6, d.subgroups[i]);
      if (h.contains(want) && want.contains(h)) return i;
    }
    throw InternalError("block-action subgroup missing from the enumeration");
  };
  std::size_t a = index_of("(1,2,3)(4,5,6)", "(1,4)(2,6)(3,5)");
  std::size_t b = index_of("(1,2,3)(4,6,5)", "(1,4)(2,5)(3,6)");
  const auto& pair = d.pairs[a * d.subgroups.size() + b];
  report["details"]["subgroups"] = subgroups;
  report["details"]["pairs"] = d.pairs.size();
  report["details"]["conjugate_branch"] = d.conjugate_branch;
  report["details"]["product_branch"] = d.product_branch;
  report["details"]["anomalies"] = d.anomalies;
  report["details"]["block_action_pair"] = Json{{"A", cycle_strings(d.subgroups[a])},
                                                {"B", cycle_strings(d.subgroups[b])},
                                                {"direct_product", pair.direct_product},
                                                {"joined_order", pair.joined_order.str()}};
  bool ok = d.anomalies == 0 && pair.direct_product && pair.joined_order == 36;
  report["verdict"] = ok ? "confirmed" : "refuted";
  return finish(std::move(report), start);
}

CommandOutput cmd_case(std::size_t p, const std::string& case_id, const CommandConfig& config) {
  auto start = Clock::now();
  auto r = reproduce_case_analysis(p, case_id, config.seed);
  Json report = skeleton("dihedral:" + std::to_string(3 * p) + " (block model)",
                         "case-analysis:" + case_id + ":p=" + std::to_string(p), "n/a", "exhaustive", config.seed);
  report["details"]["p"] = p;
  report["details"]["alpha"] = "x -> " + std::to_string(r.primitive_root) + "x";
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  report["details"]["checks"] = checks;
  report["verdict"] = r.passed() ? "confirmed" : "refuted";
  return finish(std::move(report), start);
}

CommandOutput cmd_babai_strong(std::size_t p, const std::string& pi, std::size_t count, const CommandConfig& config) {
  auto start = Clock::now();
  Wreath w(p);
  PermGroup r = w.dihedral_r();
  std::vector<std::pair<Permutation, std::string>> samples;
  std::string scope;
  if (!pi.empty()) {
    samples.emplace_back(Permutation::parse(pi, w.degree()), "given");
    scope = "single pi";
  } else {
    std::mt19937_64 rng(config.seed);
    for (std::size_t i = 0; i < count; ++i) samples.emplace_back(random_pi(w, rng, i % 3), kFamilies[i % 3]);
    scope = std::to_string(count) + " seeded pi";
  }
  Json report = skeleton("dihedral:" + std::to_string(3 * p) + " (block model)",
                         "strong-conjugacy:dihedral-6p:p=" + std::to_string(p), "n/a", scope, config.seed);
  std::size_t passed = 0;
  Json failures = Json::array();
  std::map<std::string, std::size_t> per_family;
  std::optional<StrongCheckResult> first;
  for (const auto& [x, family] : samples) {
    auto res = babai_strong_check(r, x);
    if (res.conjugate) {
      ++passed;
      ++per_family[family];
    } else {
      failures.push_back(x.to_string());
    }
    if (!first) first = res;
  }
  report["details"]["samples"] = samples.size();
  report["details"]["conjugate"] = passed;
  report["details"]["per_family"] = per_family;
  report["details"]["failures"] = failures;
  if (!pi.empty() && first) {
    report["details"]["joined_order"] = first->joined_order.str();
    report["details"]["closure_order"] = first->closure_order.str();
    report["details"]["witness"] = first->witness ? Json(first->witness->to_string()) : Json(nullptr);
  }
  report["verdict"] = passed == samples.size() ? "confirmed" : "refuted";
  return finish(std::move(report), start);
}

CommandOutput cmd_cayley(const std::string& set, const CommandConfig& config) {
  auto start = Clock::now();
  FiniteGroup g = group_from_selector(config.group);
  auto s = g.parse_set(set);
  Digraph d = cayley_digraph(g, s);
  Json report = skeleton(g.name(), "cayley:" + g.format_set(s), "n/a", "single digraph", config.seed);
  report["details"]["S"] = labels(g, s);
  report["details"]["vertices"] = d.n();
  report["details"]["arcs"] = d.arc_count();
  report["details"]["connected"] = d.is_connected();
  report["details"]["symmetric"] = d.is_symmetric();
  report["details"]["certificate"] = canonical_form(d, cayley_hints(g)).hex();
  report["details"]["digraph"] = d.to_text();
  return finish(std::move(report), start);
}

CommandOutput cmd_canon(const std::string& digraph_text) {
  auto start = Clock::now();
  Digraph d = Digraph::parse(digraph_text);
  auto c = canonical_form(d);
  Json report = skeleton("n/a", "canonical-form", "n/a", "single digraph", 0);
  report["details"]["vertices"] = d.n();
  report["details"]["certificate"] = c.hex();
  std::vector<std::size_t> labeling;
  for (Point x : c.labeling) labeling.push_back(x + 1);
  report["details"]["labeling"] = labeling;
  return finish(std::move(report), start);
}

CommandOutput cmd_iso(const std::string& first, const std::string& second) {
  auto start = Clock::now();
  Digraph a = Digraph::parse(first), b = Digraph::parse(second);
  auto iso = are_isomorphic(a, b);
  Json report = skeleton("n/a", "isomorphic", "n/a", "pair of digraphs", 0);
  report["details"]["isomorphism"] = iso ? Json(iso->to_string()) : Json(nullptr);
  report["verdict"] = iso ? "confirmed" : "refuted";
  return finish(std::move(report), start);
}

CommandOutput cmd_aut(const std::string& digraph_text) {
  auto start = Clock::now();
  Digraph d = Digraph::parse(digraph_text);
  PermGroup aut = automorphism_group(d);
  Json report = skeleton("n/a", "automorphism-group", "n/a", "single digraph", 0);
  report["details"]["order"] = aut.order().str();
  report["details"]["generators"] = cycle_strings(aut.generators());
  return finish(std::move(report), start);
}

}  // namespace dcicheck
