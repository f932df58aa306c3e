// dcicheck: command-line front end. Every subcommand writes one JSON report
// (stdout, or --out) and exits with 0 confirmed, 2 refuted, 3 infeasible,
// 1 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dcicheck/commands.hpp"
#include "dcicheck/error.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dcicheck::InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dcicheck;
  CLI::App app{"Cayley isomorphism checks for small groups"};
  app.require_subcommand(1);

  CommandConfig config;
  config.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string out_path;
  std::size_t max_set_size = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", config.group, "dihedral:n | cyclic:n | alt4 | q18")->capture_default_str();
    sub->add_option("--mode", config.mode, "dci | ci")->check(CLI::IsMember({"dci", "ci"}))->capture_default_str();
    sub->add_option("--max-set-size", max_set_size, "only connection sets with |S| <= k")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", config.seed, "seed for shuffles and random samples")->capture_default_str();
    sub->add_option("--workers", config.workers, "scan threads")->check(CLI::PositiveNumber);
    sub->add_flag("--connected-only", config.connected_only, "skip disconnected Cayley digraphs");
    sub->add_flag("--exclude-identity", config.exclude_identity, "connection sets never contain 1");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  };

  std::size_t p = 5;
  std::string case_id, set, gens, pi, graph_a, graph_b;
  std::size_t degree = 0, count = 1000;

  auto* verify = app.add_subcommand("verify-theorem", "dihedral group of order 6p: not CI / CI not DCI / DCI");
  verify->add_option("--p", p, "2, 3 or 5")->required()->check(CLI::IsMember({2, 3, 5}));
  common(verify);
  auto* scan = app.add_subcommand("scan", "exhaustive DCI or CI scan of --group");
  common(scan);
  auto* closure = app.add_subcommand("two-closure", "2-closure of a permutation group");
  closure->add_option("--gens", gens, "';'-separated generators in cycle notation (default: right regular --group)");
  closure->add_option("--degree", degree, "degree for --gens");
  common(closure);
  auto* dci_graph = app.add_subcommand("dci-graph", "is Cay(G,S) a DCI-graph");
  dci_graph->add_option("--set", set, "connection set, e.g. \"b,a^3\"")->required();
  common(dci_graph);
  auto* dichotomy = app.add_subcommand("dichotomy", "regular Sym(3) subgroups of Sym(6), pairwise");
  common(dichotomy);
  auto* cases = app.add_subcommand("case", "case analysis of <R, R^pi> at p in {5, 7}");
  cases->add_option("--p", p, "5 or 7")->required()->check(CLI::IsMember({5, 7}));
  cases->add_option("--case", case_id, "I, II, III, IV or reduction")
      ->required()
      ->check(CLI::IsMember({"I", "II", "III", "IV", "reduction"}));
  common(cases);
  auto* strong = app.add_subcommand("babai-strong", "R and R^pi conjugate in <R, R^pi>^(2)");
  strong->add_option("--p", p, "block size (odd prime, 6p <= 42)")->capture_default_str();
  strong->add_option("--pi", pi, "one permutation in cycle notation");
  strong->add_option("--count", count, "number of seeded random pi")->capture_default_str();
  common(strong);
  auto* cayley = app.add_subcommand("cayley", "build Cay(G,S)");
  cayley->add_option("--set", set, "connection set")->required();
  common(cayley);
  auto* canon = app.add_subcommand("canon", "canonical form of a digraph file");
  canon->add_option("graph", graph_a, "digraph file: \"n m\" then m lines \"u v\" (1-based)")->required();
  common(canon);
  auto* iso = app.add_subcommand("iso", "isomorphism between two digraph files");
  iso->add_option("first", graph_a)->required();
  iso->add_option("second", graph_b)->required();
  common(iso);
  auto* aut = app.add_subcommand("aut", "automorphism group of a digraph file");
  aut->add_option("graph", graph_a)->required();
  common(aut);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--max-set-size")) config.max_set_size = max_set_size;
  }

  CommandOutput result;
  try {
    if (verify->parsed()) {
      result = cmd_verify_theorem(p, config);
    } else if (scan->parsed()) {
      result = cmd_scan(config);
    } else if (closure->parsed()) {
      result = cmd_two_closure(gens, degree, config);
    } else if (dci_graph->parsed()) {
      result = cmd_dci_graph(set, config);
    } else if (dichotomy->parsed()) {
      result = cmd_dichotomy(config);
    } else if (cases->parsed()) {
      result = cmd_case(p, case_id, config);
    } else if (strong->parsed()) {
      result = cmd_babai_strong(p, pi, count, config);
    } else if (cayley->parsed()) {
      result = cmd_cayley(set, config);
    } else if (canon->parsed()) {
      result = cmd_canon(read_file(graph_a));
    } else if (iso->parsed()) {
      result = cmd_iso(read_file(graph_a), read_file(graph_b));
    } else if (aut->parsed()) {
      result = cmd_aut(read_file(graph_a));
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ScopeInfeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const CapExceeded& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }

  std::string text = result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    out << text;
  }
  return result.exit_code;
}
