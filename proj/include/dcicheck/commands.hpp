#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace dcicheck {

/// Exit codes shared by the command line tool and the Python wrapper.
enum ExitCode : int { kExitConfirmed = 0, kExitUsage = 1, kExitRefuted = 2, kExitInfeasible = 3 };

struct CommandConfig {
  std::string group = "dihedral:6";
  std::string mode = "dci";
  std::optional<std::size_t> max_set_size;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool connected_only = false;
  bool exclude_identity = false;
};

/// A report is an ordered JSON object
///   {group, claim, mode, scope, verdict, witnesses, seed, details, timings}
/// where only "timings" may differ between identical invocations.
struct CommandOutput {
  nlohmann::ordered_json report;
  int exit_code = kExitConfirmed;
};

/// The report without its "timings" member, serialized; equal across runs.
std::string stable_dump(const nlohmann::ordered_json& report);

/// Dihedral group of order 6p against the predicted pattern: p = 2 is not
/// CI, p = 3 is CI but not DCI, p >= 5 is DCI (checked within the scope;
/// |S| <= 4 unless max_set_size says otherwise).
CommandOutput cmd_verify_theorem(std::size_t p, const CommandConfig& config);

/// The claim "config.group is a <mode>-group".
CommandOutput cmd_scan(const CommandConfig& config);

/// 2-closure of the group generated by permutations in cycle notation
/// (';'-separated), or of the right regular representation of config.group
/// when `generators` is empty.
CommandOutput cmd_two_closure(const std::string& generators, std::size_t degree, const CommandConfig& config);

/// Is Cay(G, S) a DCI-graph? Direct oracle, plus Babai's criterion when the
/// automorphism group is small enough.
CommandOutput cmd_dci_graph(const std::string& set, const CommandConfig& config);

CommandOutput cmd_dichotomy(const CommandConfig& config);

CommandOutput cmd_case(std::size_t p, const std::string& case_id, const CommandConfig& config);

/// Strong conjugacy check for the dihedral group of order 6p in block form:
/// one permutation given in cycle notation, or `count` seeded random ones.
CommandOutput cmd_babai_strong(std::size_t p, const std::string& pi, std::size_t count, const CommandConfig& config);

CommandOutput cmd_cayley(const std::string& set, const CommandConfig& config);
CommandOutput cmd_canon(const std::string& digraph_text);
CommandOutput cmd_iso(const std::string& first, const std::string& second);
CommandOutput cmd_aut(const std::string& digraph_text);

}  // namespace dcicheck
