#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcicheck/finite_group.hpp"

namespace dcicheck {

/// DCI checks every connection set; CI only the inverse-closed ones.
enum class ClaimMode { kDci, kCi };

std::string to_string(ClaimMode mode);
ClaimMode parse_claim_mode(std::string_view text);

/// Connection sets of groups of order <= 64 as bit masks over element indices.
using SetMask = std::uint64_t;

SetMask to_mask(const FiniteGroup::ElementSet& s);
FiniteGroup::ElementSet from_mask(SetMask m);

/// Orderly generation of Aut(G)-orbit representatives of connection sets.
///
/// Sets are unions of atoms: singletons in DCI mode, inverse pairs {x, x^-1}
/// in CI mode. Atoms are numbered by their smallest element and a set of
/// atoms is canonical when its sorted index tuple is lexicographically least
/// in its orbit. Removing the largest atom of a canonical set leaves a
/// canonical set, so a depth-first search that only extends canonical sets
/// by larger atoms visits each orbit exactly once.
class OrbitEnumerator {
 public:
  OrbitEnumerator(const FiniteGroup& g, const std::vector<GroupAutomorphism>& autos, ClaimMode mode,
                  bool exclude_identity);

  std::size_t atom_count() const { return atoms_.size(); }
  /// Number of (not orbit-reduced) connection sets of total size <= max_size.
  double subset_count(std::size_t max_size) const;
  /// Largest size bound whose subset count stays within `cap`.
  std::size_t largest_size_within(double cap) const;

  /// Visits the representative element mask of every orbit of sets with at
  /// most max_size elements, in depth-first order.
  void for_each(std::size_t max_size, const std::function<void(SetMask)>& visit) const;

  /// Least member of the orbit of an element mask (which must be a union of
  /// atoms).
  SetMask representative(SetMask elements) const;

 private:
  bool is_canonical(std::uint64_t atoms) const;
  std::uint64_t image(std::size_t phi, std::uint64_t atoms) const;
  std::uint64_t to_atoms(SetMask elements) const;
  SetMask to_elements(std::uint64_t atoms) const;

  std::vector<SetMask> atoms_;
  std::vector<std::size_t> atom_size_;
  std::vector<int> atom_of_element_;
  std::size_t chunks_ = 0;
  // tables_[(phi * chunks_ + chunk) * 256 + byte] = image of those atoms.
  std::vector<std::uint64_t> tables_;
  std::size_t phis_ = 0;
};

/// Walk-count profile of Cay(G, S): for each vertex x, the numbers of walks
/// of lengths 1..4 from the identity to x, hashed as a multiset over x. An
/// isomorphism invariant of Cayley digraphs, cheap enough to pre-bucket
/// large scans.
std::uint64_t walk_profile(const FiniteGroup& g, SetMask s);

/// True iff <S> = G, i.e. Cay(G, S) is weakly connected.
bool generates_group(const FiniteGroup& g, SetMask s);

struct ScanOptions {
  ClaimMode mode = ClaimMode::kDci;
  /// Unset means every size.
  std::optional<std::size_t> max_set_size;
  bool connected_only = false;
  bool exclude_identity = false;
  unsigned workers = 1;
  /// Nonzero: process representatives in a seeded random order (the report
  /// must not change).
  std::uint64_t shuffle_seed = 0;
  /// Scans enumerating more raw connection sets than this are infeasible;
  /// the largest feasible size bound is scanned instead.
  double subset_cap = 16'777'216.0;
};

struct ScanWitness {
  FiniteGroup::ElementSet s;
  FiniteGroup::ElementSet t;
  std::string certificate;
};

/// Representatives of distinct Aut(G)-orbits whose Cayley digraphs are
/// isomorphic.
struct ScanBucket {
  std::string certificate;
  std::vector<FiniteGroup::ElementSet> members;
};

enum class Verdict { kConfirmed, kRefuted, kInfeasible };
std::string to_string(Verdict v);

struct ScanResult {
  Verdict verdict = Verdict::kConfirmed;
  /// "full" or "|S|<=k".
  std::string scope;
  /// Size bound actually scanned (the requested one unless infeasible).
  std::optional<std::size_t> scanned_size;
  std::vector<ScanBucket> flagged;
  std::vector<ScanWitness> witnesses;
  std::uint64_t orbit_representatives = 0;
  std::uint64_t canonized = 0;
  double raw_sets = 0;
};

/// Exhaustive scan: one representative per Aut(G)-orbit, pre-bucketed by
/// walk profile, colliding representatives canonized and grouped by
/// certificate. Any certificate class with two orbits refutes the claim.
/// Every witness is verified (isomorphic digraphs, no automorphism maps S
/// to T) before it is reported.
ScanResult scan_group(const FiniteGroup& g, const ScanOptions& options);

/// Checks a refutation witness; throws InternalError when it fails.
void verify_witness(const FiniteGroup& g, const std::vector<GroupAutomorphism>& autos,
                    const FiniteGroup::ElementSet& s, const FiniteGroup::ElementSet& t);

struct DirectResult {
  bool dci = true;
  /// A set T with Cay(G,T) isomorphic to Cay(G,S) but T not an automorphic
  /// image of S.
  std::optional<FiniteGroup::ElementSet> witness;
  /// Aut(G)-orbits of sets giving digraphs isomorphic to Cay(G,S).
  std::size_t isomorphic_orbits = 0;
};

/// The definition checked directly: enumerate all T with |T| = |S| up to
/// Aut(G), keep the ones whose digraph is isomorphic to Cay(G,S), and count
/// their orbits. Loops and complements are factored out first (both
/// commute with isomorphism and with automorphisms). Orbit representatives
/// and their walk profiles are cached per size, so the oracle is cheap to
/// query repeatedly.
class DciOracle {
 public:
  explicit DciOracle(FiniteGroup g);

  const FiniteGroup& group() const { return g_; }
  DirectResult query(const FiniteGroup::ElementSet& s);

 private:
  void ensure_layer(std::size_t k);

  FiniteGroup g_;
  std::vector<GroupAutomorphism> autos_;
  OrbitEnumerator enumerator_;
  std::size_t generated_ = 0;
  bool any_generated_ = false;
  std::vector<std::vector<SetMask>> layers_;
  std::vector<std::vector<std::uint64_t>> profiles_;
};

DirectResult is_dci_graph_direct(const FiniteGroup& g, const FiniteGroup::ElementSet& s);

}  // namespace dcicheck
