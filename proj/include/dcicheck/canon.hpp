#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcicheck/permutation.hpp"

namespace dcicheck {

/// Vertex- and arc-coloured digraph on at most 64 vertices given as a dense
/// matrix. Arc colour 0 means "no arc"; the diagonal holds loop colours.
struct ColoredGraph {
  std::size_t n = 0;
  std::vector<std::uint32_t> vertex_color;
  std::vector<std::uint32_t> arc;

  explicit ColoredGraph(std::size_t vertices = 0);
  std::uint32_t at(std::size_t u, std::size_t v) const { return arc[u * n + v]; }
  std::uint32_t& at(std::size_t u, std::size_t v) { return arc[u * n + v]; }
  bool is_automorphism(const Permutation& g) const;
};

enum class CanonMode { kCanonical, kAutomorphismsOnly };

struct CanonResult {
  /// Relabelled graph under the canonical labelling (empty in
  /// automorphisms-only mode).
  std::string certificate;
  /// labeling[v] is the canonical index of vertex v.
  std::vector<Point> labeling;
  /// Generators of the automorphism group (the hints included).
  std::vector<Permutation> automorphisms;
  std::uint64_t nodes = 0;
};

/// Refinement-and-individualization search. Children of a node are pruned
/// by the orbits of the automorphisms found so far that fix the current
/// path; nodes whose trace departs from the first path and falls below the
/// best path are cut. `hints` are known automorphisms (checked) used for
/// pruning from the start. Throws CapExceeded beyond 64 vertices or when
/// the node budget runs out.
CanonResult canonize(const ColoredGraph& g, CanonMode mode, const std::vector<Permutation>& hints = {},
                     std::uint64_t node_budget = 20'000'000);

std::string to_hex(const std::string& bytes);

}  // namespace dcicheck
