#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hbm/core.hpp"

// Maximum-cardinality matching for general graphs (Edmonds blossom
// contraction), with seeded starts and single-augmentation queries.
// Vertices are 0-based here; this module knows nothing about instances.

namespace hbm {

struct WorkGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists

    static WorkGraph create(int n, std::vector<std::pair<int, int>> edge_list);

    bool has_edge(int u, int v) const;
};

struct Matching {
    std::vector<int> partner;  // -1 = exposed

    static Matching empty(int n) { return Matching{std::vector<int>(n, -1)}; }

    Count size() const;
    std::vector<int> exposed() const;
    bool matches(int v) const { return partner[v] != -1; }
};

/// Throws InconsistentMatchingError unless partners are mutual and every
/// matched pair is an edge of the graph.
void validate_matching(const WorkGraph& graph, const Matching& matching);

/// Finds an odd alternating path between two exposed vertices that both lie
/// in `allowed_endpoints`, or nullopt if none exists. The path is returned
/// as its vertex sequence; even-offset edges are unmatched, odd-offset
/// matched.
std::optional<std::vector<int>> find_augmenting_path(const WorkGraph& graph,
                                                     const Matching& matching,
                                                     const std::vector<int>& allowed_endpoints);

/// Augments along `path` (as produced by find_augmenting_path). Throws
/// InvalidPathError unless the path alternates correctly, its endpoints are
/// exposed, and every step is a graph edge.
Matching flip(const WorkGraph& graph, Matching matching, const std::vector<int>& path);

/// Repeatedly augments `seed` until no augmenting path remains. The result
/// is a maximum matching and exposes only a subset of exposed(seed).
Matching max_matching_from_seed(const WorkGraph& graph, Matching seed);

}  // namespace hbm
