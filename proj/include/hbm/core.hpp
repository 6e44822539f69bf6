#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Instance and solution data model for hierarchical b-matching: a graph,
// a laminar family of vertex sets with degree-sum budgets, per-edge
// multiplicity capacities, and multiplicity vectors over the edges.
//
// Conventions: vertices are 1..n; sets are indexed 1..m with L_i = {i} for
// i <= n and L_m = {1..n} the root. All types are immutable after
// construction and safe to share across threads.

namespace hbm {

using Count = std::int64_t;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Family / instance construction failures.
struct ValidationError : Error {
    using Error::Error;
};
struct OverlapError : ValidationError {
    using ValidationError::ValidationError;
};
struct DuplicateSetError : ValidationError {
    using ValidationError::ValidationError;
};
struct EmptySetError : ValidationError {
    using ValidationError::ValidationError;
};
struct MissingRootError : ValidationError {
    using ValidationError::ValidationError;
};
struct MissingSingletonError : ValidationError {
    using ValidationError::ValidationError;
};

// Resource guards.
struct SizeOverflowError : Error {
    using Error::Error;
};
struct BudgetExceededError : Error {
    using Error::Error;
};

// Contract violations inside the matching pipelines.
struct InfeasibleInputError : Error {
    using Error::Error;
};
struct BadExposureError : Error {
    using Error::Error;
};
struct InconsistentMatchingError : Error {
    using Error::Error;
};
struct InvalidPathError : Error {
    using Error::Error;
};

/// Simple undirected graph on vertices 1..n. Edges are stored as (u,v)
/// with u < v, sorted lexicographically; edge ids are positions in `edges`.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> incident;  // incident[v] = edge ids at v, lex order

    static Graph create(int n, std::vector<std::pair<int, int>> edge_list);

    int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Laminar family over {1..n}, represented as its rooted tree. Sets are
/// indexed 1..m: singletons first (L_i = {i}), then the non-singleton
/// non-root sets in input order, the root last. For n = 1 the singleton
/// is the root and m = 1.
struct LaminarFamily {
    int n = 0;
    int m = 0;
    std::vector<std::vector<int>> sets;      // 1-based; members sorted
    std::vector<int> parent;                 // 1-based; parent[root] = 0
    std::vector<std::vector<int>> children;  // 1-based; ascending indices
    std::vector<int> preorder;               // root first, children ascending
    std::vector<int> postorder;              // children ascending, root last

    int root() const { return m; }
    bool is_singleton(int k) const { return k <= n; }
    bool is_root(int k) const { return k == m; }
};

/// Builds the laminar tree from a list of vertex subsets. When
/// `insert_defaults` is set, missing singletons are added and a missing
/// root {1..n} is added; otherwise their absence is an error.
LaminarFamily validate_family(const std::vector<std::vector<int>>& input_sets, int n,
                              bool insert_defaults = false);

/// A full problem instance. After `normalize`, bounds satisfy
/// max(children b) <= b_L <= sum(children b) and c_uv <= min(b_u, b_v).
struct Instance {
    Graph graph;
    LaminarFamily family;
    std::vector<Count> b;  // 1-based by set index (size m+1)
    std::vector<Count> c;  // by edge id

    int n() const { return graph.n; }
    int m() const { return family.m; }
};

/// Validates field shapes and positivity; does not normalize.
Instance make_instance(Graph graph, LaminarFamily family, std::vector<Count> b,
                       std::vector<Count> c);

/// Tightens bounds without changing the feasible set: a preorder pass caps
/// each b_L by its parent's bound, a postorder pass caps it by the sum of
/// its children's bounds, and finally each c_uv is capped by min(b_u, b_v).
/// Idempotent.
Instance normalize(Instance instance);

/// Multiplicity vector over the edges of an instance.
struct HMatching {
    std::vector<Count> x;  // by edge id

    static HMatching zero(const Instance& instance) {
        return HMatching{std::vector<Count>(instance.graph.edges.size(), 0)};
    }
};

Count cardinality(const HMatching& matching);

/// d(v) for every vertex, 1-based.
std::vector<Count> vertex_degrees(const Instance& instance, const HMatching& matching);
/// d(L_k) for every set, 1-based; computed bottom-up over the tree.
std::vector<Count> set_degrees(const Instance& instance, const HMatching& matching);

Count degree(const Instance& instance, const HMatching& matching, int set_index);
Count slack_set(const Instance& instance, const HMatching& matching, int set_index);
Count slack_edge(const Instance& instance, const HMatching& matching, int edge_id);

/// One bound violation; violations are data, not errors.
struct Violation {
    enum class Kind { EdgeCapacity, SetBound };
    Kind kind;
    int index;     // edge id or set index
    Count amount;  // x_e or d(L)
    Count bound;   // c_e or b_L

    std::string describe(const Instance& instance) const;
};

std::vector<Violation> check_feasible(const Instance& instance, const HMatching& matching);

inline bool is_feasible(const Instance& instance, const HMatching& matching) {
    return check_feasible(instance, matching).empty();
}

}  // namespace hbm
