#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hbm/blossom.hpp"
#include "hbm/core.hpp"

// The representing-graph reduction: an instance expands into groups of
// b_k vertices per set (a B and a T row) and c_e vertices per edge
// orientation, wired so that ordinary matchings exposing only root-B
// vertices encode H-matchings.
//
// Group layout. For set k: L_{k,B} has b_k vertices, and for k != root,
// L_{k,T} has b_k vertices. For edge e = ij (i < j): side 0 is E_{i,j}
// (attached to L_{i,B}) and side 1 is E_{j,i}, each with c_e vertices.
// Positions are 1-based within a group.
//
// Edge classes: IN pairs L_{k,B}[q] with L_{k,T}[q]; UP joins L_{k,T} to
// parent's B group completely, and each edge side to its endpoint's B
// group completely; E_E pairs the two sides of an edge position-wise.

namespace hbm {

struct ReprVertexRef {
    enum class Kind : std::uint8_t { SetB, SetT, EdgeSide };
    Kind kind;
    int index;  // set index, or edge id for EdgeSide
    int side;   // EdgeSide only: 0 = lower endpoint's side, 1 = higher
    Count pos;  // 1-based

    static ReprVertexRef set_b(int k, Count pos) { return {Kind::SetB, k, 0, pos}; }
    static ReprVertexRef set_t(int k, Count pos) { return {Kind::SetT, k, 0, pos}; }
    static ReprVertexRef edge_side(int e, int side, Count pos) {
        return {Kind::EdgeSide, e, side, pos};
    }

    friend bool operator==(const ReprVertexRef&, const ReprVertexRef&) = default;
};

struct ReprVertexRefHash {
    std::size_t operator()(const ReprVertexRef& r) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(r.kind));
        mix(static_cast<std::uint64_t>(r.index));
        mix(static_cast<std::uint64_t>(r.side));
        mix(static_cast<std::uint64_t>(r.pos));
        return static_cast<std::size_t>(h);
    }
};

/// Degrees, slacks and block offsets of the canonical representing
/// matching for a given multiplicity vector. Everything the reduction
/// needs to answer "who is position q matched to" in O(log) time.
struct CanonicalState {
    std::vector<Count> x;                 // by edge id
    std::vector<Count> vertex_deg;        // 1-based, d(v)
    std::vector<Count> set_deg;           // 1-based, d(L_k)
    std::vector<Count> edge_block_start;  // [2e+side]: first position of e's block in its B group
    std::vector<Count> child_block_start; // per set k != root: first position of k's block in parent B
};

CanonicalState canonical_state(const Instance& instance, const HMatching& x);

/// Partner of a repr vertex under the canonical representing matching;
/// nullopt for the exposed root-B tail.
std::optional<ReprVertexRef> canonical_partner(const Instance& instance,
                                               const CanonicalState& state,
                                               const ReprVertexRef& ref);

inline constexpr std::int64_t kDefaultReprVertexCap = 2'000'000;

/// Materialized representing graph; vertex ids are 0-based and contiguous
/// per group.
struct ReprGraph {
    std::vector<std::int64_t> base_set_b;  // 1-based by set
    std::vector<std::int64_t> base_set_t;  // 1-based by set (root unused)
    std::vector<std::int64_t> base_edge;   // [2e+side]
    std::int64_t num_vertices = 0;
    WorkGraph graph;

    int vertex_id(const ReprVertexRef& ref) const;
    ReprVertexRef vertex_ref(const Instance& instance, int id) const;
};

/// Throws SizeOverflowError when the expansion exceeds `vertex_cap`.
ReprGraph build_repr(const Instance& instance, std::int64_t vertex_cap = kDefaultReprVertexCap);

using ReprMatching = Matching;  // over repr vertex ids; exposed set must stay in root-B

/// The canonical representing matching of a feasible x, materialized.
ReprMatching repr_matching(const Instance& instance, const ReprGraph& repr, const HMatching& x);

/// Reads the H-matching back out of any matching that exposes only root-B
/// vertices: x_e counts edge-side vertices matched into their B group
/// rather than to their twin.
HMatching extract_hmatching(const Instance& instance, const ReprGraph& repr,
                            const ReprMatching& matching);

/// Full pseudo-polynomial pipeline: canonical matching of the empty
/// H-matching, blossom augmentation to a maximum matching, extraction.
HMatching solve_pseudo(const Instance& instance,
                       std::int64_t vertex_cap = kDefaultReprVertexCap);

}  // namespace hbm
