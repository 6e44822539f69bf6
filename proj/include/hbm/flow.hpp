#pragma once

#include <vector>

#include "hbm/core.hpp"

// Flow-based near-optimal stage: an s-t network whose integral max flow
// upper-bounds twice the optimum, symmetrized into a half-integral
// solution (stored as doubled integers, never floats) and rounded to an
// integral H-matching with bounded loss.

namespace hbm {

struct FlowNetwork {
    enum class ArcKind { TreeDown, TreeUp, SourceRoot, RootSink, EdgeCross };
    struct Arc {
        int from, to;
        Count capacity;
        ArcKind kind;
        int ref;     // set index for tree arcs, edge id for EdgeCross
        int side;    // EdgeCross: 0 = low->high', 1 = high->low'
        int mirror;  // index of the symmetric twin arc
    };

    int num_sets = 0;  // m
    int num_nodes = 0;
    int source = 0, sink = 0;
    std::vector<Arc> arcs;
    std::vector<int> edge_arc;  // [2e+side] -> arc index

    int plain_node(int k) const { return k - 1; }
    int primed_node(int k) const { return num_sets + k - 1; }
};

/// Nodes: one plain and one primed copy of every set, plus s and t. Down
/// arcs follow the laminar tree on the plain side, up arcs mirror them on
/// the primed side, and each graph edge contributes one crossing arc per
/// direction with capacity c_e.
FlowNetwork build_network(const Instance& instance);

struct FlowResult {
    Count value = 0;
    std::vector<Count> arc_flow;  // by arc index
};

/// Integral maximum s-t flow (Dinic). Deterministic for a fixed network.
FlowResult max_flow(const FlowNetwork& network);

/// Doubled multiplicities: x2_e represents 2 * x_e.
struct HalfIntegralHMatching {
    std::vector<Count> x2;  // by edge id
};

/// Averages every arc with its mirror, in doubled units, and reads the
/// per-edge doubled multiplicities off the crossing arcs. Value and
/// feasibility are preserved.
HalfIntegralHMatching symmetrize(const FlowNetwork& network, const FlowResult& flow);

/// Violations of the doubled-unit bounds (x2_e <= 2 c_e, d_x2(L) <= 2 b_L).
std::vector<Violation> check_half_integral(const Instance& instance,
                                           const HalfIntegralHMatching& half);

/// Rounds a feasible half-integral solution to an integral H-matching.
/// Even cycles of the odd-multiplicity subgraph are alternated away at no
/// cost, odd cycles cost half a unit each, leftover forest edges half a
/// unit per edge. Set degrees never increase; the total doubled loss is
/// at most 2 * ceil(2n/3).
HMatching round_half_integral(const Instance& instance, HalfIntegralHMatching half);

/// build_network + max_flow + symmetrize + round_half_integral.
HMatching near_optimal(const Instance& instance);

}  // namespace hbm
