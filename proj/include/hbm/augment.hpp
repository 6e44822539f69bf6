#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hbm/blossom.hpp"
#include "hbm/core.hpp"
#include "hbm/repr.hpp"

// One polynomial augmentation step. A bounded subgraph of the representing
// graph is assembled straight from canonical-position arithmetic: per set
// pair and per edge pair at most two marked edges of each color, the
// canonical partner of every marked blue endpoint (so that only the two
// designated root-B vertices stay unmatched), and all induced edges among
// the retained vertices. An alternating path between the two exposed
// vertices exists in this subgraph exactly when the H-matching can grow.

namespace hbm {

struct AugGraph {
    WorkGraph graph;                    // compact 0-based vertices
    std::vector<ReprVertexRef> origin;  // per compact vertex
    Matching red;                       // canonical repr matching restricted here

    struct EdgeInfo {
        bool red;
        bool twin_pair;  // an E_E edge; flipping it shifts a multiplicity
        int edge_id;     // instance edge for twin pairs, -1 otherwise
    };
    std::unordered_map<std::uint64_t, EdgeInfo> edge_info;  // key (min<<32)|max
    int x1 = -1, x2 = -1;

    const EdgeInfo& info(int u, int v) const;
};

/// Upper bound on the retained vertex count, by construction.
inline std::int64_t aug_vertex_bound(const Instance& instance) {
    return 14 * (static_cast<std::int64_t>(instance.m()) + instance.graph.edge_count()) + 2;
}

/// Builds the augmentation graph for a feasible x; nullopt when the root
/// slack is at most 1, in which case no larger H-matching exists.
std::optional<AugGraph> build_aug(const Instance& instance, const HMatching& x);

/// One augmentation: nullopt means x is already of maximum cardinality,
/// otherwise the result is feasible with cardinality exactly |x| + 1.
std::optional<HMatching> augment_step(const Instance& instance, const HMatching& x);

}  // namespace hbm
