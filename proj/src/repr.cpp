#include "hbm/repr.hpp"

#include <algorithm>
#include <string>

namespace hbm {

namespace {

int edge_side_of(const Instance& inst, int e, int vertex) {
    return inst.graph.edges[e].first == vertex ? 0 : 1;
}

int side_endpoint(const Instance& inst, int e, int side) {
    return side == 0 ? inst.graph.edges[e].first : inst.graph.edges[e].second;
}

}  // namespace

CanonicalState canonical_state(const Instance& inst, const HMatching& x) {
    CanonicalState st;
    st.x = x.x;
    st.vertex_deg = vertex_degrees(inst, x);
    st.set_deg = set_degrees(inst, x);

    st.edge_block_start.assign(2 * inst.graph.edges.size(), 0);
    for (int v = 1; v <= inst.n(); ++v) {
        Count fill = 1;
        for (int e : inst.graph.incident[v]) {
            st.edge_block_start[2 * e + edge_side_of(inst, e, v)] = fill;
            fill += x.x[e];
        }
    }
    st.child_block_start.assign(inst.m() + 1, 0);
    for (int k = 1; k <= inst.m(); ++k) {
        Count fill = 1;
        for (int child : inst.family.children[k]) {
            st.child_block_start[child] = fill;
            fill += st.set_deg[child];
        }
    }
    return st;
}

std::optional<ReprVertexRef> canonical_partner(const Instance& inst, const CanonicalState& st,
                                               const ReprVertexRef& ref) {
    const auto& fam = inst.family;
    switch (ref.kind) {
        case ReprVertexRef::Kind::SetB: {
            int k = ref.index;
            if (ref.pos > st.set_deg[k]) {
                if (fam.is_root(k)) return std::nullopt;  // exposed tail
                return ReprVertexRef::set_t(k, ref.pos);
            }
            if (fam.is_singleton(k)) {
                // Find the incident edge whose block holds this position.
                const auto& inc = inst.graph.incident[k];
                int lo = 0, hi = static_cast<int>(inc.size()) - 1;
                while (lo < hi) {
                    int mid = (lo + hi + 1) / 2;
                    int e = inc[mid];
                    if (st.edge_block_start[2 * e + edge_side_of(inst, e, k)] <= ref.pos)
                        lo = mid;
                    else
                        hi = mid - 1;
                }
                int e = inc[lo];
                int side = edge_side_of(inst, e, k);
                return ReprVertexRef::edge_side(e, side,
                                                ref.pos - st.edge_block_start[2 * e + side] + 1);
            }
            // Internal set: position lies in some child's block.
            const auto& kids = fam.children[k];
            int lo = 0, hi = static_cast<int>(kids.size()) - 1;
            while (lo < hi) {
                int mid = (lo + hi + 1) / 2;
                if (st.child_block_start[kids[mid]] <= ref.pos)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            int child = kids[lo];
            return ReprVertexRef::set_t(child, ref.pos - st.child_block_start[child] + 1);
        }
        case ReprVertexRef::Kind::SetT: {
            int k = ref.index;
            if (ref.pos <= st.set_deg[k])
                return ReprVertexRef::set_b(fam.parent[k],
                                            st.child_block_start[k] + ref.pos - 1);
            return ReprVertexRef::set_b(k, ref.pos);
        }
        case ReprVertexRef::Kind::EdgeSide: {
            int e = ref.index;
            if (ref.pos <= st.x[e])
                return ReprVertexRef::set_b(
                    side_endpoint(inst, e, ref.side),
                    st.edge_block_start[2 * e + ref.side] + ref.pos - 1);
            return ReprVertexRef::edge_side(e, 1 - ref.side, ref.pos);
        }
    }
    return std::nullopt;  // unreachable
}

int ReprGraph::vertex_id(const ReprVertexRef& ref) const {
    switch (ref.kind) {
        case ReprVertexRef::Kind::SetB:
            return static_cast<int>(base_set_b[ref.index] + ref.pos - 1);
        case ReprVertexRef::Kind::SetT:
            return static_cast<int>(base_set_t[ref.index] + ref.pos - 1);
        case ReprVertexRef::Kind::EdgeSide:
            return static_cast<int>(base_edge[2 * ref.index + ref.side] + ref.pos - 1);
    }
    return -1;
}

ReprVertexRef ReprGraph::vertex_ref(const Instance& inst, int id) const {
    for (int k = 1; k <= inst.m(); ++k) {
        if (id >= base_set_b[k] && id < base_set_b[k] + inst.b[k])
            return ReprVertexRef::set_b(k, id - base_set_b[k] + 1);
        if (!inst.family.is_root(k) && id >= base_set_t[k] && id < base_set_t[k] + inst.b[k])
            return ReprVertexRef::set_t(k, id - base_set_t[k] + 1);
    }
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        for (int side = 0; side < 2; ++side) {
            if (id >= base_edge[2 * e + side] && id < base_edge[2 * e + side] + inst.c[e])
                return ReprVertexRef::edge_side(e, side, id - base_edge[2 * e + side] + 1);
        }
    }
    throw Error("repr vertex id out of range: " + std::to_string(id));
}

ReprGraph build_repr(const Instance& inst, std::int64_t vertex_cap) {
    ReprGraph repr;
    std::int64_t next = 0;
    repr.base_set_b.assign(inst.m() + 1, 0);
    repr.base_set_t.assign(inst.m() + 1, 0);
    repr.base_edge.assign(2 * inst.graph.edges.size(), 0);
    for (int k = 1; k <= inst.m(); ++k) {
        repr.base_set_b[k] = next;
        next += inst.b[k];
        if (!inst.family.is_root(k)) {
            repr.base_set_t[k] = next;
            next += inst.b[k];
        }
    }
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        repr.base_edge[2 * e] = next;
        next += inst.c[e];
        repr.base_edge[2 * e + 1] = next;
        next += inst.c[e];
    }
    repr.num_vertices = next;
    if (next > vertex_cap)
        throw SizeOverflowError("representing graph needs " + std::to_string(next) +
                                " vertices, cap is " + std::to_string(vertex_cap));

    std::vector<std::pair<int, int>> edges;
    // IN: position-paired perfect matchings inside every non-root set.
    for (int k = 1; k <= inst.m(); ++k) {
        if (inst.family.is_root(k)) continue;
        for (Count q = 1; q <= inst.b[k]; ++q)
            edges.emplace_back(repr.vertex_id(ReprVertexRef::set_b(k, q)),
                               repr.vertex_id(ReprVertexRef::set_t(k, q)));
    }
    // UP: child T rows complete to the parent's B row.
    for (int k = 1; k <= inst.m(); ++k) {
        if (inst.family.is_root(k)) continue;
        int parent = inst.family.parent[k];
        for (Count q = 1; q <= inst.b[k]; ++q)
            for (Count r = 1; r <= inst.b[parent]; ++r)
                edges.emplace_back(repr.vertex_id(ReprVertexRef::set_t(k, q)),
                                   repr.vertex_id(ReprVertexRef::set_b(parent, r)));
    }
    // UP: edge sides complete to their endpoint's B row; E_E twin pairs.
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        for (int side = 0; side < 2; ++side) {
            int endpoint = side_endpoint(inst, e, side);
            for (Count q = 1; q <= inst.c[e]; ++q)
                for (Count r = 1; r <= inst.b[endpoint]; ++r)
                    edges.emplace_back(repr.vertex_id(ReprVertexRef::edge_side(e, side, q)),
                                       repr.vertex_id(ReprVertexRef::set_b(endpoint, r)));
        }
        for (Count q = 1; q <= inst.c[e]; ++q)
            edges.emplace_back(repr.vertex_id(ReprVertexRef::edge_side(e, 0, q)),
                               repr.vertex_id(ReprVertexRef::edge_side(e, 1, q)));
    }
    repr.graph = WorkGraph::create(static_cast<int>(next), std::move(edges));
    return repr;
}

ReprMatching repr_matching(const Instance& inst, const ReprGraph& repr, const HMatching& x) {
    if (!is_feasible(inst, x)) throw InfeasibleInputError("repr_matching needs a feasible x");

    Matching matching = Matching::empty(static_cast<int>(repr.num_vertices));
    auto pair_up = [&](int a, int b) {
        matching.partner[a] = b;
        matching.partner[b] = a;
    };

    std::vector<Count> fill(inst.m() + 1, 1);  // next unmatched position per B row

    // Edges in lex order: twin-match the slack tail, hook the first x_e
    // positions of each side into the endpoint's B row.
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        for (Count q = x.x[e] + 1; q <= inst.c[e]; ++q)
            pair_up(repr.vertex_id(ReprVertexRef::edge_side(e, 0, q)),
                    repr.vertex_id(ReprVertexRef::edge_side(e, 1, q)));
        for (int side = 0; side < 2; ++side) {
            int endpoint = side_endpoint(inst, e, side);
            for (Count q = 1; q <= x.x[e]; ++q)
                pair_up(repr.vertex_id(ReprVertexRef::edge_side(e, side, q)),
                        repr.vertex_id(ReprVertexRef::set_b(endpoint, fill[endpoint]++)));
        }
    }

    // Sets in postorder (children ascending): pair the slack tails of the
    // B and T rows, then hook the first d(L) T positions into the parent.
    auto deg = set_degrees(inst, x);
    for (int k : inst.family.postorder) {
        if (inst.family.is_root(k)) continue;
        for (Count q = deg[k] + 1; q <= inst.b[k]; ++q)
            pair_up(repr.vertex_id(ReprVertexRef::set_b(k, q)),
                    repr.vertex_id(ReprVertexRef::set_t(k, q)));
        int parent = inst.family.parent[k];
        for (Count q = 1; q <= deg[k]; ++q)
            pair_up(repr.vertex_id(ReprVertexRef::set_t(k, q)),
                    repr.vertex_id(ReprVertexRef::set_b(parent, fill[parent]++)));
    }
    return matching;
}

HMatching extract_hmatching(const Instance& inst, const ReprGraph& repr,
                            const ReprMatching& matching) {
    const int root = inst.family.root();
    for (int id = 0; id < repr.num_vertices; ++id) {
        if (matching.partner[id] != -1) continue;
        if (id >= repr.base_set_b[root] && id < repr.base_set_b[root] + inst.b[root]) continue;
        throw BadExposureError("exposed repr vertex " + std::to_string(id) +
                               " lies outside the root B row");
    }

    HMatching x = HMatching::zero(inst);
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        int endpoint = side_endpoint(inst, e, 0);
        Count crossed = 0;
        for (Count q = 1; q <= inst.c[e]; ++q) {
            int w = repr.vertex_id(ReprVertexRef::edge_side(e, 0, q));
            int partner = matching.partner[w];
            if (partner == repr.vertex_id(ReprVertexRef::edge_side(e, 1, q))) continue;
            bool in_b_row = partner >= repr.base_set_b[endpoint] &&
                            partner < repr.base_set_b[endpoint] + inst.b[endpoint];
            if (!in_b_row)
                throw InconsistentMatchingError(
                    "edge-side vertex neither twin-matched nor matched into its B row");
            ++crossed;
        }
        x.x[e] = crossed;
    }
    return x;
}

HMatching solve_pseudo(const Instance& inst, std::int64_t vertex_cap) {
    ReprGraph repr = build_repr(inst, vertex_cap);
    ReprMatching seed = repr_matching(inst, repr, HMatching::zero(inst));
    ReprMatching best = max_matching_from_seed(repr.graph, std::move(seed));
    return extract_hmatching(inst, repr, best);
}

}  // namespace hbm
