#include "hbm/augment.hpp"

#include <algorithm>

namespace hbm {

namespace {

std::uint64_t pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

// Retained vertices, deduplicated, with per-group position lists so that
// induced edges can be enumerated group against group.
class Retained {
  public:
    int add(const ReprVertexRef& ref) {
        auto [it, fresh] = ids.try_emplace(ref, static_cast<int>(refs.size()));
        if (fresh) {
            refs.push_back(ref);
            group_of(ref).emplace_back(ref.pos, it->second);
        }
        return it->second;
    }

    int id_of(const ReprVertexRef& ref) const {
        auto it = ids.find(ref);
        return it == ids.end() ? -1 : it->second;
    }

    const std::vector<ReprVertexRef>& all() const { return refs; }

    using Members = std::vector<std::pair<Count, int>>;  // (position, compact id)

    const Members& members(ReprVertexRef::Kind kind, int index, int side) const {
        static const Members none;
        auto it = groups.find(group_key(kind, index, side));
        return it == groups.end() ? none : it->second;
    }

  private:
    static std::uint64_t group_key(ReprVertexRef::Kind kind, int index, int side) {
        return (static_cast<std::uint64_t>(kind) << 62) |
               (static_cast<std::uint64_t>(side) << 61) | static_cast<std::uint32_t>(index);
    }

    Members& group_of(const ReprVertexRef& ref) {
        return groups[group_key(ref.kind, ref.index, ref.side)];
    }

    std::unordered_map<ReprVertexRef, int, ReprVertexRefHash> ids;
    std::unordered_map<std::uint64_t, Members> groups;
    std::vector<ReprVertexRef> refs;
};

}  // namespace

const AugGraph::EdgeInfo& AugGraph::info(int u, int v) const {
    auto it = edge_info.find(pair_key(u, v));
    if (it == edge_info.end()) throw Error("augmentation graph edge lookup failed");
    return it->second;
}

std::optional<AugGraph> build_aug(const Instance& inst, const HMatching& x) {
    if (!is_feasible(inst, x)) throw InfeasibleInputError("build_aug needs a feasible x");
    CanonicalState st = canonical_state(inst, x);
    const int root = inst.family.root();
    if (inst.b[root] - st.set_deg[root] <= 1) return std::nullopt;  // no exposed pair

    Retained keep;
    std::vector<int> blue_endpoints;  // compact ids needing their partner retained

    auto mark_blue = [&](const ReprVertexRef& a, const ReprVertexRef& b) {
        blue_endpoints.push_back(keep.add(a));
        blue_endpoints.push_back(keep.add(b));
    };

    for (int k = 1; k < inst.m(); ++k) {
        Count d = st.set_deg[k], s = inst.b[k] - d;
        for (Count q = 1; q <= std::min<Count>(2, d); ++q)
            mark_blue(ReprVertexRef::set_b(k, q), ReprVertexRef::set_t(k, q));
        for (Count q = inst.b[k]; q > inst.b[k] - std::min<Count>(2, s); --q) {
            keep.add(ReprVertexRef::set_b(k, q));
            keep.add(ReprVertexRef::set_t(k, q));
        }
    }
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        Count xe = st.x[e], s = inst.c[e] - xe;
        for (Count q = 1; q <= std::min<Count>(2, xe); ++q)
            mark_blue(ReprVertexRef::edge_side(e, 0, q), ReprVertexRef::edge_side(e, 1, q));
        for (Count q = inst.c[e]; q > inst.c[e] - std::min<Count>(2, s); --q) {
            keep.add(ReprVertexRef::edge_side(e, 0, q));
            keep.add(ReprVertexRef::edge_side(e, 1, q));
        }
    }

    // Closure: marked blue endpoints are cross-matched; retain their
    // canonical partners so no retained vertex outside {x1,x2} is exposed.
    for (std::size_t i = 0; i < blue_endpoints.size(); ++i) {
        const ReprVertexRef ref = keep.all()[blue_endpoints[i]];
        auto partner = canonical_partner(inst, st, ref);
        if (!partner)
            throw InconsistentMatchingError("marked blue endpoint is exposed");
        keep.add(*partner);
    }

    AugGraph aug;
    aug.x1 = keep.add(ReprVertexRef::set_b(root, st.set_deg[root] + 1));
    aug.x2 = keep.add(ReprVertexRef::set_b(root, st.set_deg[root] + 2));
    aug.origin = keep.all();

    // Induced edges among retained vertices, with colors read off the
    // canonical construction.
    std::vector<std::pair<int, int>> edges;
    auto add_edge = [&](int a, int b, bool red, bool twin, int edge_id) {
        edges.emplace_back(a, b);
        aug.edge_info[pair_key(a, b)] = {red, twin, edge_id};
    };

    using Kind = ReprVertexRef::Kind;
    for (int k = 1; k < inst.m(); ++k) {
        const Count d = st.set_deg[k];
        // IN edges: equal positions of the two rows.
        const auto& b_row = keep.members(Kind::SetB, k, 0);
        for (auto [q, id] : b_row) {
            int t_id = keep.id_of(ReprVertexRef::set_t(k, q));
            if (t_id != -1) add_edge(id, t_id, q > d, false, -1);
        }
        // UP edges: T row complete to the parent's B row.
        const int parent = inst.family.parent[k];
        const auto& t_row = keep.members(Kind::SetT, k, 0);
        const auto& parent_row = keep.members(Kind::SetB, parent, 0);
        for (auto [q, t_id] : t_row) {
            for (auto [r, p_id] : parent_row) {
                bool red = q <= d && r == st.child_block_start[k] + q - 1;
                add_edge(t_id, p_id, red, false, -1);
            }
        }
    }
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        const Count xe = st.x[e];
        const auto& side0 = keep.members(Kind::EdgeSide, e, 0);
        for (auto [q, id] : side0) {
            int twin_id = keep.id_of(ReprVertexRef::edge_side(e, 1, q));
            if (twin_id != -1) add_edge(id, twin_id, q > xe, true, e);
        }
        for (int side = 0; side < 2; ++side) {
            int endpoint = side == 0 ? inst.graph.edges[e].first : inst.graph.edges[e].second;
            const auto& e_row = keep.members(Kind::EdgeSide, e, side);
            const auto& b_row = keep.members(Kind::SetB, endpoint, 0);
            for (auto [q, e_id] : e_row) {
                for (auto [r, b_id] : b_row) {
                    bool red = q <= xe && r == st.edge_block_start[2 * e + side] + q - 1;
                    add_edge(e_id, b_id, red, false, -1);
                }
            }
        }
    }

    aug.graph = WorkGraph::create(static_cast<int>(aug.origin.size()), edges);
    aug.red = Matching::empty(aug.graph.n);
    for (auto [key, info] : aug.edge_info) {
        if (!info.red) continue;
        int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
        aug.red.partner[a] = b;
        aug.red.partner[b] = a;
    }

    // Only the two designated root-B vertices may be exposed.
    for (int v = 0; v < aug.graph.n; ++v) {
        if (aug.red.partner[v] == -1 && v != aug.x1 && v != aug.x2)
            throw InconsistentMatchingError("augmentation graph exposes a non-designated vertex");
    }
    return aug;
}

std::optional<HMatching> augment_step(const Instance& inst, const HMatching& x) {
    auto aug = build_aug(inst, x);
    if (!aug) return std::nullopt;

    auto path = find_augmenting_path(aug->graph, aug->red, {aug->x1, aug->x2});
    if (!path) return std::nullopt;

    HMatching next = x;
    for (std::size_t i = 0; i + 1 < path->size(); ++i) {
        const auto& info = aug->info((*path)[i], (*path)[i + 1]);
        if (!info.twin_pair) continue;
        next.x[info.edge_id] += info.red ? 1 : -1;
    }
    if (cardinality(next) != cardinality(x) + 1 || !is_feasible(inst, next))
        throw InconsistentMatchingError("augmentation produced an invalid H-matching");
    return next;
}

}  // namespace hbm
