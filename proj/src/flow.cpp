#include "hbm/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>

namespace hbm {

FlowNetwork build_network(const Instance& inst) {
    FlowNetwork net;
    net.num_sets = inst.m();
    net.num_nodes = 2 * inst.m() + 2;
    net.source = 2 * inst.m();
    net.sink = 2 * inst.m() + 1;

    auto add_pair = [&net](FlowNetwork::Arc a, FlowNetwork::Arc b) {
        a.mirror = static_cast<int>(net.arcs.size()) + 1;
        b.mirror = static_cast<int>(net.arcs.size());
        net.arcs.push_back(a);
        net.arcs.push_back(b);
    };

    for (int k = 1; k < inst.m(); ++k) {
        int parent = inst.family.parent[k];
        add_pair({net.plain_node(parent), net.plain_node(k), inst.b[k],
                  FlowNetwork::ArcKind::TreeDown, k, 0, -1},
                 {net.primed_node(k), net.primed_node(parent), inst.b[k],
                  FlowNetwork::ArcKind::TreeUp, k, 0, -1});
    }
    add_pair({net.source, net.plain_node(inst.m()), inst.b[inst.m()],
              FlowNetwork::ArcKind::SourceRoot, inst.m(), 0, -1},
             {net.primed_node(inst.m()), net.sink, inst.b[inst.m()],
              FlowNetwork::ArcKind::RootSink, inst.m(), 0, -1});

    net.edge_arc.assign(2 * inst.graph.edges.size(), -1);
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        auto [u, v] = inst.graph.edges[e];
        net.edge_arc[2 * e] = static_cast<int>(net.arcs.size());
        net.edge_arc[2 * e + 1] = static_cast<int>(net.arcs.size()) + 1;
        add_pair({net.plain_node(u), net.primed_node(v), inst.c[e],
                  FlowNetwork::ArcKind::EdgeCross, e, 0, -1},
                 {net.plain_node(v), net.primed_node(u), inst.c[e],
                  FlowNetwork::ArcKind::EdgeCross, e, 1, -1});
    }
    return net;
}

namespace {

// Dinic on the residual graph; arc 2i is network arc i, arc 2i+1 its reverse.
class Dinic {
  public:
    Dinic(int n, int source, int sink) : n(n), source(source), sink(sink), head(n, -1) {}

    void add_arc(int from, int to, Count cap) {
        arc_to.push_back(to);
        arc_cap.push_back(cap);
        arc_next.push_back(head[from]);
        head[from] = static_cast<int>(arc_to.size()) - 1;
        arc_to.push_back(from);
        arc_cap.push_back(0);
        arc_next.push_back(head[to]);
        head[to] = static_cast<int>(arc_to.size()) - 1;
    }

    Count run() {
        Count total = 0;
        while (bfs()) {
            iter = head;
            while (Count pushed = dfs(source, std::numeric_limits<Count>::max())) total += pushed;
        }
        return total;
    }

    Count flow_on(int arc_index) const { return arc_cap[2 * arc_index + 1]; }

  private:
    bool bfs() {
        level.assign(n, -1);
        level[source] = 0;
        std::deque<int> queue{source};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int a = head[v]; a != -1; a = arc_next[a]) {
                if (arc_cap[a] > 0 && level[arc_to[a]] == -1) {
                    level[arc_to[a]] = level[v] + 1;
                    queue.push_back(arc_to[a]);
                }
            }
        }
        return level[sink] != -1;
    }

    Count dfs(int v, Count limit) {
        if (v == sink) return limit;
        for (int& a = iter[v]; a != -1; a = arc_next[a]) {
            int to = arc_to[a];
            if (arc_cap[a] <= 0 || level[to] != level[v] + 1) continue;
            Count pushed = dfs(to, std::min(limit, arc_cap[a]));
            if (pushed > 0) {
                arc_cap[a] -= pushed;
                arc_cap[a ^ 1] += pushed;
                return pushed;
            }
        }
        level[v] = -1;
        return 0;
    }

    int n, source, sink;
    std::vector<int> head, arc_to, arc_next;
    std::vector<Count> arc_cap;
    std::vector<int> level, iter;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
    Dinic dinic(net.num_nodes, net.source, net.sink);
    for (const auto& arc : net.arcs) dinic.add_arc(arc.from, arc.to, arc.capacity);
    FlowResult result;
    result.value = dinic.run();
    result.arc_flow.resize(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        result.arc_flow[i] = dinic.flow_on(static_cast<int>(i));
    return result;
}

HalfIntegralHMatching symmetrize(const FlowNetwork& net, const FlowResult& flow) {
    HalfIntegralHMatching half;
    half.x2.assign(net.edge_arc.size() / 2, 0);
    for (std::size_t e = 0; e < half.x2.size(); ++e) {
        int a = net.edge_arc[2 * e];
        half.x2[e] = flow.arc_flow[a] + flow.arc_flow[net.arcs[a].mirror];
    }
    return half;
}

std::vector<Violation> check_half_integral(const Instance& inst,
                                           const HalfIntegralHMatching& half) {
    std::vector<Violation> out;
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        if (half.x2[e] > 2 * inst.c[e])
            out.push_back({Violation::Kind::EdgeCapacity, e, half.x2[e], 2 * inst.c[e]});
        if (half.x2[e] < 0) throw InfeasibleInputError("negative doubled multiplicity");
    }
    HMatching doubled{half.x2};
    auto deg = set_degrees(inst, doubled);
    for (int k = 1; k <= inst.m(); ++k) {
        if (deg[k] > 2 * inst.b[k])
            out.push_back({Violation::Kind::SetBound, k, deg[k], 2 * inst.b[k]});
    }
    return out;
}

namespace {

// The odd-multiplicity subgraph during rounding, with block analysis.
struct OddSubgraph {
    const Instance& inst;
    std::vector<int> h_edges;                             // instance edge ids with odd x2
    std::vector<std::vector<std::pair<int, int>>> adj;    // vertex -> (neighbor, h index)

    OddSubgraph(const Instance& inst, const std::vector<Count>& x2) : inst(inst) {
        adj.assign(inst.n() + 1, {});
        for (int e = 0; e < inst.graph.edge_count(); ++e) {
            if (x2[e] % 2 == 0) continue;
            int h = static_cast<int>(h_edges.size());
            h_edges.push_back(e);
            auto [u, v] = inst.graph.edges[e];
            adj[u].emplace_back(v, h);
            adj[v].emplace_back(u, h);
        }
        for (auto& list : adj) std::sort(list.begin(), list.end());
    }

    // Biconnected components as lists of h-edge indices, in DFS discovery
    // order from ascending roots.
    std::vector<std::vector<int>> blocks() const {
        const int n = inst.n();
        std::vector<int> disc(n + 1, -1), low(n + 1, 0);
        std::vector<std::vector<int>> out;
        std::vector<int> edge_stack;
        int timer = 0;

        struct Frame {
            int v;
            int parent_h;  // tree edge into v, -1 at roots
            std::size_t next;
        };
        std::vector<Frame> stack;
        for (int root = 1; root <= n; ++root) {
            if (disc[root] != -1 || adj[root].empty()) continue;
            stack.push_back({root, -1, 0});
            disc[root] = low[root] = timer++;
            while (!stack.empty()) {
                Frame& frame = stack.back();
                int v = frame.v;
                if (frame.next < adj[v].size()) {
                    auto [to, h] = adj[v][frame.next++];
                    if (h == frame.parent_h) continue;
                    if (disc[to] == -1) {
                        edge_stack.push_back(h);
                        disc[to] = low[to] = timer++;
                        stack.push_back({to, h, 0});
                    } else if (disc[to] < disc[v]) {
                        edge_stack.push_back(h);
                        low[v] = std::min(low[v], disc[to]);
                    }
                } else {
                    int tree_h = frame.parent_h;
                    stack.pop_back();
                    if (stack.empty()) break;
                    int parent = stack.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                    if (low[v] >= disc[parent]) {
                        // v's subtree closes a block: pop edges up to and
                        // including the tree edge parent-v.
                        std::vector<int> block;
                        while (true) {
                            int h = edge_stack.back();
                            edge_stack.pop_back();
                            block.push_back(h);
                            if (h == tree_h) break;
                        }
                        out.push_back(std::move(block));
                    }
                }
            }
        }
        return out;
    }
};

// A cycle as a vertex sequence v0..v_{l-1} plus the instance edge ids of
// (v_i, v_{i+1 mod l}). Normalized: v0 is the lowest vertex, v1 its
// lower-indexed cycle neighbor.
struct Cycle {
    std::vector<int> vertices;
    std::vector<int> edge_ids;

    std::size_t length() const { return vertices.size(); }
};

Cycle normalize_cycle(std::vector<int> verts, const Instance& inst) {
    auto lowest = std::min_element(verts.begin(), verts.end());
    std::rotate(verts.begin(), lowest, verts.end());
    if (verts.back() < verts[1]) {  // flip direction toward the smaller neighbor
        std::reverse(verts.begin() + 1, verts.end());
    }
    Cycle cycle;
    cycle.vertices = std::move(verts);
    cycle.edge_ids.reserve(cycle.vertices.size());
    for (std::size_t i = 0; i < cycle.vertices.size(); ++i) {
        int a = cycle.vertices[i];
        int b = cycle.vertices[(i + 1) % cycle.vertices.size()];
        if (a > b) std::swap(a, b);
        auto it = std::lower_bound(inst.graph.edges.begin(), inst.graph.edges.end(),
                                   std::make_pair(a, b));
        cycle.edge_ids.push_back(static_cast<int>(it - inst.graph.edges.begin()));
    }
    return cycle;
}

// Walks a 2-regular block (a pure cycle) from its lowest vertex.
std::vector<int> walk_pure_cycle(const OddSubgraph& h, const std::vector<int>& block) {
    std::vector<int> verts;
    int start = std::numeric_limits<int>::max();
    std::vector<char> in_block(h.h_edges.size(), false);
    for (int hid : block) {
        in_block[hid] = true;
        auto [a, b] = h.inst.graph.edges[h.h_edges[hid]];
        start = std::min({start, a, b});
    }
    int prev = -1, cur = start;
    do {
        verts.push_back(cur);
        for (auto [to, hid] : h.adj[cur]) {
            if (!in_block[hid] || to == prev) continue;
            prev = cur;
            cur = to;
            break;
        }
    } while (cur != start);
    return verts;
}

// Even cycle inside a block with more edges than vertices: take a DFS
// fundamental cycle; if odd, attach the first ear and keep the even
// combination of the ear with one of the two arcs.
std::optional<std::vector<int>> even_cycle_in_block(const OddSubgraph& h,
                                                    const std::vector<int>& block) {
    std::vector<int> block_verts;
    std::vector<char> in_block(h.h_edges.size(), false);
    for (int hid : block) {
        in_block[hid] = true;
        auto [a, b] = h.inst.graph.edges[h.h_edges[hid]];
        block_verts.push_back(a);
        block_verts.push_back(b);
    }
    std::sort(block_verts.begin(), block_verts.end());
    block_verts.erase(std::unique(block_verts.begin(), block_verts.end()), block_verts.end());

    if (block.size() == block_verts.size()) {  // pure cycle
        if (block.size() % 2 != 0) return std::nullopt;
        return walk_pure_cycle(h, block);
    }

    // Fundamental cycle from an iterative DFS rooted at the lowest vertex.
    const int n = h.inst.n();
    std::vector<int> parent(n + 1, 0), depth(n + 1, -1);
    std::vector<int> order;
    std::vector<std::pair<int, int>> back_edge;  // first back edge (v, ancestor)
    {
        std::vector<std::pair<int, std::size_t>> stack{{block_verts[0], 0}};
        depth[block_verts[0]] = 0;
        while (!stack.empty() && back_edge.empty()) {
            auto& [v, next] = stack.back();
            if (next >= h.adj[v].size()) {
                stack.pop_back();
                continue;
            }
            auto [to, hid] = h.adj[v][next++];
            if (!in_block[hid] || to == parent[v]) continue;
            if (depth[to] == -1) {
                parent[to] = v;
                depth[to] = depth[v] + 1;
                stack.emplace_back(to, 0);
            } else if (depth[to] < depth[v]) {
                back_edge.emplace_back(v, to);
            }
        }
    }
    auto [cv, cu] = back_edge.front();
    std::vector<int> cyc;
    for (int w = cv; w != cu; w = parent[w]) cyc.push_back(w);
    cyc.push_back(cu);
    if (cyc.size() % 2 == 0) return cyc;

    // Odd fundamental cycle: find an ear between two distinct cycle
    // vertices, internally disjoint from the cycle.
    std::vector<char> on_cycle(n + 1, false);
    for (int w : cyc) on_cycle[w] = true;
    std::vector<char> cycle_edge(h.h_edges.size(), false);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
        for (auto [to, hid] : h.adj[a])
            if (to == b && in_block[hid]) cycle_edge[hid] = true;
    }

    std::vector<int> ear;  // vertex sequence from one cycle vertex to another
    for (int x : cyc) {
        for (auto [y, hid] : h.adj[x]) {
            if (!in_block[hid] || cycle_edge[hid]) continue;
            if (on_cycle[y]) {
                ear = {x, y};  // chord
                break;
            }
            // Grow a path from y through non-cycle vertices back to the cycle.
            std::vector<int> bfs_parent(n + 1, -1);
            std::deque<int> queue{y};
            bfs_parent[y] = y;
            int hit = -1, hit_from = -1;
            while (!queue.empty() && hit == -1) {
                int w = queue.front();
                queue.pop_front();
                for (auto [z, hid2] : h.adj[w]) {
                    if (!in_block[hid2]) continue;
                    if (on_cycle[z]) {
                        if (z == x) continue;  // ear endpoints must differ
                        hit = z;
                        hit_from = w;
                        break;
                    }
                    if (bfs_parent[z] == -1) {
                        bfs_parent[z] = w;
                        queue.push_back(z);
                    }
                }
            }
            if (hit != -1) {
                ear.push_back(x);
                std::vector<int> tail;
                for (int w = hit_from; w != y; w = bfs_parent[w]) tail.push_back(w);
                tail.push_back(y);
                std::reverse(tail.begin(), tail.end());
                for (int w : tail) ear.push_back(w);
                ear.push_back(hit);
                break;
            }
        }
        if (!ear.empty()) break;
    }
    if (ear.empty()) throw Error("block with extra edges has no ear");

    // Split the odd cycle at the ear's endpoints and keep the combination
    // with even total length (the two arcs have different parities).
    int x = ear.front(), z = ear.back();
    auto pos = [&](int w) {
        return static_cast<std::size_t>(std::find(cyc.begin(), cyc.end(), w) - cyc.begin());
    };
    std::size_t px = pos(x), pz = pos(z);
    std::vector<int> arc1, arc2;  // both run x..z along the cycle
    for (std::size_t i = px;; i = (i + 1) % cyc.size()) {
        arc1.push_back(cyc[i]);
        if (i == pz) break;
    }
    for (std::size_t i = px;; i = (i + cyc.size() - 1) % cyc.size()) {
        arc2.push_back(cyc[i]);
        if (i == pz) break;
    }
    const std::vector<int>& arc =
        ((ear.size() - 1) + (arc1.size() - 1)) % 2 == 0 ? arc1 : arc2;
    std::vector<int> cycle_verts = ear;  // x .. z
    for (std::size_t i = arc.size() - 1; i-- > 1;) cycle_verts.push_back(arc[i]);
    return cycle_verts;
}

}  // namespace

HMatching round_half_integral(const Instance& inst, HalfIntegralHMatching half) {
    if (!check_half_integral(inst, half).empty())
        throw InfeasibleInputError("half-integral input violates doubled bounds");
    auto& x2 = half.x2;

    auto apply = [&x2](const Cycle& cycle, bool plus_on_even_offsets) {
        for (std::size_t i = 0; i < cycle.edge_ids.size(); ++i) {
            bool plus = (i % 2 == 0) == plus_on_even_offsets;
            x2[cycle.edge_ids[i]] += plus ? 1 : -1;
        }
    };

    // Phase 1: cancel even cycles at no cost.
    while (true) {
        OddSubgraph h(inst, x2);
        std::optional<Cycle> even;
        for (const auto& block : h.blocks()) {
            if (block.size() < 2) continue;
            if (auto verts = even_cycle_in_block(h, block)) {
                even = normalize_cycle(std::move(*verts), inst);
                break;
            }
        }
        if (!even) break;
        apply(*even, /*plus_on_even_offsets=*/true);
    }

    // Phase 2: every remaining block is an edge or an odd cycle. Around
    // each odd cycle, +1 on the matching that avoids the lowest vertex.
    {
        OddSubgraph h(inst, x2);
        for (const auto& block : h.blocks()) {
            if (block.size() < 3) continue;
            Cycle cycle = normalize_cycle(walk_pure_cycle(h, block), inst);
            apply(cycle, /*plus_on_even_offsets=*/false);
        }
    }

    // Phase 3: the rest is a forest; drop every leftover odd edge.
    HMatching x = HMatching::zero(inst);
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        if (x2[e] % 2 != 0) x2[e] -= 1;
        x.x[e] = x2[e] / 2;
    }
    return x;
}

HMatching near_optimal(const Instance& inst) {
    FlowNetwork net = build_network(inst);
    FlowResult flow = max_flow(net);
    return round_half_integral(inst, symmetrize(net, flow));
}

}  // namespace hbm
