#include "hbm/blossom.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace hbm {

WorkGraph WorkGraph::create(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 0) throw ValidationError("negative vertex count");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ValidationError("work graph edge endpoint out of range");
        if (u == v) throw ValidationError("work graph loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw ValidationError("work graph parallel edge");

    WorkGraph g;
    g.n = n;
    g.edges = std::move(edge_list);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& list : g.adj) std::sort(list.begin(), list.end());
    return g;
}

bool WorkGraph::has_edge(int u, int v) const {
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

Count Matching::size() const {
    Count matched = 0;
    for (int v = 0; v < static_cast<int>(partner.size()); ++v)
        if (partner[v] > v) ++matched;
    return matched;
}

std::vector<int> Matching::exposed() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(partner.size()); ++v)
        if (partner[v] == -1) out.push_back(v);
    return out;
}

void validate_matching(const WorkGraph& graph, const Matching& matching) {
    if (static_cast<int>(matching.partner.size()) != graph.n)
        throw InconsistentMatchingError("matching size mismatch");
    for (int v = 0; v < graph.n; ++v) {
        int w = matching.partner[v];
        if (w == -1) continue;
        if (w < 0 || w >= graph.n || matching.partner[w] != v)
            throw InconsistentMatchingError("partners not mutual at vertex " + std::to_string(v));
        if (!graph.has_edge(v, w))
            throw InconsistentMatchingError("matched pair is not an edge: " + std::to_string(v) +
                                            "," + std::to_string(w));
    }
}

namespace {

// Edmonds blossom search with an explicit base[] contraction map,
// breadth-first over outer vertices, lowest-index-first for determinism.
class BlossomSearch {
  public:
    BlossomSearch(const WorkGraph& graph, const Matching& matching,
                  const std::vector<char>& allowed)
        : g(graph), match(matching.partner), allowed(allowed) {}

    // Returns the exposed endpoint of an augmenting path rooted at `root`,
    // or -1. On success the path is readable through parent pointers.
    int search(int root) {
        p.assign(g.n, -1);
        base.resize(g.n);
        std::iota(base.begin(), base.end(), 0);
        outer.assign(g.n, false);
        outer[root] = true;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u : g.adj[v]) {
                if (base[u] == base[v] || match[v] == u) continue;
                if (u == root || (match[u] != -1 && p[match[u]] != -1)) {
                    // u is outer too: an odd cycle closes; contract it.
                    int cur = lowest_common_base(v, u);
                    in_blossom.assign(g.n, false);
                    mark_path(v, cur, u);
                    mark_path(u, cur, v);
                    for (int i = 0; i < g.n; ++i) {
                        if (in_blossom[base[i]]) {
                            base[i] = cur;
                            if (!outer[i]) {
                                outer[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if (p[u] == -1) {
                    p[u] = v;
                    if (match[u] == -1) {
                        if (allowed[u]) return u;  // augmenting path root..u
                        // exposed but not an admissible endpoint: dead end
                    } else {
                        outer[match[u]] = true;
                        queue.push_back(match[u]);
                    }
                }
            }
        }
        return -1;
    }

    // Vertex sequence endpoint -> root, alternating unmatched/matched.
    std::vector<int> extract_path(int endpoint) const {
        std::vector<int> path{endpoint};
        int v = p[endpoint];
        while (true) {
            path.push_back(v);
            if (match[v] == -1) break;  // reached the root
            path.push_back(match[v]);
            v = p[match[v]];
        }
        return path;
    }

  private:
    int lowest_common_base(int a, int b) {
        seen.assign(g.n, false);
        int v = a;
        while (true) {
            v = base[v];
            seen[v] = true;
            if (match[v] == -1) break;
            v = p[match[v]];
        }
        int w = b;
        while (true) {
            w = base[w];
            if (seen[w]) return w;
            w = p[match[w]];
        }
    }

    void mark_path(int v, int stop_base, int child) {
        while (base[v] != stop_base) {
            in_blossom[base[v]] = true;
            in_blossom[base[match[v]]] = true;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    }

    const WorkGraph& g;
    std::vector<int> match;
    const std::vector<char>& allowed;
    std::vector<int> p;
    std::vector<int> base;
    std::vector<char> outer, in_blossom, seen;
};

std::vector<char> endpoint_mask(int n, const std::vector<int>& allowed_endpoints) {
    std::vector<char> mask(n, false);
    for (int v : allowed_endpoints) {
        if (v < 0 || v >= n) throw ValidationError("allowed endpoint out of range");
        mask[v] = true;
    }
    return mask;
}

}  // namespace

std::optional<std::vector<int>> find_augmenting_path(const WorkGraph& graph,
                                                     const Matching& matching,
                                                     const std::vector<int>& allowed_endpoints) {
    validate_matching(graph, matching);
    auto mask = endpoint_mask(graph.n, allowed_endpoints);
    BlossomSearch search(graph, matching, mask);
    for (int root = 0; root < graph.n; ++root) {
        if (matching.partner[root] != -1 || !mask[root]) continue;
        int endpoint = search.search(root);
        if (endpoint != -1) return search.extract_path(endpoint);
    }
    return std::nullopt;
}

Matching flip(const WorkGraph& graph, Matching matching, const std::vector<int>& path) {
    if (path.size() < 2 || path.size() % 2 != 0)
        throw InvalidPathError("augmenting path needs an even number of vertices");
    std::vector<char> seen(graph.n, false);
    for (int v : path) {
        if (v < 0 || v >= graph.n) throw InvalidPathError("path vertex out of range");
        if (seen[v]) throw InvalidPathError("path repeats vertex " + std::to_string(v));
        seen[v] = true;
    }
    if (matching.partner[path.front()] != -1 || matching.partner[path.back()] != -1)
        throw InvalidPathError("path endpoint is not exposed");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!graph.has_edge(path[i], path[i + 1]))
            throw InvalidPathError("path step is not an edge");
        bool matched_step = (matching.partner[path[i]] == path[i + 1]);
        if (matched_step != (i % 2 == 1))
            throw InvalidPathError("path does not alternate at step " + std::to_string(i));
    }
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
        matching.partner[path[i]] = path[i + 1];
        matching.partner[path[i + 1]] = path[i];
    }
    return matching;
}

Matching max_matching_from_seed(const WorkGraph& graph, Matching seed) {
    validate_matching(graph, seed);
    std::vector<char> all(graph.n, true);
    // One pass suffices: if no augmenting path starts at an exposed vertex,
    // later augmentations elsewhere cannot create one there.
    for (int root = 0; root < graph.n; ++root) {
        if (seed.partner[root] != -1) continue;
        BlossomSearch fresh(graph, seed, all);
        int endpoint = fresh.search(root);
        if (endpoint != -1) seed = flip(graph, std::move(seed), fresh.extract_path(endpoint));
    }
    return seed;
}

}  // namespace hbm
