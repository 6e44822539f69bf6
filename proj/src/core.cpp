#include "hbm/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace hbm {

namespace {

std::string set_to_string(const std::vector<int>& s) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out << ',';
        out << s[i];
    }
    out << '}';
    return out.str();
}

}  // namespace

Graph Graph::create(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 1) throw ValidationError("graph needs at least one vertex");
    for (auto& [u, v] : edge_list) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw ValidationError("edge endpoint out of range: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
        if (u == v) throw ValidationError("loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw ValidationError("parallel edge in input");

    Graph g;
    g.n = n;
    g.edges = std::move(edge_list);
    g.incident.assign(n + 1, {});
    for (int e = 0; e < g.edge_count(); ++e) {
        g.incident[g.edges[e].first].push_back(e);
        g.incident[g.edges[e].second].push_back(e);
    }
    return g;
}

LaminarFamily validate_family(const std::vector<std::vector<int>>& input_sets, int n,
                              bool insert_defaults) {
    if (n < 1) throw ValidationError("ground set must be nonempty");

    std::vector<std::vector<int>> sets;
    sets.reserve(input_sets.size());
    for (auto s : input_sets) {
        if (s.empty()) throw EmptySetError("empty set in family");
        std::sort(s.begin(), s.end());
        for (int v : s)
            if (v < 1 || v > n)
                throw ValidationError("set member out of range: " + std::to_string(v));
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ValidationError("repeated member in set " + set_to_string(s));
        sets.push_back(std::move(s));
    }
    {
        auto sorted = sets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DuplicateSetError("duplicate set in family");
    }

    // Index assignment: singletons 1..n, other non-root sets in input order,
    // root last.
    std::vector<int> singleton_seen(n + 1, 0);
    std::vector<std::vector<int>> middle;
    bool root_seen = false;
    for (auto& s : sets) {
        if (s.size() == 1) {
            singleton_seen[s[0]] = 1;
            if (n == 1) root_seen = true;  // degenerate: singleton == root
        } else if (static_cast<int>(s.size()) == n) {
            root_seen = true;
        } else {
            middle.push_back(s);
        }
    }
    if (!root_seen) {
        if (!insert_defaults) throw MissingRootError("family lacks the root set {1..n}");
    }
    for (int v = 1; v <= n; ++v) {
        if (!singleton_seen[v] && !insert_defaults)
            throw MissingSingletonError("family lacks singleton {" + std::to_string(v) + "}");
    }

    LaminarFamily fam;
    fam.n = n;
    fam.m = (n == 1) ? 1 : n + static_cast<int>(middle.size()) + 1;
    fam.sets.assign(fam.m + 1, {});
    for (int v = 1; v <= n; ++v) fam.sets[v] = {v};
    for (std::size_t i = 0; i < middle.size(); ++i) fam.sets[n + 1 + static_cast<int>(i)] = middle[i];
    if (n > 1) {
        fam.sets[fam.m].resize(n);
        std::iota(fam.sets[fam.m].begin(), fam.sets[fam.m].end(), 1);
    }

    // Pairwise laminarity via sorted-member subset tests.
    auto relation_ok = [](const std::vector<int>& a, const std::vector<int>& b) {
        // true iff disjoint or nested
        std::size_t common = 0, i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) {
                ++common;
                ++i;
                ++j;
            } else if (a[i] < b[j]) {
                ++i;
            } else {
                ++j;
            }
        }
        return common == 0 || common == a.size() || common == b.size();
    };
    for (int k = n + 1; k < fam.m; ++k) {
        for (int k2 = k + 1; k2 <= fam.m; ++k2) {
            if (!relation_ok(fam.sets[k], fam.sets[k2]))
                throw OverlapError("sets " + set_to_string(fam.sets[k]) + " and " +
                                   set_to_string(fam.sets[k2]) + " properly intersect");
        }
    }

    // Parents: process sets by decreasing size; the innermost processed set
    // containing a vertex is the parent of the next smaller set through it.
    fam.parent.assign(fam.m + 1, 0);
    fam.children.assign(fam.m + 1, {});
    std::vector<int> order(fam.m);
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return fam.sets[a].size() > fam.sets[b].size();
    });
    std::vector<int> owner(n + 1, fam.m);
    for (int k : order) {
        if (k == fam.m) continue;
        fam.parent[k] = owner[fam.sets[k][0]];
        for (int v : fam.sets[k]) owner[v] = k;
    }
    for (int k = 1; k < fam.m; ++k) fam.children[fam.parent[k]].push_back(k);
    for (auto& ch : fam.children) std::sort(ch.begin(), ch.end());

    // Traversal orders, children ascending.
    fam.preorder.reserve(fam.m);
    fam.postorder.reserve(fam.m);
    std::vector<std::pair<int, std::size_t>> stack{{fam.m, 0}};
    fam.preorder.push_back(fam.m);
    while (!stack.empty()) {
        auto& [k, next] = stack.back();
        if (next < fam.children[k].size()) {
            int child = fam.children[k][next++];
            fam.preorder.push_back(child);
            stack.emplace_back(child, 0);
        } else {
            fam.postorder.push_back(k);
            stack.pop_back();
        }
    }
    return fam;
}

Instance make_instance(Graph graph, LaminarFamily family, std::vector<Count> b,
                       std::vector<Count> c) {
    if (family.n != graph.n) throw ValidationError("family and graph disagree on n");
    if (static_cast<int>(b.size()) != family.m + 1)
        throw ValidationError("bound vector has wrong length (expected size m+1, 1-based)");
    if (c.size() != graph.edges.size()) throw ValidationError("capacity vector has wrong length");
    for (int k = 1; k <= family.m; ++k)
        if (b[k] <= 0) throw ValidationError("bound of set " + std::to_string(k) + " not positive");
    for (Count cap : c)
        if (cap <= 0) throw ValidationError("edge capacity not positive");
    return Instance{std::move(graph), std::move(family), std::move(b), std::move(c)};
}

Instance normalize(Instance instance) {
    auto& fam = instance.family;
    auto& b = instance.b;
    for (int k : fam.preorder) {
        if (!fam.is_root(k)) b[k] = std::min(b[k], b[fam.parent[k]]);
    }
    for (int k : fam.postorder) {
        if (fam.children[k].empty()) continue;
        Count child_sum = 0;
        for (int child : fam.children[k]) child_sum += b[child];
        b[k] = std::min(b[k], child_sum);
    }
    for (int e = 0; e < instance.graph.edge_count(); ++e) {
        auto [u, v] = instance.graph.edges[e];
        instance.c[e] = std::min({instance.c[e], b[u], b[v]});
    }
    return instance;
}

Count cardinality(const HMatching& matching) {
    return std::accumulate(matching.x.begin(), matching.x.end(), Count{0});
}

std::vector<Count> vertex_degrees(const Instance& instance, const HMatching& matching) {
    std::vector<Count> deg(instance.n() + 1, 0);
    for (int e = 0; e < instance.graph.edge_count(); ++e) {
        deg[instance.graph.edges[e].first] += matching.x[e];
        deg[instance.graph.edges[e].second] += matching.x[e];
    }
    return deg;
}

std::vector<Count> set_degrees(const Instance& instance, const HMatching& matching) {
    auto vdeg = vertex_degrees(instance, matching);
    std::vector<Count> deg(instance.m() + 1, 0);
    for (int k : instance.family.postorder) {
        if (instance.family.is_singleton(k)) {
            deg[k] = vdeg[k];
        } else {
            for (int child : instance.family.children[k]) deg[k] += deg[child];
        }
    }
    return deg;
}

Count degree(const Instance& instance, const HMatching& matching, int set_index) {
    Count d = 0;
    auto vdeg = vertex_degrees(instance, matching);
    for (int v : instance.family.sets[set_index]) d += vdeg[v];
    return d;
}

Count slack_set(const Instance& instance, const HMatching& matching, int set_index) {
    return instance.b[set_index] - degree(instance, matching, set_index);
}

Count slack_edge(const Instance& instance, const HMatching& matching, int edge_id) {
    return instance.c[edge_id] - matching.x[edge_id];
}

std::string Violation::describe(const Instance& instance) const {
    std::ostringstream out;
    if (kind == Kind::EdgeCapacity) {
        auto [u, v] = instance.graph.edges[index];
        out << "edge (" << u << "," << v << "): x=" << amount << " > c=" << bound;
    } else {
        out << "set " << set_to_string(instance.family.sets[index]) << ": degree " << amount
            << " > b=" << bound;
    }
    return out.str();
}

std::vector<Violation> check_feasible(const Instance& instance, const HMatching& matching) {
    std::vector<Violation> out;
    if (matching.x.size() != instance.graph.edges.size())
        throw InfeasibleInputError("multiplicity vector has wrong length");
    for (int e = 0; e < instance.graph.edge_count(); ++e) {
        if (matching.x[e] < 0)
            throw InfeasibleInputError("negative multiplicity on edge " + std::to_string(e));
        if (matching.x[e] > instance.c[e])
            out.push_back({Violation::Kind::EdgeCapacity, e, matching.x[e], instance.c[e]});
    }
    auto deg = set_degrees(instance, matching);
    for (int k = 1; k <= instance.m(); ++k) {
        if (deg[k] > instance.b[k])
            out.push_back({Violation::Kind::SetBound, k, deg[k], instance.b[k]});
    }
    return out;
}

}  // namespace hbm
