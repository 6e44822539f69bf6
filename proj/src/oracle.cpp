#include "hbm/oracle.hpp"

#include <numeric>
#include <vector>

namespace hbm {

namespace {

struct Search {
    const Instance& inst;
    std::uint64_t budget;

    std::vector<Count> x;
    std::vector<Count> set_deg;          // running d(L_k)
    std::vector<Count> remaining_cap;    // suffix sums of c
    std::vector<std::vector<int>> ancestors_u, ancestors_v;  // per edge, incl. singleton
    OracleResult result;
    Count current_size = 0;

    explicit Search(const Instance& instance, std::uint64_t node_budget)
        : inst(instance), budget(node_budget) {
        const int ecount = inst.graph.edge_count();
        x.assign(ecount, 0);
        set_deg.assign(inst.m() + 1, 0);
        remaining_cap.assign(ecount + 1, 0);
        for (int e = ecount - 1; e >= 0; --e)
            remaining_cap[e] = remaining_cap[e + 1] + inst.c[e];
        ancestors_u.resize(ecount);
        ancestors_v.resize(ecount);
        for (int e = 0; e < ecount; ++e) {
            auto chain = [&](int v) {
                std::vector<int> out;
                for (int k = v; k != 0; k = inst.family.parent[k]) out.push_back(k);
                return out;
            };
            ancestors_u[e] = chain(inst.graph.edges[e].first);
            ancestors_v[e] = chain(inst.graph.edges[e].second);
        }
        result.best_x = HMatching{x};
    }

    // Largest multiplicity of edge e the current set degrees still allow.
    Count headroom(int e) const {
        Count room = inst.c[e];
        for (int k : ancestors_u[e]) room = std::min(room, inst.b[k] - set_deg[k]);
        for (int k : ancestors_v[e]) room = std::min(room, inst.b[k] - set_deg[k]);
        // Shared ancestors absorb both endpoints' degree increments.
        for (int k : ancestors_u[e]) {
            for (int k2 : ancestors_v[e]) {
                if (k == k2) room = std::min(room, (inst.b[k] - set_deg[k]) / 2);
            }
        }
        return room;
    }

    void apply(int e, Count mult) {
        x[e] += mult;
        current_size += mult;
        for (int k : ancestors_u[e]) set_deg[k] += mult;
        for (int k : ancestors_v[e]) set_deg[k] += mult;
    }

    void dfs(int e) {
        if (++result.nodes_explored > budget)
            throw BudgetExceededError("oracle exceeded node budget of " + std::to_string(budget));
        if (e == inst.graph.edge_count()) {
            if (current_size > result.best_size) {
                result.best_size = current_size;
                result.best_x.x = x;
            }
            return;
        }
        if (current_size + remaining_cap[e] <= result.best_size) return;  // cannot beat incumbent
        const Count top = headroom(e);
        for (Count mult = top; mult >= 0; --mult) {
            apply(e, mult);
            dfs(e + 1);
            apply(e, -mult);
        }
    }
};

}  // namespace

OracleResult brute_force_max(const Instance& instance, std::uint64_t budget) {
    Search search(instance, budget);
    search.dfs(0);
    return search.result;
}

}  // namespace hbm
