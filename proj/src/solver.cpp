#include "hbm/solver.hpp"

#include <chrono>
#include <numeric>
#include <sstream>

#include "hbm/augment.hpp"
#include "hbm/flow.hpp"

namespace hbm {

std::string to_string(Algo algo) {
    switch (algo) {
        case Algo::Poly: return "poly";
        case Algo::Pseudo: return "pseudo";
        case Algo::Oracle: return "oracle";
        case Algo::FlowOnly: return "flow-only";
    }
    return "?";
}

std::optional<Algo> parse_algo(const std::string& name) {
    if (name == "poly") return Algo::Poly;
    if (name == "pseudo") return Algo::Pseudo;
    if (name == "oracle") return Algo::Oracle;
    if (name == "flow-only") return Algo::FlowOnly;
    return std::nullopt;
}

std::string instance_digest(const Instance& inst) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(0x48424d31);  // format tag
    mix(static_cast<std::uint64_t>(inst.n()));
    mix(static_cast<std::uint64_t>(inst.m()));
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        mix(static_cast<std::uint64_t>(inst.graph.edges[e].first));
        mix(static_cast<std::uint64_t>(inst.graph.edges[e].second));
        mix(static_cast<std::uint64_t>(inst.c[e]));
    }
    for (int k = 1; k <= inst.m(); ++k) {
        for (int v : inst.family.sets[k]) mix(static_cast<std::uint64_t>(v));
        mix(0xfeedfacecafebeefull);
        mix(static_cast<std::uint64_t>(inst.b[k]));
    }
    std::ostringstream out;
    out << std::hex;
    for (int i = 15; i >= 0; --i) out << ((h >> (4 * i)) & 0xf);
    return out.str();
}

SolveReport solve(const Instance& raw, Algo algo, const SolveOptions& options) {
    const Instance inst = normalize(raw);
    SolveReport report;
    report.instance_digest = instance_digest(inst);
    report.algo = algo;

    auto started = std::chrono::steady_clock::now();
    switch (algo) {
        case Algo::Poly:
        case Algo::FlowOnly: {
            FlowNetwork net = build_network(inst);
            FlowResult flow = max_flow(net);
            report.flow_value = flow.value;
            HalfIntegralHMatching half = symmetrize(net, flow);
            Count half_sum = std::accumulate(half.x2.begin(), half.x2.end(), Count{0});
            report.x = round_half_integral(inst, half);
            report.rounding_loss_halves = half_sum - 2 * cardinality(report.x);
            if (algo == Algo::Poly) {
                report.augmentations = 0;
                while (auto next = augment_step(inst, report.x)) {
                    report.x = std::move(*next);
                    ++report.augmentations;
                }
            }
            break;
        }
        case Algo::Pseudo: {
            report.x = solve_pseudo(inst, options.repr_vertex_cap);
            break;
        }
        case Algo::Oracle: {
            OracleResult result = brute_force_max(inst, options.oracle_budget);
            report.x = std::move(result.best_x);
            report.oracle_nodes = result.nodes_explored;
            break;
        }
    }
    auto elapsed = std::chrono::steady_clock::now() - started;
    report.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count();

    report.size = cardinality(report.x);
    report.set_degree = set_degrees(inst, report.x);
    report.set_slack.assign(inst.m() + 1, 0);
    for (int k = 1; k <= inst.m(); ++k) report.set_slack[k] = inst.b[k] - report.set_degree[k];
    return report;
}

CertificateResult verify_certificate(const Instance& raw, const HMatching& x,
                                     const SolveOptions& options) {
    const Instance inst = normalize(raw);
    CertificateResult result;
    result.violations = check_feasible(inst, x);
    result.feasible = result.violations.empty();
    if (!result.feasible) return result;
    try {
        OracleResult oracle = brute_force_max(inst, options.oracle_budget);
        result.optimal = (oracle.best_size == cardinality(x));
    } catch (const BudgetExceededError&) {
        // feasibility-only answer
    }
    return result;
}

}  // namespace hbm
