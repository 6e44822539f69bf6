#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hbm/core.hpp"
#include "hbm/oracle.hpp"
#include "hbm/repr.hpp"

// Pipeline orchestration: the default mode runs the flow-based
// near-optimal stage and then closes the gap with single augmentations;
// the pseudo-polynomial reduction and the brute-force oracle are
// dispatched behind the same interface for cross-checking.

namespace hbm {

enum class Algo { Poly, Pseudo, Oracle, FlowOnly };

std::string to_string(Algo algo);
std::optional<Algo> parse_algo(const std::string& name);

struct SolveOptions {
    std::uint64_t oracle_budget = kDefaultOracleBudget;
    std::int64_t repr_vertex_cap = kDefaultReprVertexCap;
};

/// Everything a run produces. Numbers refer to the normalized instance;
/// elapsed_us is excluded from the determinism contract.
struct SolveReport {
    std::string instance_digest;
    Algo algo = Algo::Poly;
    HMatching x;
    Count size = 0;
    std::vector<Count> set_degree;  // 1-based
    std::vector<Count> set_slack;   // 1-based
    Count flow_value = -1;            // poly, flow-only
    Count rounding_loss_halves = -1;  // poly, flow-only; doubled units
    Count augmentations = -1;         // poly
    std::uint64_t oracle_nodes = 0;   // oracle
    std::int64_t elapsed_us = 0;
};

/// FNV-1a over a canonical serialization of the normalized instance.
std::string instance_digest(const Instance& normalized);

/// Normalizes internally, runs the requested algorithm, fills the report.
/// Resource limits surface as SizeOverflowError / BudgetExceededError.
SolveReport solve(const Instance& instance, Algo algo, const SolveOptions& options = {});

struct CertificateResult {
    bool feasible = false;
    std::vector<Violation> violations;
    std::optional<bool> optimal;  // unset when the oracle budget ran out
};

/// Re-checks feasibility; optimality too when the oracle can close the
/// instance within budget.
CertificateResult verify_certificate(const Instance& instance, const HMatching& x,
                                     const SolveOptions& options = {});

}  // namespace hbm
