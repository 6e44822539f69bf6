#pragma once

#include <string>

#include "hbm/core.hpp"
#include "hbm/solver.hpp"

// JSON instance and solution formats. Documents are versioned; unknown
// fields and unknown versions are rejected. All numbers are integers.

namespace hbm {

struct ParseError : Error {
    using Error::Error;
};

inline constexpr int kFormatVersion = 1;

/// Instance schema:
///   {
///     "format_version": 1,
///     "n": <int>,
///     "vertex_b": [b_1, ..., b_n],
///     "edges": [{"u": u, "v": v, "c": c}, ...],
///     "sets": [{"members": [...], "b": b}, ...]   // non-singleton sets
///   }
/// "sets" may be omitted and may include the root {1..n}; a missing root
/// is added with b = sum of vertex_b.
Instance parse_instance(const std::string& text);

std::string emit_instance(const Instance& instance);

/// Solution text: size, per-edge multiplicities with slacks, per-set
/// degrees and slacks (against the normalized bounds), and run counters.
std::string emit_solution(const SolveReport& report, const Instance& normalized);

}  // namespace hbm
