#pragma once

#include <cstdint>

#include "hbm/core.hpp"

// Random instance generator: an Erdos-Renyi edge set plus a laminar family
// built by recursive random partition of the vertex set. Bounds are drawn
// and then normalized, so emitted instances are always in normal form.
// Fully deterministic for a fixed seed.

namespace hbm {

struct GeneratorConfig {
    int n = 10;
    double density = 0.3;   // edge probability
    Count max_vertex_b = 3;
    Count max_c = 2;
    int depth = 3;          // partition recursion depth
    int branch_min = 2;
    int branch_max = 4;
    std::uint64_t seed = 1;
};

Instance generate(const GeneratorConfig& config);

}  // namespace hbm
