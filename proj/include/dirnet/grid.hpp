// grid.hpp: inclusive linear grids

#pragma once

#include <cstddef>
#include <vector>

namespace dirnet {

// steps points from start to stop inclusive; steps == 1 yields {start}.
inline std::vector<double> linear_grid(double start, double stop, std::size_t steps) {
    std::vector<double> out;
    if (steps == 0) return out;
    out.reserve(steps);
    if (steps == 1) {
        out.push_back(start);
        return out;
    }
    const double h = (stop - start) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) out.push_back(i + 1 == steps ? stop : start + h * static_cast<double>(i));
    return out;
}

}  // namespace dirnet
