#pragma once

#include <cstddef>
#include <vector>

namespace searchstop::detail {

// Dense primal simplex for the tiny linear programs this library builds
// (a handful of rows and columns). Maximizes c.x subject to A x = b, x >= 0,
// starting from a caller-supplied feasible basis (one column index per row,
// basic solution non-negative). Pivots by Bland's rule, so it terminates even
// on degenerate vertices.
struct SimplexResult {
    std::vector<double> x;  // full-length primal solution
    double objective;
};

SimplexResult simplex_max(std::vector<std::vector<double>> a,
                          std::vector<double> b,
                          const std::vector<double>& c,
                          std::vector<std::size_t> basis);

}  // namespace searchstop::detail
