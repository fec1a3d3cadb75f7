#include "searchstop/detail/simplex.hpp"

#include <cmath>
#include <limits>

#include "searchstop/errors.hpp"

namespace searchstop::detail {

namespace {

constexpr double kPivotTol = 1e-10;

}  // namespace

SimplexResult simplex_max(std::vector<std::vector<double>> a,
                          std::vector<double> b,
                          const std::vector<double>& c,
                          std::vector<std::size_t> basis) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    if (basis.size() != m || b.size() != m)
        throw Error("simplex: inconsistent problem dimensions");

    auto pivot = [&](std::size_t row, std::size_t col) {
        const double p = a[row][col];
        for (std::size_t j = 0; j < n; ++j) a[row][j] /= p;
        b[row] /= p;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[row][j];
            b[r] -= f * b[row];
        }
        basis[row] = col;
    };

    // Row-reduce so the starting basis columns form an identity.
    for (std::size_t r = 0; r < m; ++r) {
        if (std::fabs(a[r][basis[r]]) < kPivotTol)
            throw Error("simplex: starting basis is singular");
        pivot(r, basis[r]);
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (b[r] < -1e-9) throw Error("simplex: starting basis is infeasible");
        if (b[r] < 0.0) b[r] = 0.0;
    }

    // Generous cap; Bland's rule rules out cycling, this guards float trouble.
    const std::size_t max_iters = 64 * (m + n) * (m + n) + 1024;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        // Entering column: lowest index with positive reduced cost.
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j) {
            double reduced = c[j];
            for (std::size_t r = 0; r < m; ++r) reduced -= c[basis[r]] * a[r][j];
            if (reduced > 1e-9) { enter = j; break; }
        }
        if (enter == n) {
            SimplexResult out;
            out.x.assign(n, 0.0);
            for (std::size_t r = 0; r < m; ++r) out.x[basis[r]] = b[r];
            out.objective = 0.0;
            for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
            return out;
        }

        // Leaving row: min ratio, ties broken toward the lowest basis index.
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            if (a[r][enter] <= kPivotTol) continue;
            const double ratio = b[r] / a[r][enter];
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && (leave == m || basis[r] < basis[leave]))) {
                best_ratio = ratio;
                leave = r;
            }
        }
        if (leave == m) throw Error("simplex: objective is unbounded");
        pivot(leave, enter);
    }
    throw Error("simplex: iteration cap reached");
}

}  // namespace searchstop::detail
