#pragma once

#include "hiconvex/interval.hpp"
#include "hiconvex/report.hpp"
#include "hiconvex/sample_grid.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hiconvex {

/**
 * Triangular table of divided differences.
 *
 * row(k)[i] is the order-k difference over the consecutive nodes
 * x_i, ..., x_{i+k}; row(0) is the ordinates. Rows are built by the
 * difference-quotient recurrence, not the product formula.
 */
class DividedDiffTable {
public:
    DividedDiffTable(std::vector<double> xs, std::vector<std::vector<double>> rows)
        : xs_(std::move(xs)), rows_(std::move(rows)) {}

    int max_order() const { return static_cast<int>(rows_.size()) - 1; }
    const std::vector<double>& row(int k) const { return rows_.at(static_cast<std::size_t>(k)); }
    const std::vector<double>& xs() const { return xs_; }

private:
    std::vector<double> xs_;
    std::vector<std::vector<double>> rows_;
};

struct ConvexityVerdict {
    int order = 0;
    bool holds = false;
    double margin = 0.0;      // smallest order-n difference over consecutive windows
    double tol = 0.0;         // tolerance the verdict used
    std::size_t window_begin = 0;
    std::vector<double> window_xs;  // nodes of the minimizing window
};

// Difference quotient over all nodes of the grid (order = size - 1).
double divided_difference(const SampleGrid& grid);

// Same, over raw node/ordinate pairs in any order; nodes must be pairwise
// distinct relative to their span.
double divided_difference(std::span<const double> xs, std::span<const double> ys);

// Diagnostic evaluation via the sum of ordinates over node-distance products.
double divided_difference_product_form(std::span<const double> xs, std::span<const double> ys);

DividedDiffTable build_table(const SampleGrid& grid, int max_order);

/**
 * Order-n convexity verdict over consecutive node windows.
 *
 * holds iff every order-n divided difference over a consecutive window is
 * >= -tol; tol defaults to 1e-9 * (1 + max |y|).
 */
ConvexityVerdict n_convexity_verdict(const SampleGrid& grid, int order, double tol = -1.0);

/**
 * Forward difference with the given nonnegative steps applied in sequence,
 * expanded by inclusion-exclusion over the step subsets.
 */
double iterated_difference(const std::function<double(double)>& f, const Interval& domain,
                           double t, const std::vector<double>& steps);

struct SamplingPolicy {
    int lattice_per_axis = 12;
    int random_points = 0;
    std::uint64_t seed = 0;
};

/**
 * Minimum of the third mixed difference over quadruples x, y, z, t >= 0 with
 * x + y + z + t <= limit. Verdict holds when the minimum is >= -tol.
 */
InequalityReport positive_differences3_check(const std::function<double(double)>& f,
                                             const Interval& domain, double limit,
                                             const SamplingPolicy& policy = {},
                                             double tol = -1.0);

/**
 * Absolute gap between the order-3 divided difference at a < b < c < d and
 * its three-term representation by integrals of the derivative.
 */
double bennett_identity_residual(const std::function<double(double)>& fprime,
                                 const SampleGrid& quadruple);

} // namespace hiconvex
