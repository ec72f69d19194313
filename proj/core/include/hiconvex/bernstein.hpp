#pragma once

#include "hiconvex/divided_differences.hpp"
#include "hiconvex/function_models.hpp"

#include <vector>

namespace hiconvex {

/**
 * Degree-n approximant from samples at the n+1 equally spaced nodes of the
 * model's domain. Evaluation runs the repeated convex-combination recurrence
 * on the node values, never the binomial sum, so it stays stable at high
 * degree.
 */
class BernsteinApproximant {
public:
    BernsteinApproximant(const FunctionModel& f, int degree);

    double operator()(double x) const;

    int degree() const { return degree_; }
    const Interval& interval() const { return interval_; }
    const std::vector<double>& node_values() const { return node_values_; }

private:
    int degree_;
    Interval interval_;
    std::vector<double> node_values_;
};

double bernstein_eval(const FunctionModel& f, int degree, double x);

struct ShapePreservationReport {
    int degree = 0;
    int order = 0;
    bool holds = false;
    double sup_distance = 0.0;  // max |B_n f - f| over the grid
    ConvexityVerdict verdict;   // order-k verdict of the approximant samples
};

/**
 * Samples the degree-n approximant on a dense grid, runs the order-k verdict
 * on those samples, and measures the sup distance to the model on the same
 * grid.
 */
ShapePreservationReport shape_preservation_report(const FunctionModel& f, int degree, int order,
                                                  int grid_points = 257);

} // namespace hiconvex
