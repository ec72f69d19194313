#pragma once

#include "hiconvex/function_models.hpp"
#include "hiconvex/interval.hpp"
#include "hiconvex/measures.hpp"
#include "hiconvex/report.hpp"

#include <functional>
#include <optional>
#include <string>

namespace hiconvex {

/**
 * Weight w with an explicit primitive W that must be nonnegative and
 * symmetric about the interval midpoint. validate_weight checks both facts
 * and that W' matches w by central differences on a grid.
 */
struct WeightSpec {
    std::string name;
    std::function<double(double)> w;
    std::function<double(double)> W;
    Interval interval;
};

WeightSpec weight_poly(const Interval& iv);        // w = a+b-2x, W = (x-a)(b-x)
WeightSpec weight_power(int n, double a);          // w = 2n x^(2n-1), W = x^(2n) on [-a, a]
WeightSpec weight_cosine();                        // w = cos, W = sin on [0, pi]

void validate_weight(const WeightSpec& spec, int grid_points = 33);

double integral_mean(const FunctionModel& f, const Interval& iv);

// Mean location of a probability measure; rejects signed or unnormalized input.
double barycenter(const DiscreteMeasure& mu);

// Two-sided mean bounds for convex f against a discrete probability measure
// supported in iv: value at the barycenter below, endpoint chord above.
InequalityReport hh_classical_check(const FunctionModel& f, const DiscreteMeasure& mu,
                                    const Interval& iv, double tol = -1.0);

// Homogeneous two-sided bound for convex f against a nonnegative density
// symmetric about the midpoint (not necessarily normalized).
InequalityReport fejer_check(const FunctionModel& f, const std::function<double(double)>& density,
                             const Interval& iv, double tol = -1.0);

// Two-sided mean bounds for 3-convex f with endpoint/interior node pairs at
// thirds: (1/4, 3/4) at {a, (a+2b)/3} below the mean, (3/4, 1/4) at
// {(2a+b)/3, b} above.
InequalityReport bp_bounds_check(const FunctionModel& f, const Interval& iv, double tol = -1.0);

// Five-term chain for f both convex and 3-convex: midpoint value, lower
// third-node pair, mean, upper third-node pair, endpoint average.
InequalityReport chain_check(const FunctionModel& f, const Interval& iv, double tol = -1.0);

// Weighted bound for 3-convex f: both sides of
//   integral(f*w) - (f(b)W(b) - f(a)W(a))
// against -avg(f'(a), f'(b)) * integral(W) and -f'((a+b)/2) * integral(W).
InequalityReport weighted_3convex_check(const FunctionModel& f, const WeightSpec& spec,
                                        const Interval& iv, double tol = -1.0);

// Mean comparisons for convex f: shrunk interval below the mean, edge strips
// above it, and the combined display with quarter strips and middle third.
InequalityReport nested_mean_checks(const FunctionModel& f, const Interval& iv,
                                    std::optional<double> epsilon = {}, double tol = -1.0);

// Slope bounds for 3-convex differentiable f: derivative at the midpoint
// below the chord slope, the average of endpoint-derivative mean and
// midpoint derivative above it.
InequalityReport slope_bounds_check(const FunctionModel& f, const Interval& iv, double tol = -1.0);

} // namespace hiconvex
