#pragma once

#include <functional>

namespace hiconvex {

inline constexpr double kQuadAbsTol = 1e-10;
inline constexpr int kQuadMaxDepth = 40;

/**
 * Adaptive integral of f over [a, b].
 *
 * Interval bisection with an embedded Simpson pair: each interval is accepted
 * when the two-level Richardson estimate meets its share of the tolerance.
 * Throws std::runtime_error("quadrature-nonconvergence ...") when an interval
 * still fails at depth kQuadMaxDepth.
 */
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = kQuadAbsTol);

} // namespace hiconvex
