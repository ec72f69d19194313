#pragma once

#include "hiconvex/function_models.hpp"
#include "hiconvex/interval.hpp"
#include "hiconvex/measures.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hiconvex {

struct OrderVerdict {
    bool holds = false;
    int failing_moment = -1;      // 0, 1, or 2 when a moment mismatch decides; -1 otherwise
    double min_deficiency = 0.0;  // exact minimum of the deficiency function
    double witness_knot = 0.0;    // argmin of the deficiency function
    double tol = 0.0;
};

// One quadratic piece of the deficiency function t -> a2*t^2 + a1*t + a0.
struct QuadPiece {
    double lo = 0.0;
    double hi = 0.0;
    double a2 = 0.0;
    double a1 = 0.0;
    double a0 = 0.0;

    double operator()(double t) const { return (a2 * t + a1) * t + a0; }
};

/**
 * Piecewise-quadratic representation of t -> integral of ((x - t)_+)^2
 * against (mu - nu), with breakpoints at the union of atom locations.
 * The pieces tile [window.lo, window.hi].
 */
std::vector<QuadPiece> deficiency_function(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                           const Interval& window);

/**
 * Decides whether every 3-convex function integrates at least as much
 * against mu as against nu: moments 0..2 must agree within a relative
 * tolerance and the deficiency function must be nonnegative; its minimum is
 * located exactly per quadratic piece, never by sampling.
 */
OrderVerdict precedes_3cvx(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                           const Interval& window, double tol = -1.0);

// The two-point endpoint/interior pair that brackets the uniform mean on
// [a, b]: masses (1/4, 3/4) at a and (a+2b)/3, versus (3/4, 1/4) at
// (2a+b)/3 and b. First element precedes the second.
std::pair<DiscreteMeasure, DiscreteMeasure> condensation_dispersion(double a, double b);

struct OracleResult {
    bool holds = false;
    bool moment_mismatch = false;
    double worst_violation = 0.0;  // most positive (nu-integral - mu-integral) among models
    std::uint64_t witness_seed = 0;
    int witness_index = -1;
};

/**
 * Independent cross-check of precedes_3cvx: integrates +-1, +-x, +-x^2 and
 * `model_count` seeded random 3-convex block models against both measures by
 * direct evaluation at the atoms. Parallelized over models with a
 * deterministic seed split, so the result is identical for any thread count.
 */
OracleResult monte_carlo_precedes_oracle(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                         const Interval& window, int model_count = 10000,
                                         std::uint64_t seed = 0);

} // namespace hiconvex
