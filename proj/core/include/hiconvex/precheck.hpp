#pragma once

#include "hiconvex/function_models.hpp"
#include "hiconvex/interval.hpp"
#include "hiconvex/report.hpp"

namespace hiconvex {

struct ShapeNeeds {
    bool nondecreasing = false;
    bool convex = false;
    bool concave = false;
    bool convex3 = false;
};

/**
 * Sample f on a coarse equispaced grid over iv and re-derive the shape facts
 * a bound relies on. Failures downgrade to "warning:*-precondition-failed"
 * cases instead of hard errors so that counterexample inputs still produce a
 * full report. Degenerate intervals are skipped silently.
 */
void add_shape_warnings(const FunctionModel& f, const Interval& iv, InequalityReport& report,
                        const ShapeNeeds& needs, int nodes = 8);

} // namespace hiconvex
