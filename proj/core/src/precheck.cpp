#include "hiconvex/precheck.hpp"

#include "hiconvex/divided_differences.hpp"
#include "hiconvex/sample_grid.hpp"

#include <cmath>
#include <vector>

namespace hiconvex {

void add_shape_warnings(const FunctionModel& f, const Interval& iv, InequalityReport& report,
                        const ShapeNeeds& needs, int nodes) {
    if (nodes < 4) nodes = 4;
    const double slack = kGapMinRel * (1.0 + std::abs(iv.lo) + std::abs(iv.hi));
    if (!(iv.length() > nodes * slack)) return;
    std::vector<double> xs(nodes), ys(nodes);
    for (int i = 0; i < nodes; ++i) {
        xs[i] = iv.lo + iv.length() * static_cast<double>(i) / (nodes - 1);
        ys[i] = f.eval(xs[i]);
    }
    SampleGrid grid(xs, ys);
    if (needs.nondecreasing && !n_convexity_verdict(grid, 1).holds) {
        report.add_case("warning:nondecreasing-precondition-failed");
    }
    if (needs.convex && !n_convexity_verdict(grid, 2).holds) {
        report.add_case("warning:convex-precondition-failed");
    }
    if (needs.concave) {
        std::vector<double> neg(ys);
        for (double& y : neg) y = -y;
        if (!n_convexity_verdict(SampleGrid(xs, neg), 2).holds) {
            report.add_case("warning:concave-precondition-failed");
        }
    }
    if (needs.convex3 && !n_convexity_verdict(grid, 3).holds) {
        report.add_case("warning:3-convex-precondition-failed");
    }
}

} // namespace hiconvex
