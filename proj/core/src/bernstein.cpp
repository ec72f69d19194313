#include "hiconvex/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hiconvex {

BernsteinApproximant::BernsteinApproximant(const FunctionModel& f, int degree)
    : degree_(degree), interval_(f.domain()) {
    if (degree < 1)
        throw std::invalid_argument("bernstein: degree must be at least 1, got " +
                                    std::to_string(degree));
    node_values_.resize(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i <= degree; ++i) {
        const double x = interval_.lo + interval_.length() * i / degree;
        node_values_[static_cast<std::size_t>(i)] = f(std::min(x, interval_.hi));
    }
}

double BernsteinApproximant::operator()(double x) const {
    const double slack = 1e-12 * (1.0 + interval_.length());
    if (!interval_.contains(x, slack))
        throw std::domain_error("domain: point " + std::to_string(x) +
                                " outside the approximant interval");
    const double t = std::clamp((x - interval_.lo) / interval_.length(), 0.0, 1.0);
    std::vector<double> b = node_values_;
    for (std::size_t level = b.size() - 1; level > 0; --level)
        for (std::size_t i = 0; i < level; ++i) b[i] = (1.0 - t) * b[i] + t * b[i + 1];
    return b[0];
}

double bernstein_eval(const FunctionModel& f, int degree, double x) {
    return BernsteinApproximant(f, degree)(x);
}

ShapePreservationReport shape_preservation_report(const FunctionModel& f, int degree, int order,
                                                  int grid_points) {
    if (grid_points < order + 2)
        throw std::invalid_argument("insufficient-nodes: grid too small for the requested order");
    const BernsteinApproximant bn(f, degree);
    const Interval iv = f.domain();
    std::vector<double> xs(static_cast<std::size_t>(grid_points));
    std::vector<double> ys(static_cast<std::size_t>(grid_points));
    double sup = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = iv.lo + iv.length() * i / (grid_points - 1);
        xs[static_cast<std::size_t>(i)] = x;
        const double bx = bn(x);
        ys[static_cast<std::size_t>(i)] = bx;
        sup = std::max(sup, std::abs(bx - f(x)));
    }
    ShapePreservationReport rep;
    rep.degree = degree;
    rep.order = order;
    rep.sup_distance = sup;
    // An order-k difference over spacing-h windows divides the sample noise
    // by about h^k, and the de Casteljau sweep rounds roughly `degree` times
    // per sample. Below that product a margin is indistinguishable from zero
    // (a quadratic input must report margin 0), so the verdict tolerance gets
    // a conditioning floor tied to the grid, not only to the value scale.
    double scale = 0.0;
    for (const double y : ys) scale = std::max(scale, std::abs(y));
    const double h = iv.length() / (grid_points - 1);
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * (1.0 + degree) *
                         (1.0 + scale) / std::pow(h, order);
    const double tol = std::max(default_tol(scale), floor);
    rep.verdict = n_convexity_verdict(SampleGrid(std::move(xs), std::move(ys)), order, tol);
    rep.holds = rep.verdict.holds;
    return rep;
}

} // namespace hiconvex
