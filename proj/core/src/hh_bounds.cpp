#include "hiconvex/hh_bounds.hpp"

#include "hiconvex/precheck.hpp"
#include "hiconvex/quadrature.hpp"
#include "hiconvex/sample_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hiconvex {

namespace {

void require_domain(const FunctionModel& f, const Interval& iv) {
    if (!f.domain().contains(iv, kGapMinRel * (1.0 + std::abs(iv.lo) + std::abs(iv.hi)))) {
        throw std::domain_error("domain-exceeded: interval not inside the model domain");
    }
}

} // namespace

WeightSpec weight_poly(const Interval& iv) {
    const double a = iv.lo, b = iv.hi;
    return WeightSpec{
        "poly",
        [a, b](double x) { return a + b - 2.0 * x; },
        [a, b](double x) { return (x - a) * (b - x); },
        iv,
    };
}

WeightSpec weight_power(int n, double a) {
    if (n < 1) throw std::invalid_argument("weight-spec: power index must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("weight-spec: half-width must be positive");
    return WeightSpec{
        "power",
        [n](double x) { return 2.0 * n * std::pow(x, 2 * n - 1); },
        [n](double x) { return std::pow(x, 2 * n); },
        Interval{-a, a},
    };
}

WeightSpec weight_cosine() {
    const double pi = std::acos(-1.0);
    return WeightSpec{
        "cosine",
        [](double x) { return std::cos(x); },
        [](double x) { return std::sin(x); },
        Interval{0.0, pi},
    };
}

void validate_weight(const WeightSpec& spec, int grid_points) {
    if (grid_points < 5) throw std::invalid_argument("weight-spec: grid too small");
    const Interval& iv = spec.interval;
    const double len = iv.length();
    if (!(len > 0.0)) throw std::invalid_argument("weight-spec: degenerate interval");
    const double h = len / (grid_points - 1);
    double w_scale = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        w_scale = std::max(w_scale, std::abs(spec.w(iv.lo + i * h)));
    }
    const double tol = 1e-6 * (1.0 + w_scale);
    for (int i = 0; i < grid_points; ++i) {
        const double x = iv.lo + i * h;
        const double Wx = spec.W(x);
        if (Wx < -tol) {
            throw std::invalid_argument("weight-spec: primitive negative at sample point");
        }
        const double mirror = iv.lo + iv.hi - x;
        if (std::abs(Wx - spec.W(mirror)) > tol * (1.0 + std::abs(Wx))) {
            throw std::invalid_argument("weight-spec: primitive not symmetric about midpoint");
        }
        if (i > 1 && i + 2 < grid_points) {
            // Fourth-order stencil: exact for polynomial primitives through
            // degree 4, O(h^4) otherwise, so the budget is about mismatch
            // rather than truncation.
            const double slope = (-spec.W(x + 2.0 * h) + 8.0 * spec.W(x + h) -
                                  8.0 * spec.W(x - h) + spec.W(x - 2.0 * h)) /
                                 (12.0 * h);
            if (std::abs(slope - spec.w(x)) > 1e-3 * (1.0 + w_scale)) {
                throw std::invalid_argument("weight-spec: primitive does not match weight");
            }
        }
    }
}

double integral_mean(const FunctionModel& f, const Interval& iv) {
    require_domain(f, iv);
    if (!(iv.length() > 0.0)) throw std::invalid_argument("degenerate interval");
    return integrate([&f](double x) { return f.eval(x); }, iv.lo, iv.hi) / iv.length();
}

double barycenter(const DiscreteMeasure& mu) {
    if (mu.kind() != MeasureKind::Probability) {
        throw std::invalid_argument("non-probability: barycenter needs a probability measure");
    }
    return mu.moment(1);
}

InequalityReport hh_classical_check(const FunctionModel& f, const DiscreteMeasure& mu,
                                    const Interval& iv, double tol) {
    require_domain(f, iv);
    const double slack = kGapMinRel * (1.0 + std::abs(iv.lo) + std::abs(iv.hi));
    if (!mu.supported_in(iv, slack)) {
        throw std::domain_error("support-outside-interval");
    }
    const double bc = barycenter(mu);
    double integral = 0.0;
    for (const Atom& a : mu.atoms()) integral += a.w * f.eval(a.x);
    const double lower = f.eval(bc);
    const double t = iv.length() > 0.0 ? (bc - iv.lo) / iv.length() : 0.5;
    const double upper = (1.0 - t) * f.eval(iv.lo) + t * f.eval(iv.hi);

    InequalityReport report;
    const double scale = std::max({std::abs(lower), std::abs(integral), std::abs(upper)});
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = lower;
    report.rhs = upper;
    report.margin = std::min(integral - lower, upper - integral);
    report.verdict = report.margin >= -eff_tol;
    report.witness["integral"] = integral;
    report.witness["barycenter"] = bc;
    report.witness["lower"] = lower;
    report.witness["upper"] = upper;
    add_shape_warnings(f, iv, report, ShapeNeeds{.convex = true});
    return report;
}

InequalityReport fejer_check(const FunctionModel& f, const std::function<double(double)>& density,
                             const Interval& iv, double tol) {
    require_domain(f, iv);
    if (!(iv.length() > 0.0)) throw std::invalid_argument("degenerate interval");
    const double mass = integrate(density, iv.lo, iv.hi);
    if (!(mass > 0.0)) throw std::invalid_argument("weight-spec: density mass must be positive");
    // Symmetry of the density about the midpoint is what pins the barycenter
    // to the midpoint; check it on a coarse grid.
    double d_scale = 0.0;
    for (int i = 0; i < 17; ++i) {
        d_scale = std::max(d_scale, std::abs(density(iv.lo + iv.length() * i / 16.0)));
    }
    for (int i = 0; i < 17; ++i) {
        const double x = iv.lo + iv.length() * i / 16.0;
        const double mirror = iv.lo + iv.hi - x;
        if (density(x) < -1e-9 * (1.0 + d_scale)) {
            throw std::invalid_argument("weight-spec: density negative at sample point");
        }
        if (std::abs(density(x) - density(mirror)) > 1e-9 * (1.0 + d_scale)) {
            throw std::invalid_argument("weight-spec: density not symmetric about midpoint");
        }
    }
    const double weighted = integrate([&](double x) { return f.eval(x) * density(x); }, iv.lo, iv.hi);
    const double lower = f.eval(iv.midpoint()) * mass;
    const double upper = 0.5 * (f.eval(iv.lo) + f.eval(iv.hi)) * mass;

    InequalityReport report;
    const double scale = std::max({std::abs(lower), std::abs(weighted), std::abs(upper)});
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = lower;
    report.rhs = upper;
    report.margin = std::min(weighted - lower, upper - weighted);
    report.verdict = report.margin >= -eff_tol;
    report.witness["integral"] = weighted;
    report.witness["mass"] = mass;
    report.witness["lower"] = lower;
    report.witness["upper"] = upper;
    add_shape_warnings(f, iv, report, ShapeNeeds{.convex = true});
    return report;
}

InequalityReport bp_bounds_check(const FunctionModel& f, const Interval& iv, double tol) {
    require_domain(f, iv);
    if (!(iv.length() > 0.0)) throw std::invalid_argument("degenerate interval");
    const double a = iv.lo, b = iv.hi;
    const double mean = integral_mean(f, iv);
    const double lower = 0.25 * f.eval(a) + 0.75 * f.eval((a + 2.0 * b) / 3.0);
    const double upper = 0.75 * f.eval((2.0 * a + b) / 3.0) + 0.25 * f.eval(b);

    InequalityReport report;
    const double scale = std::max({std::abs(lower), std::abs(mean), std::abs(upper)});
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = lower;
    report.rhs = upper;
    report.margin = std::min(mean - lower, upper - mean);
    report.verdict = report.margin >= -eff_tol;
    report.witness["lower"] = lower;
    report.witness["mean"] = mean;
    report.witness["upper"] = upper;
    add_shape_warnings(f, iv, report, ShapeNeeds{.convex3 = true});
    return report;
}

InequalityReport chain_check(const FunctionModel& f, const Interval& iv, double tol) {
    require_domain(f, iv);
    if (!(iv.length() > 0.0)) throw std::invalid_argument("degenerate interval");
    const double a = iv.lo, b = iv.hi;
    const double t1 = f.eval(iv.midpoint());
    const double t2 = 0.25 * f.eval(a) + 0.75 * f.eval((a + 2.0 * b) / 3.0);
    const double t3 = integral_mean(f, iv);
    const double t4 = 0.75 * f.eval((2.0 * a + b) / 3.0) + 0.25 * f.eval(b);
    const double t5 = 0.5 * (f.eval(a) + f.eval(b));
    const std::vector<double> terms{t1, t2, t3, t4, t5};

    InequalityReport report;
    double scale = 0.0;
    for (double t : terms) scale = std::max(scale, std::abs(t));
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
        margin = std::min(margin, terms[i + 1] - terms[i]);
    }
    report.lhs = t1;
    report.rhs = t5;
    report.margin = margin;
    report.verdict = margin >= -eff_tol;
    report.witness["terms"] = terms;
    add_shape_warnings(f, iv, report, ShapeNeeds{.convex = true, .convex3 = true});
    return report;
}

InequalityReport weighted_3convex_check(const FunctionModel& f, const WeightSpec& spec,
                                        const Interval& iv, double tol) {
    require_domain(f, iv);
    const double slack = kGapMinRel * (1.0 + std::abs(iv.lo) + std::abs(iv.hi));
    if (!spec.interval.contains(iv, slack) || !iv.contains(spec.interval, slack)) {
        throw std::invalid_argument("weight-spec: weight interval must match the check interval");
    }
    validate_weight(spec);
    const double a = iv.lo, b = iv.hi;
    const double integral_W = integrate(spec.W, a, b);
    const double weighted = integrate([&](double x) { return f.eval(x) * spec.w(x); }, a, b);
    const double boundary = f.eval(b) * spec.W(b) - f.eval(a) * spec.W(a);
    const double middle = weighted - boundary;
    const double left = -0.5 * (f.eval(a, 1) + f.eval(b, 1)) * integral_W;
    const double right = -f.eval(iv.midpoint(), 1) * integral_W;

    InequalityReport report;
    const double scale = std::max({std::abs(left), std::abs(middle), std::abs(right)});
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = left;
    report.rhs = right;
    report.margin = std::min(middle - left, right - middle);
    report.verdict = report.margin >= -eff_tol;
    report.witness["left"] = left;
    report.witness["middle"] = middle;
    report.witness["right"] = right;
    report.witness["integral_W"] = integral_W;
    report.add_case("weight:" + spec.name);
    add_shape_warnings(f, iv, report, ShapeNeeds{.convex3 = true});
    return report;
}

InequalityReport nested_mean_checks(const FunctionModel& f, const Interval& iv,
                                    std::optional<double> epsilon, double tol) {
    require_domain(f, iv);
    if (!(iv.length() > 0.0)) throw std::invalid_argument("degenerate interval");
    const double a = iv.lo, b = iv.hi;
    const double half = 0.5 * iv.length();
    std::vector<double> eps_values;
    if (epsilon.has_value()) {
        const double e = *epsilon;
        if (!(e > 0.0) || !(e < half)) {
            throw std::invalid_argument("epsilon-out-of-range: need 0 < epsilon < (b-a)/2");
        }
        eps_values.push_back(e);
    } else {
        eps_values = {0.1 * half, 0.25 * half, 0.4 * half};
    }
    const double mean = integral_mean(f, iv);

    InequalityReport report;
    double margin = std::numeric_limits<double>::infinity();
    double scale = std::abs(mean);
    nlohmann::json sweeps = nlohmann::json::array();
    for (double e : eps_values) {
        const double inner = integral_mean(f, Interval{a + e, b - e});
        const double strip = (integrate([&](double x) { return f.eval(x); }, a, a + e) +
                              integrate([&](double x) { return f.eval(x); }, b - e, b)) /
                             (2.0 * e);
        margin = std::min(margin, mean - inner);
        margin = std::min(margin, strip - mean);
        scale = std::max({scale, std::abs(inner), std::abs(strip)});
        sweeps.push_back({{"epsilon", e},
                          {"inner_mean", inner},
                          {"strip_mean", strip},
                          {"mean", mean}});
    }
    // Combined display at quarter strips: the strip average with
    // epsilon = (b-a)/4 above the mean, the middle-third mean below it.
    const double quarter = 0.25 * iv.length();
    const double strip_quarter = (integrate([&](double x) { return f.eval(x); }, a, a + quarter) +
                                  integrate([&](double x) { return f.eval(x); }, b - quarter, b)) /
                                 (2.0 * quarter);
    const double third = iv.length() / 3.0;
    const double middle_third = integral_mean(f, Interval{a + third, b - third});
    margin = std::min(margin, strip_quarter - mean);
    margin = std::min(margin, mean - middle_third);
    scale = std::max({scale, std::abs(strip_quarter), std::abs(middle_third)});

    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = middle_third;
    report.rhs = strip_quarter;
    report.margin = margin;
    report.verdict = margin >= -eff_tol;
    report.witness["mean"] = mean;
    report.witness["sweeps"] = sweeps;
    report.witness["quarter_strip_mean"] = strip_quarter;
    report.witness["middle_third_mean"] = middle_third;
    add_shape_warnings(f, iv, report, ShapeNeeds{.convex = true});
    return report;
}

InequalityReport slope_bounds_check(const FunctionModel& f, const Interval& iv, double tol) {
    require_domain(f, iv);
    if (!(iv.length() > 0.0)) throw std::invalid_argument("degenerate interval");
    const double a = iv.lo, b = iv.hi;
    const double slope = (f.eval(b) - f.eval(a)) / (b - a);
    const double mid_deriv = f.eval(iv.midpoint(), 1);
    const double lower = mid_deriv;
    const double upper = 0.5 * (0.5 * (f.eval(a, 1) + f.eval(b, 1)) + mid_deriv);

    InequalityReport report;
    const double scale = std::max({std::abs(lower), std::abs(slope), std::abs(upper)});
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = lower;
    report.rhs = upper;
    report.margin = std::min(slope - lower, upper - slope);
    report.verdict = report.margin >= -eff_tol;
    report.witness["lower"] = lower;
    report.witness["slope"] = slope;
    report.witness["upper"] = upper;
    add_shape_warnings(f, iv, report, ShapeNeeds{.convex3 = true});
    return report;
}

} // namespace hiconvex
