#pragma once

#include "hiconvex/interval.hpp"
#include "hiconvex/report.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hiconvex {

// Shape guarantees an entry declares on its default domain.
struct ModelTraits {
    bool nondecreasing = false;
    bool concave = false;
    bool convex = false;
    bool convex3 = false;            // order-3 convex
    bool bernstein_class = false;    // nonnegative with completely monotone derivative
    bool completely_monotone = false;
    bool nonnegative = false;
};

// One truncated-power block: c * ((x - a)_+)^2 with c >= 0.
struct Knot {
    double a = 0.0;
    double c = 0.0;
};

/**
 * Evaluable scalar function over a closed domain.
 *
 * Two kinds: named catalog entries (closed forms, analytic derivatives where
 * available, finite differences otherwise) and piecewise-quadratic block
 * models (a quadratic plus nonnegative truncated-square terms, which makes
 * every block model 3-convex by construction).
 */
class FunctionModel {
public:
    static FunctionModel catalog(const std::string& name, std::optional<double> alpha = {},
                                 std::optional<Interval> domain = {});
    static FunctionModel polynomial(std::vector<double> coeffs, Interval domain);
    static FunctionModel blocks(std::array<double, 3> quad, std::vector<Knot> knots,
                                Interval domain);

    double operator()(double x) const { return eval(x, 0); }

    // Derivative orders 0..3; analytic when the entry provides one, otherwise
    // central differences with step eps^(1/(order+2)) * (1 + |x|), switching
    // to one-sided stencils at the domain ends.
    double eval(double x, int order = 0) const;

    const Interval& domain() const { return domain_; }
    const ModelTraits& traits() const { return traits_; }
    const std::string& name() const { return name_; }
    bool is_blocks() const { return kind_ == Kind::Blocks; }
    std::optional<double> alpha() const { return alpha_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::array<double, 3>& quad() const { return quad_; }
    const std::vector<Knot>& knots() const { return knots_; }

    // Highest derivative order evaluated in closed form (0 = values only).
    int analytic_orders() const { return analytic_orders_; }

    // Knot-aware one-sided curvature; the two sides differ only for block
    // models with a knot at the point.
    double second_derivative_left(double a) const;
    double second_derivative_right(double a) const;

private:
    enum class Kind { Catalog, Blocks };

    FunctionModel() = default;
    double fd_eval(double x, int order) const;
    double blocks_eval(double x, int order) const;

    Kind kind_ = Kind::Catalog;
    std::string name_;
    std::optional<double> alpha_;
    std::vector<double> coeffs_;
    std::array<double, 3> quad_{0.0, 0.0, 0.0};
    std::vector<Knot> knots_;
    Interval domain_;
    ModelTraits traits_;
    int analytic_orders_ = 0;
    std::function<double(double)> value_;
    std::array<std::function<double(double)>, 3> deriv_;
};

// Fixed catalog names (excludes the coefficient-parametrized "poly").
const std::vector<std::string>& catalog_names();

/**
 * Seeded 3-convex block model: quadratic coefficients uniform in [-1, 1],
 * knot locations uniform in the middle 80% of the domain, knot weights
 * exponential with unit mean. Same seed, same model.
 */
FunctionModel make_random_3convex(std::uint64_t seed, int knot_count, const Interval& domain);

// p(x) = value + slope*(x - center) + 0.5*curvature*(x - center)^2.
struct Parabola {
    double center = 0.0;
    double value = 0.0;
    double slope = 0.0;
    double curvature = 0.0;

    double operator()(double x) const {
        const double d = x - center;
        return value + slope * d + 0.5 * curvature * d * d;
    }
};

enum class ParabolaSide { Left, Right };

/**
 * Osculating parabola at `a` built from the one-sided curvature.
 *
 * For a 3-convex model the Right parabola stays below the model on
 * [a, domain.hi] and the Left parabola stays above it on [domain.lo, a];
 * both facts are verified on a grid and a violation beyond tolerance throws
 * a verification-failure error.
 */
Parabola tangent_parabola(const FunctionModel& f, double a, ParabolaSide side);

/**
 * Sign pattern of the quadratic interpolating f at alpha < beta < gamma:
 * the quadratic dominates f on [a, alpha] and [beta, gamma], and f dominates
 * the quadratic on [alpha, beta] and [gamma, b]. Margins per segment.
 */
InequalityReport bullen_sign_pattern(const FunctionModel& f, const Interval& window, double alpha,
                                     double beta, double gamma, double tol = -1.0);

} // namespace hiconvex
