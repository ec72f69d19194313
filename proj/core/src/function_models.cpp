#include "hiconvex/function_models.hpp"

#include "hiconvex/rng.hpp"
#include "hiconvex/sample_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hiconvex {

namespace {

constexpr double kPi = 3.14159265358979323846;

double require_alpha(const std::optional<double>& alpha, double fallback) {
    return alpha ? *alpha : fallback;
}

// (x - 1) / log x, continuous at 1 (value 1) and at 0 (value 0).
double log_mean_ratio(double x) {
    if (x <= 0.0) return 0.0;
    const double u = x - 1.0;
    if (std::abs(u) < 1e-3) {
        // log x / (x - 1) = 1 - u/2 + u^2/3 - u^3/4 + u^4/5 + O(u^5)
        const double q = 1.0 + u * (-0.5 + u * (1.0 / 3.0 + u * (-0.25 + u * 0.2)));
        return 1.0 / q;
    }
    return u / std::log(x);
}

// log(1 + x) / x, continuous at 0 (value 1).
double log1p_ratio(double x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * (-0.5 + x * (1.0 / 3.0 + x * (-0.25 + x * 0.2)));
    return std::log1p(x) / x;
}

} // namespace

FunctionModel FunctionModel::catalog(const std::string& name, std::optional<double> alpha,
                                     std::optional<Interval> domain) {
    FunctionModel m;
    m.kind_ = Kind::Catalog;
    m.name_ = name;
    Interval dflt(0.0, 10.0);
    bool alpha_allowed = false;

    auto set = [&m](std::function<double(double)> v, std::function<double(double)> d1 = nullptr,
                    std::function<double(double)> d2 = nullptr,
                    std::function<double(double)> d3 = nullptr) {
        m.value_ = std::move(v);
        m.deriv_[0] = std::move(d1);
        m.deriv_[1] = std::move(d2);
        m.deriv_[2] = std::move(d3);
        m.analytic_orders_ = m.deriv_[2] ? 3 : (m.deriv_[1] ? 2 : (m.deriv_[0] ? 1 : 0));
    };

    if (name == "x_over_1plusx") {
        set([](double x) { return x / (1.0 + x); },
            [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); },
            [](double x) { return -2.0 / std::pow(1.0 + x, 3); },
            [](double x) { return 6.0 / std::pow(1.0 + x, 4); });
        m.traits_ = {true, true, false, true, true, false, true};
    } else if (name == "one_minus_exp") {
        alpha_allowed = true;
        const double a = require_alpha(alpha, 1.0);
        if (!(a > 0.0))
            throw std::invalid_argument("bad-alpha: one_minus_exp needs alpha > 0");
        m.alpha_ = a;
        set([a](double x) { return -std::expm1(-a * x); },
            [a](double x) { return a * std::exp(-a * x); },
            [a](double x) { return -a * a * std::exp(-a * x); },
            [a](double x) { return a * a * a * std::exp(-a * x); });
        m.traits_ = {true, true, false, true, true, false, true};
    } else if (name == "log1p") {
        set([](double x) { return std::log1p(x); }, [](double x) { return 1.0 / (1.0 + x); },
            [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); },
            [](double x) { return 2.0 / std::pow(1.0 + x, 3); });
        m.traits_ = {true, true, false, true, true, false, true};
    } else if (name == "neg_xlogx") {
        dflt = Interval(0.0, 3.0);
        set([](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; },
            [](double x) { return -std::log(x) - 1.0; }, [](double x) { return -1.0 / x; },
            [](double x) { return 1.0 / (x * x); });
        m.traits_ = {false, true, false, true, false, false, false};
    } else if (name == "xm1_over_logx") {
        set(&log_mean_ratio);
        m.traits_ = {true, true, false, true, false, false, true};
    } else if (name == "pow" || name == "sqrt") {
        alpha_allowed = name == "pow";
        const double a = name == "sqrt" ? 0.5 : require_alpha(alpha, 0.5);
        if (!((a > 0.0 && a <= 1.0) || a >= 2.0))
            throw std::invalid_argument("bad-alpha: exponent must lie in (0, 1] or [2, inf)");
        m.alpha_ = a;
        set([a](double x) { return std::pow(x, a); },
            [a](double x) { return a * std::pow(x, a - 1.0); },
            [a](double x) { return a * (a - 1.0) * std::pow(x, a - 2.0); },
            [a](double x) { return a * (a - 1.0) * (a - 2.0) * std::pow(x, a - 3.0); });
        if (a <= 1.0)
            m.traits_ = {true, true, a == 1.0, true, true, false, true};
        else
            m.traits_ = {true, false, true, true, false, false, true};
    } else if (name == "sqrt_minus_x2") {
        dflt = Interval(0.0, 1.5);
        set([](double x) { return std::sqrt(x) - x * x; },
            [](double x) { return 0.5 / std::sqrt(x) - 2.0 * x; },
            [](double x) { return -0.25 * std::pow(x, -1.5) - 2.0; },
            [](double x) { return 0.375 * std::pow(x, -2.5); });
        m.traits_ = {false, true, false, true, false, false, false};
    } else if (name == "sinh") {
        set([](double x) { return std::sinh(x); }, [](double x) { return std::cosh(x); },
            [](double x) { return std::sinh(x); }, [](double x) { return std::cosh(x); });
        m.traits_ = {true, false, true, true, false, false, true};
    } else if (name == "cosh") {
        set([](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); },
            [](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); });
        m.traits_ = {true, false, true, true, false, false, true};
    } else if (name == "exp") {
        auto e = [](double x) { return std::exp(x); };
        set(e, e, e, e);
        m.traits_ = {true, false, true, true, false, false, true};
    } else if (name == "exp_neg") {
        set([](double x) { return std::exp(-x); }, [](double x) { return -std::exp(-x); },
            [](double x) { return std::exp(-x); }, [](double x) { return -std::exp(-x); });
        m.traits_ = {false, false, true, false, false, true, true};
    } else if (name == "inv_1plusx") {
        set([](double x) { return 1.0 / (1.0 + x); },
            [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); },
            [](double x) { return 2.0 / std::pow(1.0 + x, 3); },
            [](double x) { return -6.0 / std::pow(1.0 + x, 4); });
        m.traits_ = {false, false, true, false, false, true, true};
    } else if (name == "log1p_over_x") {
        set(&log1p_ratio);
        m.traits_ = {false, false, true, false, false, true, true};
    } else if (name == "x3") {
        set([](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; },
            [](double x) { return 6.0 * x; }, [](double) { return 6.0; });
        m.traits_ = {true, false, true, true, false, false, true};
    } else if (name == "x4") {
        set([](double x) { return x * x * x * x; }, [](double x) { return 4.0 * x * x * x; },
            [](double x) { return 12.0 * x * x; }, [](double x) { return 24.0 * x; });
        m.traits_ = {true, false, true, true, false, false, true};
    } else if (name == "x3over6_minus_sin") {
        dflt = Interval(0.0, kPi / 2.0);
        set([](double x) { return x * x * x / 6.0 - std::sin(x); },
            [](double x) { return 0.5 * x * x - std::cos(x); },
            [](double x) { return x + std::sin(x); }, [](double x) { return 1.0 + std::cos(x); });
        m.traits_ = {false, false, true, true, false, false, false};
    } else {
        throw std::invalid_argument("unknown catalog entry '" + name + "'");
    }

    if (alpha && !alpha_allowed)
        throw std::invalid_argument("bad-alpha: entry '" + name + "' takes no exponent");
    m.domain_ = domain.value_or(dflt);
    if (m.domain_.lo < 0.0)
        throw std::domain_error("domain: catalog entry '" + name +
                                "' is defined on nonnegative arguments");
    return m;
}

FunctionModel FunctionModel::polynomial(std::vector<double> coeffs, Interval domain) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial: empty coefficient list");
    FunctionModel m;
    m.kind_ = Kind::Catalog;
    m.name_ = "poly";
    m.coeffs_ = std::move(coeffs);
    m.domain_ = domain;
    const auto horner = [](const std::vector<double>& c, double x) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    };
    const auto derive = [](std::vector<double> c) {
        std::vector<double> d;
        for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
        if (d.empty()) d.push_back(0.0);
        return d;
    };
    const auto c0 = m.coeffs_;
    const auto c1 = derive(c0);
    const auto c2 = derive(c1);
    const auto c3 = derive(c2);
    m.value_ = [horner, c0](double x) { return horner(c0, x); };
    m.deriv_[0] = [horner, c1](double x) { return horner(c1, x); };
    m.deriv_[1] = [horner, c2](double x) { return horner(c2, x); };
    m.deriv_[2] = [horner, c3](double x) { return horner(c3, x); };
    m.analytic_orders_ = 3;
    return m;
}

FunctionModel FunctionModel::blocks(std::array<double, 3> quad, std::vector<Knot> knots,
                                    Interval domain) {
    for (const auto& k : knots)
        if (k.c < 0.0)
            throw std::invalid_argument("blocks: knot weights must be nonnegative, got " +
                                        std::to_string(k.c));
    std::sort(knots.begin(), knots.end(), [](const Knot& a, const Knot& b) { return a.a < b.a; });
    FunctionModel m;
    m.kind_ = Kind::Blocks;
    m.name_ = "blocks";
    m.quad_ = quad;
    m.knots_ = std::move(knots);
    m.domain_ = domain;
    m.traits_.convex3 = true;
    m.analytic_orders_ = 3;
    return m;
}

double FunctionModel::blocks_eval(double x, int order) const {
    const double c0 = quad_[0], c1 = quad_[1], c2 = quad_[2];
    double acc = 0.0;
    switch (order) {
        case 0:
            acc = c0 + x * (c1 + x * c2);
            for (const auto& k : knots_) {
                const double d = x - k.a;
                if (d > 0.0) acc += k.c * d * d;
            }
            return acc;
        case 1:
            acc = c1 + 2.0 * c2 * x;
            for (const auto& k : knots_) {
                const double d = x - k.a;
                if (d > 0.0) acc += 2.0 * k.c * d;
            }
            return acc;
        case 2:
            // right-continuous convention at knots
            acc = 2.0 * c2;
            for (const auto& k : knots_)
                if (x >= k.a) acc += 2.0 * k.c;
            return acc;
        default:
            return 0.0;
    }
}

double FunctionModel::eval(double x, int order) const {
    if (order < 0 || order > 3)
        throw std::invalid_argument("derivative order must be in [0, 3], got " +
                                    std::to_string(order));
    const double slack = 1e-12 * (1.0 + std::abs(x) + domain_.length());
    if (!domain_.contains(x, slack))
        throw std::domain_error("domain: point " + std::to_string(x) + " outside [" +
                                std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) +
                                "] of '" + name_ + "'");
    if (kind_ == Kind::Blocks) return blocks_eval(x, order);
    if (order == 0) return value_(x);
    const auto& d = deriv_[static_cast<std::size_t>(order - 1)];
    if (d) return d(x);
    return fd_eval(x, order);
}

double FunctionModel::fd_eval(double x, int order) const {
    const double eps = std::numeric_limits<double>::epsilon();
    double h = std::pow(eps, 1.0 / (order + 2)) * (1.0 + std::abs(x));
    // keep the widest stencil (5 one-sided nodes) inside the domain
    h = std::min(h, domain_.length() / 6.5);
    const auto& f = value_;
    const int reach = order == 3 ? 2 : 1;
    const bool central_fits = x - reach * h >= domain_.lo && x + reach * h <= domain_.hi;
    if (central_fits) {
        switch (order) {
            case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
            case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            default:
                return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
                       (2.0 * h * h * h);
        }
    }
    // one-sided stencil pointing into the domain; with step -h the forward
    // formulas estimate (-1)^order times the derivative
    const double step = (x + 4.0 * h <= domain_.hi) ? h : -h;
    const double sign = (order % 2 == 1 && step < 0.0) ? -1.0 : 1.0;
    const double f0 = f(x), f1 = f(x + step), f2 = f(x + 2.0 * step), f3 = f(x + 3.0 * step);
    switch (order) {
        case 1: return sign * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * std::abs(step));
        case 2: return (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (step * step);
        default: {
            const double f4 = f(x + 4.0 * step);
            return sign * (-5.0 * f0 + 18.0 * f1 - 24.0 * f2 + 14.0 * f3 - 3.0 * f4) /
                   (2.0 * std::pow(std::abs(step), 3));
        }
    }
}

double FunctionModel::second_derivative_left(double a) const {
    if (kind_ == Kind::Blocks) {
        double acc = 2.0 * quad_[2];
        for (const auto& k : knots_)
            if (k.a < a) acc += 2.0 * k.c;
        return acc;
    }
    if (deriv_[1]) return deriv_[1](a);
    return fd_eval(a, 2);
}

double FunctionModel::second_derivative_right(double a) const {
    if (kind_ == Kind::Blocks) {
        double acc = 2.0 * quad_[2];
        for (const auto& k : knots_)
            if (k.a <= a) acc += 2.0 * k.c;
        return acc;
    }
    if (deriv_[1]) return deriv_[1](a);
    return fd_eval(a, 2);
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "x_over_1plusx", "one_minus_exp", "log1p",      "neg_xlogx",     "xm1_over_logx",
        "pow",           "sqrt",          "sqrt_minus_x2", "sinh",       "cosh",
        "exp",           "exp_neg",       "inv_1plusx", "log1p_over_x",  "x3",
        "x4",            "x3over6_minus_sin"};
    return names;
}

FunctionModel make_random_3convex(std::uint64_t seed, int knot_count, const Interval& domain) {
    if (knot_count < 0) throw std::invalid_argument("random model: negative knot count");
    if (domain.length() <= 0.0)
        throw std::invalid_argument("random model: domain must have positive length");
    Rng rng(seed);
    std::array<double, 3> quad{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                               rng.uniform(-1.0, 1.0)};
    const double lo = domain.lo + 0.1 * domain.length();
    const double hi = domain.hi - 0.1 * domain.length();
    std::vector<Knot> knots(static_cast<std::size_t>(knot_count));
    for (auto& k : knots) k.a = rng.uniform(lo, hi);
    for (auto& k : knots) k.c = rng.exponential();
    return FunctionModel::blocks(quad, std::move(knots), domain);
}

Parabola tangent_parabola(const FunctionModel& f, double a, ParabolaSide side) {
    const Interval dom = f.domain();
    if (!dom.contains(a, 1e-12 * (1.0 + std::abs(a))))
        throw std::domain_error("domain: tangency point " + std::to_string(a) +
                                " outside the model domain");
    Parabola p;
    p.center = a;
    p.value = f(a);
    p.slope = f.eval(a, 1);
    p.curvature = side == ParabolaSide::Right ? f.second_derivative_right(a)
                                              : f.second_derivative_left(a);

    const double lo = side == ParabolaSide::Right ? a : dom.lo;
    const double hi = side == ParabolaSide::Right ? dom.hi : a;
    double worst = 0.0;
    double scale = 0.0;
    constexpr int kGrid = 64;
    for (int i = 0; i <= kGrid; ++i) {
        const double x = lo + (hi - lo) * i / kGrid;
        const double fx = f(x);
        const double gap = side == ParabolaSide::Right ? fx - p(x) : p(x) - fx;
        worst = std::min(worst, gap);
        scale = std::max(scale, std::abs(fx));
    }
    const double tol = 1e-6 * (1.0 + scale);
    if (worst < -tol)
        throw std::runtime_error("verification-failure: tangent parabola crosses the model by " +
                                 std::to_string(-worst));
    return p;
}

InequalityReport bullen_sign_pattern(const FunctionModel& f, const Interval& window, double alpha,
                                     double beta, double gamma, double tol) {
    const double slack = 1e-12 * (1.0 + window.length());
    if (!f.domain().contains(window, slack))
        throw std::domain_error("domain: window exceeds the model domain");
    const double min_gap = kGapMinRel * window.length();
    if (!(window.lo <= alpha && alpha < beta && beta < gamma && gamma <= window.hi) ||
        beta - alpha < min_gap || gamma - beta < min_gap)
        throw std::invalid_argument("degenerate-interpolation: need a <= alpha < beta < gamma <= b "
                                    "with separated interior nodes");

    const double n0 = alpha, n1 = beta, n2 = gamma;
    const double y0 = f(n0), y1 = f(n1), y2 = f(n2);
    const auto q = [&](double x) {
        return y0 * (x - n1) * (x - n2) / ((n0 - n1) * (n0 - n2)) +
               y1 * (x - n0) * (x - n2) / ((n1 - n0) * (n1 - n2)) +
               y2 * (x - n0) * (x - n1) / ((n2 - n0) * (n2 - n1));
    };

    struct Segment {
        double lo, hi;
        bool quadratic_above;
        const char* label;
    };
    const Segment segments[4] = {{window.lo, alpha, true, "left-tail:quadratic-above"},
                                 {alpha, beta, false, "inner:model-above"},
                                 {beta, gamma, true, "middle:quadratic-above"},
                                 {gamma, window.hi, false, "right-tail:model-above"}};

    double scale = 0.0;
    std::array<double, 4> margins{};
    constexpr int kGrid = 64;
    for (int s = 0; s < 4; ++s) {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= kGrid; ++i) {
            const double x = segments[s].lo + (segments[s].hi - segments[s].lo) * i / kGrid;
            const double fx = f(x);
            scale = std::max(scale, std::abs(fx));
            const double gap = segments[s].quadratic_above ? q(x) - fx : fx - q(x);
            m = std::min(m, gap);
        }
        margins[static_cast<std::size_t>(s)] = m;
    }
    if (tol < 0.0) tol = default_tol(scale);

    InequalityReport rep;
    rep.margin = *std::min_element(margins.begin(), margins.end());
    rep.verdict = rep.margin >= -tol;
    rep.lhs = rep.margin;
    rep.rhs = 0.0;
    // Newton expansion of the interpolant for the witness
    const double dd1 = (y1 - y0) / (n1 - n0);
    const double dd2 = (((y2 - y1) / (n2 - n1)) - dd1) / (n2 - n0);
    rep.witness = {{"alpha", alpha},
                   {"beta", beta},
                   {"gamma", gamma},
                   {"q_coeffs", {y0 - dd1 * n0 + dd2 * n0 * n1, dd1 - dd2 * (n0 + n1), dd2}},
                   {"segment_margins", margins},
                   {"tol", tol}};
    for (const auto& seg : segments) rep.add_case(seg.label);
    return rep;
}

} // namespace hiconvex
