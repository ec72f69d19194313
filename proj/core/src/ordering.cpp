#include "hiconvex/ordering.hpp"

#include "hiconvex/parallel.hpp"
#include "hiconvex/report.hpp"
#include "hiconvex/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hiconvex {

std::vector<QuadPiece> deficiency_function(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                           const Interval& window) {
    const double slack = 1e-12 * (1.0 + window.length());
    if (!nu.supported_in(window, slack) || !mu.supported_in(window, slack))
        throw std::invalid_argument("support-outside-interval: atoms must lie in the window");

    // signed atom list for mu - nu
    std::vector<Atom> diff;
    diff.reserve(mu.size() + nu.size());
    for (const auto& a : mu.atoms()) diff.push_back(a);
    for (const auto& a : nu.atoms()) diff.push_back({a.x, -a.w});
    std::sort(diff.begin(), diff.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });

    std::vector<double> breaks;
    breaks.push_back(window.lo);
    for (const auto& a : diff)
        if (a.x > breaks.back() + slack && a.x < window.hi - slack) breaks.push_back(a.x);
    breaks.push_back(window.hi);

    // On (b_j, b_{j+1}) the active atoms are those with x >= b_{j+1}; the sum
    // of w*(x - t)^2 over them expands to a quadratic in t.
    std::vector<QuadPiece> pieces;
    pieces.reserve(breaks.size() - 1);
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double lo = breaks[j];
        const double hi = breaks[j + 1];
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (const auto& a : diff)
            if (a.x >= hi - slack) {
                s0 += a.w;
                s1 += a.w * a.x;
                s2 += a.w * a.x * a.x;
            }
        pieces.push_back({lo, hi, s0, -2.0 * s1, s2});
    }
    return pieces;
}

OrderVerdict precedes_3cvx(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                           const Interval& window, double tol) {
    OrderVerdict v;
    for (int k = 0; k <= 2; ++k) {
        const double mk_mu = mu.moment(k);
        const double mk_nu = nu.moment(k);
        if (std::abs(mk_mu - mk_nu) > 1e-9 * (1.0 + std::abs(mk_mu))) {
            v.holds = false;
            v.failing_moment = k;
            return v;
        }
    }

    if (tol < 0.0) tol = default_tol(std::abs(mu.moment(2)) + std::abs(nu.moment(2)));
    v.tol = tol;

    const auto pieces = deficiency_function(nu, mu, window);
    double best = std::numeric_limits<double>::infinity();
    double arg = window.lo;
    auto consider = [&](double value, double t) {
        if (value < best) {
            best = value;
            arg = t;
        }
    };
    for (const auto& p : pieces) {
        consider(p(p.lo), p.lo);
        consider(p(p.hi), p.hi);
        if (p.a2 > 0.0) {
            const double vertex = -p.a1 / (2.0 * p.a2);
            if (vertex > p.lo && vertex < p.hi) consider(p(vertex), vertex);
        }
    }
    v.min_deficiency = best;
    v.witness_knot = arg;
    v.holds = best >= -tol;
    return v;
}

std::pair<DiscreteMeasure, DiscreteMeasure> condensation_dispersion(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("condensation: need a < b");
    DiscreteMeasure cond({{a, 0.25}, {(a + 2.0 * b) / 3.0, 0.75}}, MeasureKind::Probability);
    DiscreteMeasure disp({{(2.0 * a + b) / 3.0, 0.75}, {b, 0.25}}, MeasureKind::Probability);
    return {std::move(cond), std::move(disp)};
}

OracleResult monte_carlo_precedes_oracle(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                         const Interval& window, int model_count,
                                         std::uint64_t seed) {
    const double slack = 1e-12 * (1.0 + window.length());
    if (!nu.supported_in(window, slack) || !mu.supported_in(window, slack))
        throw std::invalid_argument("support-outside-interval: atoms must lie in the window");
    if (model_count < 1) throw std::invalid_argument("oracle: model count must be positive");

    OracleResult res;
    res.witness_seed = seed;

    // The signed quadratic test functions integrate exactly as moments.
    for (int k = 0; k <= 2; ++k) {
        const double gap = std::abs(mu.moment(k) - nu.moment(k));
        if (gap > 1e-9 * (1.0 + std::abs(mu.moment(k)))) {
            res.moment_mismatch = true;
            res.holds = false;
            return res;
        }
    }

    const auto integrate_against = [](const FunctionModel& f, const DiscreteMeasure& m) {
        double sum = 0.0;
        for (const auto& a : m.atoms()) sum += a.w * f(a.x);
        return sum;
    };

    // margin_j = tol_j - violation_j; the oracle fails iff some margin < 0
    const auto margin_of = [&](std::size_t j) {
        const std::uint64_t model_seed = Rng::split(seed, j);
        const int knots = 1 + static_cast<int>(j % 5);
        const FunctionModel f = make_random_3convex(model_seed, knots, window);
        const double i_nu = integrate_against(f, nu);
        const double i_mu = integrate_against(f, mu);
        const double tol_j = default_tol(std::abs(i_nu) + std::abs(i_mu));
        return tol_j - (i_nu - i_mu);
    };
    const MinResult worst = parallel_min(static_cast<std::size_t>(model_count), margin_of);

    // recover the violation of the worst model for the report
    const std::uint64_t worst_seed = Rng::split(seed, worst.index);
    const FunctionModel worst_model =
        make_random_3convex(worst_seed, 1 + static_cast<int>(worst.index % 5), window);
    res.worst_violation = integrate_against(worst_model, nu) - integrate_against(worst_model, mu);
    res.holds = worst.value >= 0.0;
    if (!res.holds) {
        res.witness_seed = worst_seed;
        res.witness_index = static_cast<int>(worst.index);
    }
    return res;
}

} // namespace hiconvex
