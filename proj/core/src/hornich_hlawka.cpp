#include "hiconvex/hornich_hlawka.hpp"

#include "hiconvex/interval.hpp"
#include "hiconvex/precheck.hpp"
#include "hiconvex/rng.hpp"
#include "hiconvex/sample_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hiconvex {

namespace {

constexpr double kSignThreshold = 1e-9;

void require_nonneg_domain(const FunctionModel& f, double hi) {
    const double slack = kGapMinRel * (1.0 + std::abs(hi));
    if (!f.domain().contains(Interval{0.0, std::max(hi, 0.0)}, slack)) {
        throw std::domain_error("domain-exceeded: model not defined on the needed range");
    }
}

double max_abs(std::initializer_list<double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

CaseClassification classify_hh_case(double x, double y, double z) {
    CaseClassification c;
    std::array<double, 3> v{x, y, z};
    int negatives = 0;
    for (double t : v) {
        if (t < 0.0) ++negatives;
    }
    c.sign_flipped = negatives >= 2;
    if (c.sign_flipped) {
        for (double& t : v) t = -t;
    }
    std::array<int, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&v](int a, int b) { return v[a] > v[b]; });
    for (int i = 0; i < 3; ++i) {
        c.permutation[i] = idx[i];
        c.canonical[i] = v[idx[i]];
    }
    const double cx = c.canonical[0], cy = c.canonical[1], cz = c.canonical[2];
    if (cz >= 0.0) {
        c.label = "Case1";
        c.covered_by = "order-3-positivity";
        return c;
    }
    const double az = -cz;
    // Strict comparisons so boundary ties fall to the later label; each case
    // records where |z| sits relative to y, x, and x+y.
    if (az > cx + cy) {
        c.label = "Case2a";
        c.covered_by = "reflection-substitution";
    } else if (az > cx) {
        c.label = "Case2b";
        c.covered_by = "majorization-monotonicity";
    } else if (az > cy) {
        c.label = "Case2c";
        c.covered_by = "majorization-monotonicity";
    } else {
        c.label = "Case2d";
        c.covered_by = "majorization-monotonicity";
    }
    return c;
}

double equal_sum_pair_margin(const FunctionModel& g, double a, double b, double c, double d) {
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    const double scale = 1.0 + max_abs({a, b, c, d});
    if (std::abs((a + b) - (c + d)) > kGapMinRel * scale) {
        throw std::invalid_argument("pair-sum-mismatch: outer and inner pairs must share their sum");
    }
    if (c < a - kGapMinRel * scale || d > b + kGapMinRel * scale) {
        throw std::invalid_argument("pair-not-nested: inner pair must lie inside the outer pair");
    }
    return g.eval(a) + g.eval(b) - g.eval(c) - g.eval(d);
}

InequalityReport hh_basic_check(const FunctionModel& f, double x, double y, double z, double tol) {
    if (x < 0.0 || y < 0.0 || z < 0.0) {
        throw std::domain_error("domain-exceeded: nonnegative inputs required");
    }
    const double sum = x + y + z;
    require_nonneg_domain(f, sum);
    const double f0 = f.eval(0.0);
    const std::array<double, 4> lhs_terms{f.eval(x), f.eval(y), f.eval(z), f.eval(sum)};
    const std::array<double, 4> rhs_terms{f.eval(x + y), f.eval(y + z), f.eval(z + x), f0};
    const double lhs = std::accumulate(lhs_terms.begin(), lhs_terms.end(), 0.0);
    const double rhs = std::accumulate(rhs_terms.begin(), rhs_terms.end(), 0.0);

    InequalityReport report;
    const double scale = std::max(max_abs({lhs_terms[0], lhs_terms[1], lhs_terms[2], lhs_terms[3]}),
                                  max_abs({rhs_terms[0], rhs_terms[1], rhs_terms[2], rhs_terms[3]}));
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = lhs - rhs;
    report.verdict = report.margin >= -eff_tol;
    const double hh2_margin = lhs - (rhs - f0);
    report.witness["lhs_terms"] = lhs_terms;
    report.witness["rhs_terms"] = rhs_terms;
    report.witness["f0"] = f0;
    report.witness["hh2_margin"] = hh2_margin;
    report.add_case(hh2_margin >= -eff_tol ? "HH2:holds" : "HH2:fails");
    add_shape_warnings(f, Interval{0.0, std::max(sum, 0.0)}, report, ShapeNeeds{.convex3 = true});
    return report;
}

InequalityReport hh_abs_check(const FunctionModel& f, double x, double y, double z, double tol) {
    const double reach = std::abs(x) + std::abs(y) + std::abs(z);
    require_nonneg_domain(f, reach);
    const CaseClassification cls = classify_hh_case(x, y, z);
    const double f0 = f.eval(0.0);
    const std::array<double, 4> lhs_terms{f.eval(std::abs(x)), f.eval(std::abs(y)),
                                          f.eval(std::abs(z)), f.eval(std::abs(x + y + z))};
    const std::array<double, 4> rhs_terms{f.eval(std::abs(x + y)), f.eval(std::abs(y + z)),
                                          f.eval(std::abs(z + x)), f0};
    const double lhs = std::accumulate(lhs_terms.begin(), lhs_terms.end(), 0.0);
    const double rhs = std::accumulate(rhs_terms.begin(), rhs_terms.end(), 0.0);

    InequalityReport report;
    const double scale = std::max(max_abs({lhs_terms[0], lhs_terms[1], lhs_terms[2], lhs_terms[3]}),
                                  max_abs({rhs_terms[0], rhs_terms[1], rhs_terms[2], rhs_terms[3]}));
    const double eff_tol = tol >= 0.0 ? tol : default_tol(scale);
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = lhs - rhs;
    report.verdict = report.margin >= -eff_tol;
    report.witness["case"] = cls.label;
    report.witness["covered_by"] = cls.covered_by;
    report.witness["canonical"] = cls.canonical;
    report.witness["permutation"] = cls.permutation;
    report.witness["sign_flipped"] = cls.sign_flipped;
    report.witness["lhs_terms"] = lhs_terms;
    report.witness["rhs_terms"] = rhs_terms;
    report.add_case(cls.label);
    report.add_case("covered-by:" + cls.covered_by);
    add_shape_warnings(f, Interval{0.0, reach}, report,
                       ShapeNeeds{.nondecreasing = true, .concave = true, .convex3 = true});
    return report;
}

InequalityReport special_form_check(SpecialForm form, double alpha, double x, double y, double z,
                                    double tol) {
    if (form != SpecialForm::Product && !(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("bad-alpha: exponent must lie in (0, 1]");
    }
    const std::array<double, 4> lhs_args{std::abs(x), std::abs(y), std::abs(z),
                                         std::abs(x + y + z)};
    const std::array<double, 3> rhs_args{std::abs(x + y), std::abs(y + z), std::abs(z + x)};

    InequalityReport report;
    double lhs = 0.0, rhs = 0.0;
    switch (form) {
        case SpecialForm::Rational: {
            auto g = [alpha](double u) {
                const double p = std::pow(u, alpha);
                return p / (1.0 + p);
            };
            for (double u : lhs_args) lhs += g(u);
            for (double u : rhs_args) rhs += g(u);
            report.add_case("form:rational");
            break;
        }
        case SpecialForm::Product: {
            lhs = 1.0;
            rhs = 1.0;
            for (double u : lhs_args) lhs *= 1.0 + u;
            for (double u : rhs_args) rhs *= 1.0 + u;
            report.add_case("form:product");
            break;
        }
        case SpecialForm::Power: {
            for (double u : lhs_args) lhs += std::pow(u, alpha);
            for (double u : rhs_args) rhs += std::pow(u, alpha);
            report.add_case("form:power");
            break;
        }
    }
    const double eff_tol = tol >= 0.0 ? tol : default_tol(std::max(std::abs(lhs), std::abs(rhs)));
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = lhs - rhs;
    report.verdict = report.margin >= -eff_tol;
    report.witness["case"] = classify_hh_case(x, y, z).label;
    if (form != SpecialForm::Product) report.witness["alpha"] = alpha;
    return report;
}

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial: need 0 <= k <= n");
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (n - k + i) is divisible by i at every step.
        const std::uint64_t numer = static_cast<std::uint64_t>(n - k + i);
        std::uint64_t next;
        if (__builtin_mul_overflow(result, numer, &next)) {
            throw std::overflow_error("binomial: value exceeds 64 bits");
        }
        result = next / static_cast<std::uint64_t>(i);
    }
    return result;
}

InequalityReport va_generalized_check(const FunctionModel& f, const std::vector<double>& xs,
                                      int k, double tol) {
    const int n = static_cast<int>(xs.size());
    if (k < 2 || k >= n) throw std::invalid_argument("k-out-of-range: need 2 <= k < n");
    if (n > 24) throw std::invalid_argument("too-many-variables: subset enumeration capped at 24");
    double reach = 0.0, total = 0.0;
    for (double v : xs) {
        reach += std::abs(v);
        total += v;
    }
    require_nonneg_domain(f, reach);

    const double c_each = static_cast<double>(binomial(n - 2, k - 1));
    const double c_total = static_cast<double>(binomial(n - 2, k - 2));
    const double c_zero = static_cast<double>(binomial(n - 1, k));
    const double f0 = f.eval(0.0);

    double sum_f = 0.0;
    double scale = std::abs(f0);
    for (double v : xs) {
        const double fv = f.eval(std::abs(v));
        sum_f += fv;
        scale = std::max(scale, std::abs(fv));
    }
    const double lhs = c_each * sum_f + c_total * f.eval(std::abs(total));

    // Enumerate k-element index combinations in lexicographic order.
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    double subset_sum_f = 0.0;
    std::uint64_t subset_count = 0;
    while (true) {
        double s = 0.0;
        for (int i : idx) s += xs[static_cast<std::size_t>(i)];
        const double fs = f.eval(std::abs(s));
        subset_sum_f += fs;
        scale = std::max(scale, std::abs(fs));
        ++subset_count;
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    const double rhs = subset_sum_f + c_zero * f0;

    InequalityReport report;
    const double coeff_scale = std::max({c_each, c_total, c_zero, 1.0});
    const double eff_tol =
        tol >= 0.0 ? tol : default_tol(scale * coeff_scale * static_cast<double>(n));
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = lhs - rhs;
    report.verdict = report.margin >= -eff_tol;
    report.witness["n"] = n;
    report.witness["k"] = k;
    report.witness["coefficients"] = {{"per_term", c_each}, {"total_term", c_total},
                                      {"zero_term", c_zero}};
    report.witness["subset_count"] = subset_count;
    add_shape_warnings(f, Interval{0.0, reach}, report,
                       ShapeNeeds{.nondecreasing = true, .concave = true, .convex3 = true});
    return report;
}

double freudenthal_value(const std::array<double, 4>& x) {
    double singles = 0.0, pairs = 0.0, triples = 0.0;
    for (int i = 0; i < 4; ++i) {
        singles += std::abs(x[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < 4; ++j) {
            pairs += std::abs(x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)]);
            for (int l = j + 1; l < 4; ++l) {
                triples += std::abs(x[static_cast<std::size_t>(i)] +
                                    x[static_cast<std::size_t>(j)] +
                                    x[static_cast<std::size_t>(l)]);
            }
        }
    }
    const double all = std::abs(x[0] + x[1] + x[2] + x[3]);
    return singles - pairs + triples - all;
}

FreudenthalSearchResult freudenthal_search(std::uint64_t seed, long trials) {
    if (trials < 1) throw std::invalid_argument("trials: need at least one");
    FreudenthalSearchResult result;
    result.seed = seed;

    auto consider = [&result](const std::array<double, 4>& p, double v) {
        if (v > kSignThreshold && (!result.positive.found || v > result.positive.value)) {
            result.positive = {p, v, true};
        }
        if (v < -kSignThreshold && (!result.negative.found || v < result.negative.value)) {
            result.negative = {p, v, true};
        }
    };

    for (int a = -4; a <= 4; ++a) {
        for (int b = -4; b <= 4; ++b) {
            for (int c = -4; c <= 4; ++c) {
                for (int d = -4; d <= 4; ++d) {
                    const std::array<double, 4> p{static_cast<double>(a), static_cast<double>(b),
                                                  static_cast<double>(c), static_cast<double>(d)};
                    consider(p, freudenthal_value(p));
                    ++result.lattice_points;
                }
            }
        }
    }

    Rng rng(seed);
    while ((!result.positive.found || !result.negative.found) && result.random_trials < trials) {
        std::array<double, 4> p{};
        for (double& t : p) t = rng.uniform(-1.0, 1.0);
        consider(p, freudenthal_value(p));
        ++result.random_trials;
    }
    return result;
}

} // namespace hiconvex
