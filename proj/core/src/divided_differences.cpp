#include "hiconvex/divided_differences.hpp"

#include "hiconvex/parallel.hpp"
#include "hiconvex/quadrature.hpp"
#include "hiconvex/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hiconvex {

namespace {

void check_distinct(std::span<const double> xs) {
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    const double min_gap = kGapMinRel * (*hi - *lo);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (std::abs(xs[i] - xs[j]) <= min_gap)
                throw std::invalid_argument("coincident-nodes: nodes " + std::to_string(i) +
                                            " and " + std::to_string(j) + " too close");
}

double quotient_recursion(std::span<const double> xs, std::span<const double> ys) {
    std::vector<double> col(ys.begin(), ys.end());
    const std::size_t n = col.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            col[i] = (col[i + 1] - col[i]) / (xs[i + k] - xs[i]);
    return col[0];
}

} // namespace

double divided_difference(const SampleGrid& grid) {
    return quotient_recursion(grid.xs(), grid.ys());
}

double divided_difference(std::span<const double> xs, std::span<const double> ys) {
    if (xs.empty()) throw std::invalid_argument("insufficient-nodes: empty node set");
    if (xs.size() != ys.size())
        throw std::invalid_argument("dimension-mismatch: node and ordinate counts differ");
    if (xs.size() > 1) check_distinct(xs);
    return quotient_recursion(xs, ys);
}

double divided_difference_product_form(std::span<const double> xs, std::span<const double> ys) {
    if (xs.empty()) throw std::invalid_argument("insufficient-nodes: empty node set");
    if (xs.size() != ys.size())
        throw std::invalid_argument("dimension-mismatch: node and ordinate counts differ");
    if (xs.size() > 1) check_distinct(xs);
    double sum = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        double denom = 1.0;
        for (std::size_t k = 0; k < xs.size(); ++k)
            if (k != j) denom *= xs[j] - xs[k];
        sum += ys[j] / denom;
    }
    return sum;
}

DividedDiffTable build_table(const SampleGrid& grid, int max_order) {
    const int top = static_cast<int>(grid.size()) - 1;
    if (max_order < 0 || max_order > top)
        throw std::invalid_argument("order-too-large: order " + std::to_string(max_order) +
                                    " needs " + std::to_string(max_order + 1) + " nodes, have " +
                                    std::to_string(grid.size()));
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(max_order) + 1);
    rows.push_back(grid.ys());
    const auto& xs = grid.xs();
    for (int k = 1; k <= max_order; ++k) {
        const auto& prev = rows.back();
        std::vector<double> row(prev.size() - 1);
        for (std::size_t i = 0; i + 1 < prev.size(); ++i)
            row[i] = (prev[i + 1] - prev[i]) / (xs[i + static_cast<std::size_t>(k)] - xs[i]);
        rows.push_back(std::move(row));
    }
    return DividedDiffTable(xs, std::move(rows));
}

ConvexityVerdict n_convexity_verdict(const SampleGrid& grid, int order, double tol) {
    if (order < 0) throw std::invalid_argument("order-too-large: negative order");
    if (grid.size() < static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("insufficient-nodes: order " + std::to_string(order) +
                                    " verdict needs " + std::to_string(order + 1) +
                                    " nodes, have " + std::to_string(grid.size()));
    if (tol < 0.0) {
        double scale = 0.0;
        for (double y : grid.ys()) scale = std::max(scale, std::abs(y));
        tol = default_tol(scale);
    }
    const auto table = build_table(grid, order);
    const auto& row = table.row(order);
    std::size_t arg = 0;
    double margin = row[0];
    for (std::size_t i = 1; i < row.size(); ++i)
        if (row[i] < margin) {
            margin = row[i];
            arg = i;
        }
    ConvexityVerdict v;
    v.order = order;
    v.holds = margin >= -tol;
    v.margin = margin;
    v.tol = tol;
    v.window_begin = arg;
    v.window_xs.assign(grid.xs().begin() + static_cast<std::ptrdiff_t>(arg),
                       grid.xs().begin() + static_cast<std::ptrdiff_t>(arg + order + 1));
    return v;
}

double iterated_difference(const std::function<double(double)>& f, const Interval& domain,
                           double t, const std::vector<double>& steps) {
    const int n = static_cast<int>(steps.size());
    if (n == 0 || n > 24)
        throw std::invalid_argument("order-too-large: step count must be in [1, 24]");
    double total = 0.0;
    for (double h : steps) {
        if (h < 0.0) throw std::invalid_argument("iterated difference: steps must be nonnegative");
        total += h;
    }
    const double slack = 1e-12 * (1.0 + domain.length() + std::abs(t) + total);
    if (!domain.contains(t, slack) || !domain.contains(t + total, slack))
        throw std::domain_error("domain-exceeded: difference stencil [" + std::to_string(t) + ", " +
                                std::to_string(t + total) + "] leaves the domain");
    double sum = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double point = t;
        int bits = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                point += steps[static_cast<std::size_t>(i)];
                ++bits;
            }
        const double sign = ((n - bits) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * f(point);
    }
    return sum;
}

InequalityReport positive_differences3_check(const std::function<double(double)>& f,
                                             const Interval& domain, double limit,
                                             const SamplingPolicy& policy, double tol) {
    if (limit <= 0.0) throw std::invalid_argument("positive differences: limit must be positive");
    const double slack = 1e-12 * (1.0 + limit);
    if (!domain.contains(Interval(0.0, limit), slack))
        throw std::domain_error("domain-exceeded: check needs the model on [0, " +
                                std::to_string(limit) + "]");
    if (policy.lattice_per_axis < 2)
        throw std::invalid_argument("positive differences: lattice needs at least 2 points per axis");

    const int m = policy.lattice_per_axis;
    std::vector<double> axis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) axis[static_cast<std::size_t>(i)] = limit * i / (m - 1);

    double scale = 0.0;
    for (double v : axis) scale = std::max(scale, std::abs(f(v)));
    if (tol < 0.0) tol = default_tol(scale);

    std::vector<std::array<double, 4>> pts;
    pts.reserve(4096);
    const double budget = limit * (1.0 + 1e-12);
    for (double x : axis)
        for (double y : axis) {
            if (x + y > budget) break;
            for (double z : axis) {
                if (x + y + z > budget) break;
                for (double t : axis) {
                    if (x + y + z + t > budget) break;
                    pts.push_back({x, y, z, t});
                }
            }
        }
    if (policy.random_points > 0) {
        Rng rng(policy.seed);
        int accepted = 0;
        long attempts = 0;
        const long cap = 1000L * policy.random_points;
        while (accepted < policy.random_points && attempts++ < cap) {
            const double x = rng.uniform(0.0, limit);
            const double y = rng.uniform(0.0, limit);
            const double z = rng.uniform(0.0, limit);
            const double t = rng.uniform(0.0, limit);
            if (x + y + z + t <= limit) {
                pts.push_back({x, y, z, t});
                ++accepted;
            }
        }
    }

    const auto delta3 = [&f](const std::array<double, 4>& p) {
        const double x = p[0], y = p[1], z = p[2], t = p[3];
        return f(x + t) + f(y + t) + f(z + t) + f(x + y + z + t) - f(x + y + t) - f(y + z + t) -
               f(z + x + t) - f(t);
    };
    const MinResult best =
        parallel_min(pts.size(), [&](std::size_t i) { return delta3(pts[i]); });

    InequalityReport rep;
    rep.margin = best.value;
    rep.lhs = best.value;
    rep.rhs = 0.0;
    rep.verdict = best.value >= -tol;
    const auto& w = pts[best.index];
    rep.witness = {{"x", w[0]}, {"y", w[1]}, {"z", w[2]}, {"t", w[3]}, {"tol", tol}};
    rep.add_case("lattice:" + std::to_string(m) + "^4");
    if (policy.random_points > 0) rep.add_case("random:" + std::to_string(policy.random_points));
    return rep;
}

double bennett_identity_residual(const std::function<double(double)>& fprime,
                                 const SampleGrid& quadruple) {
    if (quadruple.size() != 4)
        throw std::invalid_argument("insufficient-nodes: residual needs exactly 4 nodes, have " +
                                    std::to_string(quadruple.size()));
    const double a = quadruple.x(0), b = quadruple.x(1), c = quadruple.x(2), d = quadruple.x(3);
    const double dd = divided_difference(quadruple);
    const double i_ab = integrate(fprime, a, b);
    const double i_bc = integrate(fprime, b, c);
    const double i_cd = integrate(fprime, c, d);
    const double rhs = i_ab / ((b - a) * (c - a) * (d - a)) -
                       i_bc * (c + d - a - b) / ((c - a) * (c - b) * (d - a) * (d - b)) +
                       i_cd / ((d - a) * (d - b) * (d - c));
    return std::abs(dd - rhs);
}

} // namespace hiconvex
