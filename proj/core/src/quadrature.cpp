#include "hiconvex/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hiconvex {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return (h / 6.0) * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, double floor, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = (left + right - whole) / 15.0;
    // The floor stops refinement once the correction drops below the
    // representable resolution of the running total (endpoint derivative
    // singularities would otherwise halve the shrinking tolerance forever).
    if (std::abs(err) <= std::max(tol, floor)) return left + right + err;
    if (depth >= kQuadMaxDepth)
        throw std::runtime_error("quadrature-nonconvergence: depth cap " +
                                 std::to_string(kQuadMaxDepth) + " hit on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "]");
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, floor, depth + 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, floor, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(fa, fm, fb, b - a);
    const double floor = std::ldexp(1.0 + std::abs(whole), -52);
    return sign * adapt(f, a, b, fa, fm, fb, whole, abs_tol, floor, 0);
}

} // namespace hiconvex
