#pragma once

#include <stdexcept>
#include <string>

namespace hiconvex {

// Closed interval [lo, hi]. Degenerate (lo == hi) is allowed.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo <= hi))
            throw std::invalid_argument("interval: lo must not exceed hi, got [" +
                                        std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    }

    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }

    // Containment with an absolute slack to absorb roundoff at the endpoints.
    bool contains(double x, double slack = 0.0) const {
        return x >= lo - slack && x <= hi + slack;
    }
    bool contains(const Interval& other, double slack = 0.0) const {
        return other.lo >= lo - slack && other.hi <= hi + slack;
    }
};

} // namespace hiconvex
