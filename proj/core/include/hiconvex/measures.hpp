#pragma once

#include "hiconvex/interval.hpp"

#include <cstddef>
#include <vector>

namespace hiconvex {

struct Atom {
    double x = 0.0;
    double w = 0.0;
};

enum class MeasureKind { Probability, Signed };

/**
 * Finitely supported measure. Atoms are sorted at construction, coincident
 * locations are merged, and exact zero weights are dropped. Probability kind
 * additionally requires nonnegative weights summing to 1 within 1e-12.
 */
class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<Atom> atoms, MeasureKind kind = MeasureKind::Probability);

    MeasureKind kind() const { return kind_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    double total_mass() const;
    double moment(int k) const;                      // sum of w * x^k
    double truncated_square_integral(double t) const; // sum of w * ((x - t)_+)^2
    bool supported_in(const Interval& iv, double slack = 0.0) const;

    DiscreteMeasure translated(double shift) const;

private:
    std::vector<Atom> atoms_;
    MeasureKind kind_;
};

} // namespace hiconvex
