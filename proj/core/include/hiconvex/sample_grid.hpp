#pragma once

#include <cstddef>
#include <vector>

namespace hiconvex {

// Fraction of the node span below which two nodes count as coincident.
inline constexpr double kGapMinRel = 1e-9;

/**
 * Strictly increasing abscissae with matching ordinates.
 *
 * Construction rejects unsorted data and gaps below gap_min (defaulting to
 * kGapMinRel times the span), so downstream divided differences never divide
 * by a vanishing node distance.
 */
class SampleGrid {
public:
    SampleGrid(std::vector<double> xs, std::vector<double> ys, double gap_min = -1.0);

    std::size_t size() const { return xs_.size(); }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    double x(std::size_t i) const { return xs_[i]; }
    double y(std::size_t i) const { return ys_[i]; }
    double span() const { return xs_.back() - xs_.front(); }
    double gap_min() const { return gap_min_; }

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    double gap_min_;
};

} // namespace hiconvex
