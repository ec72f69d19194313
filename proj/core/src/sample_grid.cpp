#include "hiconvex/sample_grid.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hiconvex {

SampleGrid::SampleGrid(std::vector<double> xs, std::vector<double> ys, double gap_min)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.empty()) throw std::invalid_argument("insufficient-nodes: grid needs at least one node");
    if (xs_.size() != ys_.size())
        throw std::invalid_argument("dimension-mismatch: " + std::to_string(xs_.size()) +
                                    " abscissae vs " + std::to_string(ys_.size()) + " ordinates");
    const double span = xs_.back() - xs_.front();
    gap_min_ = gap_min >= 0.0 ? gap_min : kGapMinRel * span;
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        const double gap = xs_[i] - xs_[i - 1];
        if (gap <= 0.0)
            throw std::invalid_argument("unsorted-data: node " + std::to_string(i) +
                                        " does not increase");
        if (gap < gap_min_)
            throw std::invalid_argument("coincident-nodes: gap " + std::to_string(gap) +
                                        " at node " + std::to_string(i) + " below minimum " +
                                        std::to_string(gap_min_));
    }
}

} // namespace hiconvex
