#include "hiconvex/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hiconvex {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, MeasureKind kind) : kind_(kind) {
    if (atoms.empty()) throw std::invalid_argument("measure: needs at least one atom");
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    const double span = atoms.back().x - atoms.front().x;
    const double merge_gap = 1e-12 * (1.0 + span);
    for (const auto& a : atoms) {
        if (!atoms_.empty() && a.x - atoms_.back().x <= merge_gap)
            atoms_.back().w += a.w;
        else
            atoms_.push_back(a);
    }
    atoms_.erase(std::remove_if(atoms_.begin(), atoms_.end(),
                                [](const Atom& a) { return a.w == 0.0; }),
                 atoms_.end());
    if (atoms_.empty()) throw std::invalid_argument("measure: all atoms cancelled to zero weight");

    if (kind_ == MeasureKind::Probability) {
        double sum = 0.0;
        for (const auto& a : atoms_) {
            if (a.w < 0.0)
                throw std::invalid_argument("non-probability: negative weight " +
                                            std::to_string(a.w) + " at " + std::to_string(a.x));
            sum += a.w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("non-probability: weights sum to " + std::to_string(sum));
    }
}

double DiscreteMeasure::total_mass() const {
    double sum = 0.0;
    for (const auto& a : atoms_) sum += a.w;
    return sum;
}

double DiscreteMeasure::moment(int k) const {
    if (k < 0) throw std::invalid_argument("measure: moment order must be nonnegative");
    double sum = 0.0;
    for (const auto& a : atoms_) sum += a.w * std::pow(a.x, k);
    return sum;
}

double DiscreteMeasure::truncated_square_integral(double t) const {
    double sum = 0.0;
    for (const auto& a : atoms_) {
        const double d = a.x - t;
        if (d > 0.0) sum += a.w * d * d;
    }
    return sum;
}

bool DiscreteMeasure::supported_in(const Interval& iv, double slack) const {
    return atoms_.front().x >= iv.lo - slack && atoms_.back().x <= iv.hi + slack;
}

DiscreteMeasure DiscreteMeasure::translated(double shift) const {
    std::vector<Atom> moved = atoms_;
    for (auto& a : moved) a.x += shift;
    DiscreteMeasure out(std::move(moved), MeasureKind::Signed);
    out.kind_ = kind_;
    return out;
}

} // namespace hiconvex
