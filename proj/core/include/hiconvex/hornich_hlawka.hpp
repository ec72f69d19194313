#pragma once

#include "hiconvex/function_models.hpp"
#include "hiconvex/report.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hiconvex {

/**
 * Canonical form of a real triple for the absolute-value superadditivity
 * check: flip all signs when at least two entries are strictly negative, then
 * sort in descending order. Afterwards at most the smallest entry is negative
 * and the inequality value is unchanged.
 *
 * Labels: Case1 when all canonical entries are nonnegative; otherwise the
 * case records where |z| falls relative to y, x, and x+y, with ties resolved
 * toward the later label (strict comparisons cascade downward).
 */
struct CaseClassification {
    std::string label;                 // Case1, Case2a, Case2b, Case2c, Case2d
    std::string covered_by;            // proof mechanism that settles the case
    std::array<double, 3> canonical{}; // descending, after the optional flip
    std::array<int, 3> permutation{};  // canonical[i] == sign * input[permutation[i]]
    bool sign_flipped = false;
};

CaseClassification classify_hh_case(double x, double y, double z);

// Margin of the equal-sum pair comparison for convex g: g(a)+g(b) minus
// g(c)+g(d) where {c,d} lies inside [a,b] and a+b = c+d. Nonnegative for
// convex g; sign flips for concave g.
double equal_sum_pair_margin(const FunctionModel& g, double a, double b, double c, double d);

// Superadditivity-type check for 3-convex f on nonnegative points:
//   f(x)+f(y)+f(z)+f(x+y+z) >= f(x+y)+f(y+z)+f(z+x)+f(0).
// The variant without the f(0) term is reported in the witness and as an
// "HH2:*" case tag.
InequalityReport hh_basic_check(const FunctionModel& f, double x, double y, double z,
                                double tol = -1.0);

// Absolute-value form for nondecreasing, concave, 3-convex f on [0,A]:
//   f(|x|)+f(|y|)+f(|z|)+f(|x+y+z|) >= f(|x+y|)+f(|y+z|)+f(|z+x|)+f(0)
// for arbitrary real x,y,z with |x|+|y|+|z| <= A. The report carries the
// case classification and precondition warnings.
InequalityReport hh_abs_check(const FunctionModel& f, double x, double y, double z,
                              double tol = -1.0);

enum class SpecialForm {
    Rational, // terms u^alpha / (1 + u^alpha)
    Product,  // factors (1 + u), multiplied
    Power,    // terms u^alpha
};

// Closed-form instances of the absolute-value inequality. alpha in (0,1] is
// required for Rational and Power and ignored for Product.
InequalityReport special_form_check(SpecialForm form, double alpha, double x, double y, double z,
                                    double tol = -1.0);

// Exact binomial coefficient (n choose k); throws on overflow past 64 bits.
std::uint64_t binomial(int n, int k);

// n-variable generalization over all k-element subset sums:
//   C(n-2,k-1) * sum f(|x_i|) + C(n-2,k-2) * f(|sum x_i|)
//     >= sum over k-subsets of f(|subset sum|) + C(n-1,k) * f(0).
InequalityReport va_generalized_check(const FunctionModel& f, const std::vector<double>& xs,
                                      int k, double tol = -1.0);

// Alternating-sign aggregate of absolute values of all partial sums of four
// reals; takes both signs, which is why the three-variable absolute-value
// inequality does not extend naively to four variables.
double freudenthal_value(const std::array<double, 4>& x);

struct FreudenthalWitness {
    std::array<double, 4> point{};
    double value = 0.0;
    bool found = false;
};

struct FreudenthalSearchResult {
    FreudenthalWitness positive;
    FreudenthalWitness negative;
    long lattice_points = 0;
    long random_trials = 0;
    std::uint64_t seed = 0;
};

// Deterministic sweep of the integer lattice [-4,4]^4 first (extreme values
// win, first hit breaks ties), then seeded random points in [-1,1]^4 only for
// a sign the sweep missed. Not finding a sign is a result, not an error.
FreudenthalSearchResult freudenthal_search(std::uint64_t seed, long trials);

} // namespace hiconvex
