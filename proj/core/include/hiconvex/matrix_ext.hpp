#pragma once

#include "hiconvex/function_models.hpp"
#include "hiconvex/report.hpp"

#include <cstdint>
#include <vector>

namespace hiconvex {

/**
 * Dense real symmetric matrix with an eagerly computed spectral
 * factorization A = Q diag(eigenvalues) Q^T. Entries are symmetrized at
 * construction; eigenvalues are sorted ascending with Q's columns permuted to
 * match. Instances are immutable afterwards, so concurrent reads are safe.
 *
 * The eigensolver is a cyclic two-sided rotation scheme: dimensions are
 * desk-scale (n <= 64), so simplicity and portability win over asymptotics.
 */
class SymmetricMatrix {
  public:
    SymmetricMatrix(int n, std::vector<double> row_major);
    static SymmetricMatrix identity(int n);
    static SymmetricMatrix diagonal(const std::vector<double>& diag);

    int size() const { return n_; }
    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    // Row-major orthogonal Q; column k pairs with eigenvalues()[k].
    const std::vector<double>& eigenvector_matrix() const { return q_; }
    double frobenius_norm() const;
    double trace() const;
    double min_eigenvalue() const { return eigenvalues_.front(); }
    double max_abs_eigenvalue() const;
    SymmetricMatrix scaled(double s) const;

  private:
    int n_ = 0;
    std::vector<double> entries_;
    std::vector<double> eigenvalues_;
    std::vector<double> q_;
};

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);

// Plain row-major product; not symmetric in general.
std::vector<double> matrix_product(const SymmetricMatrix& a, const SymmetricMatrix& b);
double frobenius_norm(const std::vector<double>& m);
double offdiag_norm(const std::vector<double>& m, int n);
double commutator_norm(const SymmetricMatrix& a, const SymmetricMatrix& b);
// Q^T A Q for a row-major orthogonal Q.
std::vector<double> conjugated(const std::vector<double>& q, int n, const SymmetricMatrix& a);

// Spectral calculus: apply f (or t -> f(|t|)) to the eigenvalues.
SymmetricMatrix matrix_function(const FunctionModel& f, const SymmetricMatrix& a);
SymmetricMatrix matrix_abs_function(const FunctionModel& f, const SymmetricMatrix& a);
// (A^2)^(1/2), computed by mapping eigenvalues through |t|.
SymmetricMatrix modulus(const SymmetricMatrix& a);

// True iff min eigenvalue of (B - A) >= -tol * (1 + ||B - A||_F).
bool loewner_leq(const SymmetricMatrix& a, const SymmetricMatrix& b, double tol = 1e-10);

/**
 * One orthogonal Q with every Q^T A_i Q diagonal (off-diagonal Frobenius mass
 * at most 1e-8 * (1 + ||A_i||_F)). Strategy: factorize a seeded random
 * positive combination, retry a few times, then refine cluster blocks matrix
 * by matrix. Throws noncommuting-family when a pair fails the commutation
 * test and degeneracy-nonresolved when refinement cannot reach the target.
 */
std::vector<double> simultaneous_diagonalize(const std::vector<SymmetricMatrix>& family,
                                             double tol = -1.0, std::uint64_t seed = 0);

/**
 * Absolute-value superadditivity check in the Loewner order for pairwise
 * commuting symmetric A, B, C and scalar f nondecreasing, concave, 3-convex
 * on the needed range:
 *   f(|A|)+f(|B|)+f(|C|)+f(|A+B+C|) >= f(|A+B|)+f(|B+C|)+f(|C+A|)+f(0) I.
 * The f(0) I term is always included. The witness carries the shared-basis
 * per-direction margins and the minimum eigenvalue of the difference.
 */
InequalityReport matrix_hh_check(const FunctionModel& f, const SymmetricMatrix& a,
                                 const SymmetricMatrix& b, const SymmetricMatrix& c,
                                 double tol = -1.0);

} // namespace hiconvex
