#include "hiconvex/matrix_ext.hpp"

#include "hiconvex/interval.hpp"
#include "hiconvex/precheck.hpp"
#include "hiconvex/rng.hpp"
#include "hiconvex/sample_grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hiconvex {

namespace {

constexpr int kMaxDim = 64;
constexpr int kSweepCap = 64;
constexpr double kOffdiagRel = 1e-14;
constexpr double kDiagTargetRel = 1e-8;
constexpr double kClusterSplitRel = 1e-9;
constexpr int kCombinationRetries = 8;

double frob(const std::vector<double>& m) {
    double s = 0.0;
    for (double v : m) s += v * v;
    return std::sqrt(s);
}

double offdiag(const std::vector<double>& m, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                const double v = m[static_cast<std::size_t>(i) * n + j];
                s += v * v;
            }
        }
    }
    return std::sqrt(s);
}

/**
 * Cyclic two-sided rotation sweeps on a (row-major, overwritten); q
 * accumulates the orthogonal transform so that on return q^T a_in q is the
 * final near-diagonal a. Converged when the off-diagonal Frobenius mass drops
 * below threshold.
 */
void rotate_to_diagonal(int n, std::vector<double>& a, std::vector<double>& q, double threshold) {
    q.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i) * n + i] = 1.0;
    if (n == 1) return;
    auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < kSweepCap; ++sweep) {
        if (offdiag(a, n) <= threshold) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int r = p + 1; r < n; ++r) {
                const double apr = at(p, r);
                if (apr == 0.0) continue;
                const double theta = (at(r, r) - at(p, p)) / (2.0 * apr);
                const double sgn = theta >= 0.0 ? 1.0 : -1.0;
                const double t = sgn / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                at(p, p) -= t * apr;
                at(r, r) += t * apr;
                at(p, r) = 0.0;
                at(r, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == r) continue;
                    const double aip = at(i, p);
                    const double air = at(i, r);
                    at(i, p) = aip - s * (air + tau * aip);
                    at(p, i) = at(i, p);
                    at(i, r) = air + s * (aip - tau * air);
                    at(r, i) = at(i, r);
                }
                for (int i = 0; i < n; ++i) {
                    const double qip = q[static_cast<std::size_t>(i) * n + p];
                    const double qir = q[static_cast<std::size_t>(i) * n + r];
                    q[static_cast<std::size_t>(i) * n + p] = qip - s * (qir + tau * qip);
                    q[static_cast<std::size_t>(i) * n + r] = qir + s * (qip - tau * qir);
                }
            }
        }
    }
    if (offdiag(a, n) > threshold) {
        throw std::runtime_error("eigensolver-nonconvergence: rotation sweep cap reached");
    }
}

SymmetricMatrix spectral_map(const SymmetricMatrix& a, const std::function<double(double)>& phi) {
    const int n = a.size();
    const std::vector<double>& q = a.eigenvector_matrix();
    std::vector<double> mapped(a.eigenvalues());
    for (double& v : mapped) v = phi(v);
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) {
                s += q[static_cast<std::size_t>(i) * n + k] * mapped[static_cast<std::size_t>(k)] *
                     q[static_cast<std::size_t>(j) * n + k];
            }
            out[static_cast<std::size_t>(i) * n + j] = s;
            out[static_cast<std::size_t>(j) * n + i] = s;
        }
    }
    return SymmetricMatrix(n, std::move(out));
}

void require_same_size(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension-mismatch: matrices must share their size");
    }
}

void require_commuting(const SymmetricMatrix& a, const SymmetricMatrix& b, double rel) {
    const double bound = rel * (1.0 + a.frobenius_norm()) * (1.0 + b.frobenius_norm());
    if (commutator_norm(a, b) > bound) {
        throw std::invalid_argument("noncommuting-family: commutator above tolerance");
    }
}

} // namespace

SymmetricMatrix::SymmetricMatrix(int n, std::vector<double> row_major) : n_(n) {
    if (n < 1 || n > kMaxDim) {
        throw std::invalid_argument("dimension-cap: size must be in [1, 64]");
    }
    if (row_major.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("dimension-mismatch: entry count must be n*n");
    }
    entries_ = std::move(row_major);
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            const double avg = 0.5 * (entries_[static_cast<std::size_t>(i) * n_ + j] +
                                      entries_[static_cast<std::size_t>(j) * n_ + i]);
            entries_[static_cast<std::size_t>(i) * n_ + j] = avg;
            entries_[static_cast<std::size_t>(j) * n_ + i] = avg;
        }
    }
    std::vector<double> work(entries_);
    const double threshold = kOffdiagRel * (1.0 + frob(entries_));
    rotate_to_diagonal(n_, work, q_, threshold);
    eigenvalues_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) eigenvalues_[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i) * n_ + i];
    std::vector<int> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [this](int x, int y) {
        return eigenvalues_[static_cast<std::size_t>(x)] < eigenvalues_[static_cast<std::size_t>(y)];
    });
    std::vector<double> sorted_vals(static_cast<std::size_t>(n_));
    std::vector<double> sorted_q(q_.size());
    for (int k = 0; k < n_; ++k) {
        sorted_vals[static_cast<std::size_t>(k)] = eigenvalues_[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        for (int i = 0; i < n_; ++i) {
            sorted_q[static_cast<std::size_t>(i) * n_ + k] =
                q_[static_cast<std::size_t>(i) * n_ + order[static_cast<std::size_t>(k)]];
        }
    }
    eigenvalues_ = std::move(sorted_vals);
    q_ = std::move(sorted_q);
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1.0;
    return SymmetricMatrix(n, std::move(e));
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& diag) {
    const int n = static_cast<int>(diag.size());
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = diag[static_cast<std::size_t>(i)];
    return SymmetricMatrix(n, std::move(e));
}

double SymmetricMatrix::frobenius_norm() const { return frob(entries_); }

double SymmetricMatrix::trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += entries_[static_cast<std::size_t>(i) * n_ + i];
    return s;
}

double SymmetricMatrix::max_abs_eigenvalue() const {
    return std::max(std::abs(eigenvalues_.front()), std::abs(eigenvalues_.back()));
}

SymmetricMatrix SymmetricMatrix::scaled(double s) const {
    std::vector<double> e(entries_);
    for (double& v : e) v *= s;
    return SymmetricMatrix(n_, std::move(e));
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    require_same_size(a, b);
    std::vector<double> e(a.entries());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
    return SymmetricMatrix(a.size(), std::move(e));
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    require_same_size(a, b);
    std::vector<double> e(a.entries());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
    return SymmetricMatrix(a.size(), std::move(e));
}

std::vector<double> matrix_product(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    require_same_size(a, b);
    const int n = a.size();
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                out[static_cast<std::size_t>(i) * n + j] += aik * b(k, j);
            }
        }
    }
    return out;
}

double frobenius_norm(const std::vector<double>& m) { return frob(m); }

double offdiag_norm(const std::vector<double>& m, int n) { return offdiag(m, n); }

double commutator_norm(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    std::vector<double> ab = matrix_product(a, b);
    const std::vector<double> ba = matrix_product(b, a);
    for (std::size_t i = 0; i < ab.size(); ++i) ab[i] -= ba[i];
    return frob(ab);
}

std::vector<double> conjugated(const std::vector<double>& q, int n, const SymmetricMatrix& a) {
    // tmp = A Q, out = Q^T tmp
    std::vector<double> tmp(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                tmp[static_cast<std::size_t>(i) * n + j] += aik * q[static_cast<std::size_t>(k) * n + j];
            }
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double qki = q[static_cast<std::size_t>(k) * n + i];
            if (qki == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                out[static_cast<std::size_t>(i) * n + j] += qki * tmp[static_cast<std::size_t>(k) * n + j];
            }
        }
    }
    return out;
}

SymmetricMatrix matrix_function(const FunctionModel& f, const SymmetricMatrix& a) {
    for (double lam : a.eigenvalues()) {
        if (!f.domain().contains(lam, kGapMinRel * (1.0 + std::abs(lam)))) {
            throw std::domain_error("eigenvalue-outside-domain: spectral point not in model domain");
        }
    }
    return spectral_map(a, [&f](double t) { return f.eval(t); });
}

SymmetricMatrix matrix_abs_function(const FunctionModel& f, const SymmetricMatrix& a) {
    for (double lam : a.eigenvalues()) {
        if (!f.domain().contains(std::abs(lam), kGapMinRel * (1.0 + std::abs(lam)))) {
            throw std::domain_error("eigenvalue-outside-domain: spectral point not in model domain");
        }
    }
    return spectral_map(a, [&f](double t) { return f.eval(std::abs(t)); });
}

SymmetricMatrix modulus(const SymmetricMatrix& a) {
    return spectral_map(a, [](double t) { return std::abs(t); });
}

bool loewner_leq(const SymmetricMatrix& a, const SymmetricMatrix& b, double tol) {
    require_same_size(a, b);
    const SymmetricMatrix d = b - a;
    return d.min_eigenvalue() >= -tol * (1.0 + d.frobenius_norm());
}

std::vector<double> simultaneous_diagonalize(const std::vector<SymmetricMatrix>& family,
                                             double tol, std::uint64_t seed) {
    if (family.empty()) throw std::invalid_argument("empty-family");
    const int n = family.front().size();
    for (const SymmetricMatrix& m : family) require_same_size(family.front(), m);
    const double commute_rel = tol >= 0.0 ? tol : 1e-9;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            require_commuting(family[i], family[j], commute_rel);
        }
    }
    std::vector<double> targets;
    targets.reserve(family.size());
    for (const SymmetricMatrix& m : family) {
        targets.push_back(kDiagTargetRel * (1.0 + m.frobenius_norm()));
    }
    auto diagonalizes_all = [&](const std::vector<double>& q) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (offdiag_norm(conjugated(q, n, family[i]), n) > targets[i]) return false;
        }
        return true;
    };

    auto combine = [&family, n](Rng& rng) {
        std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
        for (const SymmetricMatrix& m : family) {
            const double w = rng.uniform(0.5, 2.0);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += w * m.entries()[i];
        }
        return SymmetricMatrix(n, std::move(e));
    };

    // A generic positive combination separates the shared eigenspaces unless
    // the family is spectrally degenerate; a few reseeded retries are cheap.
    for (int attempt = 0; attempt < kCombinationRetries; ++attempt) {
        Rng rng(Rng::split(seed, static_cast<std::uint64_t>(attempt)));
        const SymmetricMatrix m = combine(rng);
        if (diagonalizes_all(m.eigenvector_matrix())) return m.eigenvector_matrix();
    }

    // Block refinement: start from the first combination's basis, then, one
    // family member at a time, re-diagonalize the restriction to each cluster
    // block and split the blocks at eigenvalue gaps.
    Rng rng0(Rng::split(seed, 0));
    const SymmetricMatrix m0 = combine(rng0);
    std::vector<double> q = m0.eigenvector_matrix();
    std::vector<std::pair<int, int>> blocks;
    {
        const std::vector<double>& lam = m0.eigenvalues();
        const double scale = 1.0 + std::max(std::abs(lam.front()), std::abs(lam.back()));
        int start = 0;
        for (int i = 0; i + 1 < n; ++i) {
            if (lam[static_cast<std::size_t>(i + 1)] - lam[static_cast<std::size_t>(i)] >
                kClusterSplitRel * scale) {
                blocks.emplace_back(start, i + 1);
                start = i + 1;
            }
        }
        blocks.emplace_back(start, n);
    }

    for (const SymmetricMatrix& m : family) {
        std::vector<double> t = conjugated(q, n, m);
        std::vector<std::pair<int, int>> next_blocks;
        for (const auto& [lo, hi] : blocks) {
            const int len = hi - lo;
            if (len == 1) {
                next_blocks.emplace_back(lo, hi);
                continue;
            }
            std::vector<double> sub(static_cast<std::size_t>(len) * len);
            for (int i = 0; i < len; ++i) {
                for (int j = 0; j < len; ++j) {
                    sub[static_cast<std::size_t>(i) * len + j] =
                        t[static_cast<std::size_t>(lo + i) * n + (lo + j)];
                }
            }
            // Same rotation scheme on the restricted block.
            std::vector<double> sub_q;
            std::vector<double> sub_work(sub);
            rotate_to_diagonal(len, sub_work, sub_q, kOffdiagRel * (1.0 + frob(sub)));
            std::vector<double> mu(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i) mu[static_cast<std::size_t>(i)] = sub_work[static_cast<std::size_t>(i) * len + i];
            std::vector<int> order(static_cast<std::size_t>(len));
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&mu](int x, int y) {
                return mu[static_cast<std::size_t>(x)] < mu[static_cast<std::size_t>(y)];
            });
            // q[:, lo:hi] <- q[:, lo:hi] * sub_q (columns permuted ascending).
            std::vector<double> updated(static_cast<std::size_t>(n) * len, 0.0);
            for (int i = 0; i < n; ++i) {
                for (int k = 0; k < len; ++k) {
                    const int col = order[static_cast<std::size_t>(k)];
                    double s = 0.0;
                    for (int j = 0; j < len; ++j) {
                        s += q[static_cast<std::size_t>(i) * n + (lo + j)] *
                             sub_q[static_cast<std::size_t>(j) * len + col];
                    }
                    updated[static_cast<std::size_t>(i) * len + k] = s;
                }
            }
            for (int i = 0; i < n; ++i) {
                for (int k = 0; k < len; ++k) {
                    q[static_cast<std::size_t>(i) * n + (lo + k)] =
                        updated[static_cast<std::size_t>(i) * len + k];
                }
            }
            std::vector<double> mu_sorted(static_cast<std::size_t>(len));
            for (int k = 0; k < len; ++k) mu_sorted[static_cast<std::size_t>(k)] = mu[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
            const double scale = 1.0 + std::max(std::abs(mu_sorted.front()), std::abs(mu_sorted.back()));
            int start = lo;
            for (int i = 0; i + 1 < len; ++i) {
                if (mu_sorted[static_cast<std::size_t>(i + 1)] - mu_sorted[static_cast<std::size_t>(i)] >
                    kClusterSplitRel * scale) {
                    next_blocks.emplace_back(start, lo + i + 1);
                    start = lo + i + 1;
                }
            }
            next_blocks.emplace_back(start, hi);
        }
        blocks = std::move(next_blocks);
    }

    if (!diagonalizes_all(q)) {
        throw std::runtime_error("degeneracy-nonresolved: block refinement missed the target");
    }
    return q;
}

InequalityReport matrix_hh_check(const FunctionModel& f, const SymmetricMatrix& a,
                                 const SymmetricMatrix& b, const SymmetricMatrix& c,
                                 double tol) {
    require_same_size(a, b);
    require_same_size(a, c);
    require_commuting(a, b, 1e-9);
    require_commuting(b, c, 1e-9);
    require_commuting(c, a, 1e-9);
    const int n = a.size();
    const SymmetricMatrix sum = a + b + c;
    const SymmetricMatrix ab = a + b;
    const SymmetricMatrix bc = b + c;
    const SymmetricMatrix ca = c + a;

    const SymmetricMatrix lhs_m = matrix_abs_function(f, a) + matrix_abs_function(f, b) +
                                  matrix_abs_function(f, c) + matrix_abs_function(f, sum);
    const SymmetricMatrix f0_term = SymmetricMatrix::identity(n).scaled(f.eval(0.0));
    const SymmetricMatrix rhs_m = matrix_abs_function(f, ab) + matrix_abs_function(f, bc) +
                                  matrix_abs_function(f, ca) + f0_term;
    const SymmetricMatrix diff = lhs_m - rhs_m;

    InequalityReport report;
    const double eff_tol = tol >= 0.0 ? tol : default_tol(diff.frobenius_norm());
    report.lhs = lhs_m.trace() / n;
    report.rhs = rhs_m.trace() / n;
    report.margin = diff.min_eigenvalue();
    report.verdict = report.margin >= -eff_tol;

    const std::vector<double> q = simultaneous_diagonalize({a, b, c});
    const std::vector<double> d_in_basis = conjugated(q, n, diff);
    std::vector<double> margins(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) margins[static_cast<std::size_t>(i)] = d_in_basis[static_cast<std::size_t>(i) * n + i];
    report.witness["eigen_margins"] = margins;
    report.witness["min_eigenvalue"] = diff.min_eigenvalue();
    report.witness["f0"] = f.eval(0.0);

    double reach = 0.0;
    for (const SymmetricMatrix* m : {&a, &b, &c, &sum, &ab, &bc, &ca}) {
        reach = std::max(reach, m->max_abs_eigenvalue());
    }
    add_shape_warnings(f, Interval{0.0, reach}, report,
                       ShapeNeeds{.nondecreasing = true, .concave = true, .convex3 = true});
    return report;
}

} // namespace hiconvex
