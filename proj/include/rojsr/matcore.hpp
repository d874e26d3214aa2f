#pragma once

// Dense small-matrix kernels: products, powers, spectral radius, rank-one
// factorization, norm-based radius estimates.  Everything is real, square,
// and desk-scale (d <= 64); Eigen supplies the decompositions underneath.

#include <Eigen/Dense>

#include "rojsr/errors.hpp"

namespace rojsr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace matcore {

/// Throws InvalidMatrix unless A is square, nonempty, and all-finite.
void check_square_finite(const Matrix& A, const char* where);

/// A * B with dimension checking.
Matrix mat_mul(const Matrix& A, const Matrix& B);

/// A^k by binary exponentiation, k >= 0.  A^0 = I.
Matrix mat_pow(const Matrix& A, long k);

/// Largest eigenvalue modulus.  Absolute accuracy ~1e-10 for d <= 8 with
/// entries up to ~1e3.
double spectral_radius(const Matrix& A);

/// Largest singular value.
double two_norm(const Matrix& A);

double frobenius_norm(const Matrix& A);

/// Factors of a rank-one matrix M = u * v^T with ||v||_2 = 1 and the first
/// nonzero entry of v positive.  |v^T u| equals the spectral radius of M.
struct RankOneFactors {
    Vector u;
    Vector v;
    double residual; ///< Frobenius norm of M - u v^T

    double inner() const { return v.dot(u); }
};

/// SVD-based rank-one factorization.  Throws ZeroMatrix when M = 0 and
/// RankTooHigh when sigma_2 > tol * ||M||_F or the reconstruction residual
/// exceeds the same threshold.
RankOneFactors rank_one_factorize(const Matrix& M, double tol = 1e-9);

/// beta_k = ||A^k||_2^(1/k), an upper bound on the spectral radius for every
/// k >= 1.  Computed by scaled squaring in log space so the power itself never
/// overflows; throws Overflow only when beta_k is not representable.
double norm_root_estimate(const Matrix& A, long k);

/// P * A * P^{-1}.  Throws SingularTransform when P is singular or has
/// condition number >= 1e12.
Matrix similarity_transform(const Matrix& A, const Matrix& P);

} // namespace matcore
} // namespace rojsr
