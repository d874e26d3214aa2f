#include "rojsr/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace rojsr::matcore {

void check_square_finite(const Matrix& A, const char* where) {
    if (A.rows() == 0 || A.rows() != A.cols()) {
        std::ostringstream os;
        os << where << ": expected a nonempty square matrix, got " << A.rows() << "x" << A.cols();
        throw InvalidMatrix(os.str());
    }
    if (!A.allFinite())
        throw InvalidMatrix(std::string(where) + ": matrix has non-finite entries");
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    check_square_finite(A, "mat_mul");
    check_square_finite(B, "mat_mul");
    if (A.cols() != B.rows())
        throw DimensionMismatch("mat_mul: operand dimensions differ");
    return A * B;
}

Matrix mat_pow(const Matrix& A, long k) {
    check_square_finite(A, "mat_pow");
    if (k < 0)
        throw std::invalid_argument("mat_pow: exponent must be nonnegative");
    Matrix result = Matrix::Identity(A.rows(), A.cols());
    Matrix base = A;
    while (k > 0) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

double spectral_radius(const Matrix& A) {
    check_square_finite(A, "spectral_radius");
    if (A.rows() == 1)
        return std::abs(A(0, 0));
    Eigen::EigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("spectral_radius: eigenvalue iteration did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double two_norm(const Matrix& A) {
    check_square_finite(A, "two_norm");
    Eigen::JacobiSVD<Matrix> svd(A);
    return svd.singularValues()(0);
}

double frobenius_norm(const Matrix& A) {
    check_square_finite(A, "frobenius_norm");
    return A.norm();
}

RankOneFactors rank_one_factorize(const Matrix& M, double tol) {
    check_square_finite(M, "rank_one_factorize");
    if (!(tol > 0.0))
        throw std::invalid_argument("rank_one_factorize: tol must be positive");
    const double fnorm = M.norm();
    if (fnorm == 0.0)
        throw ZeroMatrix("rank_one_factorize: zero matrix has no rank-one factorization");

    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double sigma2 = M.rows() > 1 ? sv(1) : 0.0;
    if (sigma2 > tol * fnorm) {
        std::ostringstream os;
        os << "rank_one_factorize: second singular value " << sigma2 << " exceeds " << tol
           << " * ||M||_F = " << tol * fnorm;
        throw RankTooHigh(os.str());
    }

    Vector u = sv(0) * svd.matrixU().col(0);
    Vector v = svd.matrixV().col(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-14) {
            if (v(i) < 0.0) {
                v = -v;
                u = -u;
            }
            break;
        }
    }

    const double residual = (M - u * v.transpose()).norm();
    if (residual > tol * fnorm) {
        std::ostringstream os;
        os << "rank_one_factorize: reconstruction residual " << residual
           << " exceeds " << tol << " * ||M||_F = " << tol * fnorm;
        throw RankTooHigh(os.str());
    }
    return RankOneFactors{std::move(u), std::move(v), residual};
}

double norm_root_estimate(const Matrix& A, long k) {
    check_square_finite(A, "norm_root_estimate");
    if (k < 1)
        throw std::invalid_argument("norm_root_estimate: k must be >= 1");

    // Scaled binary exponentiation: every stored matrix is renormalized to
    // unit max-entry and the removed factors accumulate in log space, so the
    // entries of A^k never overflow even for large k.
    const double s0 = A.cwiseAbs().maxCoeff();
    if (s0 == 0.0)
        return 0.0;
    Matrix base = A / s0;
    double base_log = std::log(s0);

    Matrix result = Matrix::Identity(A.rows(), A.cols());
    double result_log = 0.0;
    long e = k;
    while (e > 0) {
        if (e & 1) {
            result = result * base;
            result_log += base_log;
            const double s = result.cwiseAbs().maxCoeff();
            if (s == 0.0)
                return 0.0; // the power is exactly zero
            result /= s;
            result_log += std::log(s);
        }
        e >>= 1;
        if (e) {
            base = base * base;
            base_log *= 2.0;
            const double s = base.cwiseAbs().maxCoeff();
            if (s == 0.0)
                return 0.0; // a remaining factor is zero, so A^k = 0
            base /= s;
            base_log += std::log(s);
        }
    }

    const double log_norm = result_log + std::log(two_norm(result));
    const double log_beta = log_norm / static_cast<double>(k);
    if (log_beta > std::log(std::numeric_limits<double>::max())) {
        std::ostringstream os;
        os << "norm_root_estimate: ||A^k||^(1/k) overflows double (log = " << log_beta << ")";
        throw Overflow(os.str());
    }
    return std::exp(log_beta);
}

Matrix similarity_transform(const Matrix& A, const Matrix& P) {
    check_square_finite(A, "similarity_transform");
    check_square_finite(P, "similarity_transform");
    if (A.rows() != P.rows())
        throw DimensionMismatch("similarity_transform: A and P dimensions differ");

    Eigen::JacobiSVD<Matrix> svd(P, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || smax / smin >= 1e12) {
        std::ostringstream os;
        os << "similarity_transform: transform is singular or ill-conditioned (sigma_min = "
           << smin << ", sigma_max = " << smax << ")";
        throw SingularTransform(os.str());
    }
    Matrix Pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
    return P * A * Pinv;
}

} // namespace rojsr::matcore
