#include "nr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nr {

void require_square(const Matrix& a, const char* who) {
    if (a.rows() != a.cols())
        throw LinalgError(std::string(who) + ": expected a square matrix, got " +
                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_finite(const Matrix& a, const char* who) {
    if (!a.allFinite())
        throw LinalgError(std::string(who) + ": matrix has non-finite entries");
}

Matrix real_part(const Matrix& a) {
    require_square(a, "real_part");
    return 0.5 * (a + a.adjoint());
}

Matrix imag_part(const Matrix& a) {
    require_square(a, "imag_part");
    return (a - a.adjoint()) * Complex(0.0, -0.5);
}

// ===== decompositions =====

HermitianEigen herm_eigen(const Matrix& a) {
    require_square(a, "herm_eigen");
    require_finite(a, "herm_eigen");
    Matrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw LinalgError("herm_eigen: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Svd svd(const Matrix& a) {
    require_finite(a, "svd");
    Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double spectral_norm(const Matrix& a) {
    require_finite(a, "spectral_norm");
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    // sqrt(lambda_max(A^* A)) is considerably cheaper than a Jacobi SVD and
    // carries the same backward error bound for our certificates
    if (a.rows() >= a.cols()) {
        Matrix g = a.adjoint() * a;
        return std::sqrt(std::max(0.0, lambda_max_hermitian(g)));
    }
    Matrix g = a * a.adjoint();
    return std::sqrt(std::max(0.0, lambda_max_hermitian(g)));
}

double lambda_max_hermitian(const Matrix& h) {
    const auto n = h.rows();
    if (n == 0) return 0.0;
    if (n == 1) return h(0, 0).real();
    if (n == 2) {
        // closed form: mean of the diagonal plus the half-gap
        const double a = h(0, 0).real();
        const double d = h(1, 1).real();
        const double m = 0.5 * (a + d);
        const double g = 0.5 * (a - d);
        return m + std::hypot(g, std::abs(h(0, 1)));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw LinalgError("lambda_max_hermitian: eigensolver failed to converge");
    return solver.eigenvalues()(n - 1);
}

// ===== matrix functions =====

Matrix abs_matrix(const Matrix& a) {
    require_finite(a, "abs_matrix");
    return abs_power(a, 1.0);
}

namespace {

Matrix psd_function_from_eigs(const HermitianEigen& eig, double t, double lambda_max,
                              const char* who) {
    const double clamp_tol = 1e-12 * std::max(lambda_max, 0.0);
    RealVector powered(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double lam = eig.values(i);
        if (lam < -std::max(clamp_tol, 1e-300))
            throw LinalgError(std::string(who) + ": matrix is not positive semidefinite "
                              "(eigenvalue " + std::to_string(lam) + ")");
        if (lam <= clamp_tol) {
            powered(i) = 0.0; // 0^0 = 0: the zeroth power is the range projection
        } else {
            powered(i) = std::pow(lam, t);
        }
    }
    Matrix out = eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

} // namespace

Matrix psd_power(const Matrix& p, double t) {
    require_square(p, "psd_power");
    require_finite(p, "psd_power");
    if (t < 0.0) throw LinalgError("psd_power: exponent must be nonnegative");
    HermitianEigen eig = herm_eigen(p);
    const double lmax = eig.values.size() ? eig.values(eig.values.size() - 1) : 0.0;
    return psd_function_from_eigs(eig, t, lmax, "psd_power");
}

Matrix abs_power(const Matrix& a, double p) {
    require_finite(a, "abs_power");
    if (p < 0.0) throw LinalgError("abs_power: exponent must be nonnegative");
    Matrix g = a.adjoint() * a; // Hermitian PSD up to rounding
    HermitianEigen eig = herm_eigen(g);
    const double lmax = eig.values.size() ? eig.values(eig.values.size() - 1) : 0.0;
    return psd_function_from_eigs(eig, 0.5 * p, lmax, "abs_power");
}

Matrix block_2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
        b.cols() != d.cols())
        throw LinalgError("block_2x2: blocks are not conformable");
    Matrix out(a.rows() + c.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.topRightCorner(b.rows(), b.cols()) = b;
    out.bottomLeftCorner(c.rows(), c.cols()) = c;
    out.bottomRightCorner(d.rows(), d.cols()) = d;
    return out;
}

} // namespace nr
