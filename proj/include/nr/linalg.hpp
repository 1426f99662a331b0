#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace nr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// ===== types =====

/** Eigendecomposition of a Hermitian matrix: values ascending, columns of
 *  `vectors` are the matching orthonormal eigenvectors. */
struct HermitianEigen {
    RealVector values;
    Matrix vectors;
};

/** Singular value decomposition A = W * diag(sigma) * V^*, sigma descending. */
struct Svd {
    Matrix W;
    RealVector sigma;
    Matrix V;
};

class LinalgError : public std::runtime_error {
public:
    explicit LinalgError(const std::string& msg) : std::runtime_error(msg) {}
};

// ===== basic ops =====

inline Matrix adjoint(const Matrix& a) { return a.adjoint(); }

/// Hermitian part (A + A^*)/2
Matrix real_part(const Matrix& a);

/// skew part divided by i: (A - A^*)/(2i); Hermitian, and A = Re(A) + i*Im(A)
Matrix imag_part(const Matrix& a);

/// Frobenius norm
inline double fro_norm(const Matrix& a) { return a.norm(); }

void require_square(const Matrix& a, const char* who);
void require_finite(const Matrix& a, const char* who);

// ===== decompositions =====

/** Eigendecomposition of (A + A^*)/2.  The input is symmetrized first, so tiny
 *  non-Hermitian rounding noise is tolerated. */
HermitianEigen herm_eigen(const Matrix& a);

/** Full SVD; works for rectangular inputs. */
Svd svd(const Matrix& a);

/// largest singular value
double spectral_norm(const Matrix& a);

/// largest eigenvalue of a Hermitian matrix (closed form for n <= 2)
double lambda_max_hermitian(const Matrix& h);

// ===== matrix functions =====

/** |A| = (A^* A)^{1/2}; defined for rectangular A (result is cols x cols). */
Matrix abs_matrix(const Matrix& a);

/** P^t for Hermitian PSD P and t >= 0.  Eigenvalues below 1e-12 * lambda_max
 *  are treated as exact zeros; 0^0 = 0, so P^0 is the projection onto
 *  range(P).  Raises LinalgError if an eigenvalue is significantly negative. */
Matrix psd_power(const Matrix& p, double t);

/** |A|^p computed directly from the eigensystem of A^* A (avoids the extra
 *  square root that abs_matrix + psd_power would take). */
Matrix abs_power(const Matrix& a, double p);

/** [[A, B], [C, D]] for conformable blocks. */
Matrix block_2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

} // namespace nr
