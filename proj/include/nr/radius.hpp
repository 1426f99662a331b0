#pragma once

#include "nr/linalg.hpp"

#include <cstdint>

namespace nr {

// ===== certified scalar =====

/** A scalar with a rigorous two-sided enclosure: the true quantity lies in
 *  [value - error_radius, value + error_radius]. */
struct CertifiedValue {
    double value;
    double error_radius;

    double lo() const { return value - error_radius; }
    double hi() const { return value + error_radius; }
};

// ===== numerical radius =====

/**
 * Certified numerical radius
 *
 *     w(A) = max over theta in [0, 2pi) of lambda_max(Re(e^{i theta} A)),
 *
 * where Re(M) = (M + M^*)/2.  The maximization is run as a branch-and-bound
 * over the circle: a fixed uniform grid of 257 cells seeds a priority queue,
 * and each cell carries two independent upper bounds on the profile
 * f(theta) = lambda_max(cos(theta) Re(A) - sin(theta) Im(A)):
 *
 *   - a Lipschitz crossing bound (f(a) + f(b))/2 + ||A|| h, valid because f
 *     is ||A||-Lipschitz, and
 *   - an envelope bound max(f(a), f(b), 0) / cos(h), valid because f is a
 *     pointwise supremum of sinusoids R cos(theta + phi) with R >= 0; this
 *     one contracts quadratically near a maximum, which is what makes the
 *     solver fast.
 *
 * (h is the cell half-width.)  Cells are split at the golden section until
 * the gap between the incumbent and the largest surviving ceiling is below
 * the requested tolerance.  The returned error_radius additionally absorbs
 * the floating-point error of the eigenvalue evaluations, so the enclosure
 * is honest end to end.
 *
 * tol <= 0 selects the default 1e-9 * max(1, ||A||).
 */
CertifiedValue numerical_radius(const Matrix& a, double tol = 0.0);

/**
 * Sampling lower bound for w(A): alternating maximization from n_starts
 * random unit vectors.  Each iteration replaces x by the top eigenvector of
 * Re(conj(u) A) where u is the phase of <Ax, x>; the objective |<Ax, x>| is
 * nondecreasing along the way.  Deterministic in (n_starts, seed).
 */
double numerical_radius_oracle(const Matrix& a, int n_starts, std::uint64_t seed);

/**
 * Certified sup over theta of ||Re(e^{i theta} A)||.  Mathematically equal to
 * w(A); computed through the norm profile max(lambda_max, -lambda_min) rather
 * than lambda_max alone, so it serves as an independent cross-check of
 * numerical_radius.  tol <= 0 selects 1e-9 * max(1, ||A||).
 */
CertifiedValue sup_theta_real_norm(const Matrix& a, double tol = 0.0);

/**
 * Certified sup over theta of ||Re(e^{i theta} A) * Re(e^{i theta} B)||.
 * Same branch-and-bound as numerical_radius but with the Lipschitz bound
 * only (constant 2 ||A|| ||B||); the envelope bound does not apply to this
 * profile.  tol <= 0 selects 1e-9 * max(1, ||A|| ||B||).
 */
CertifiedValue sup_theta_product_norm(const Matrix& a, const Matrix& b, double tol = 0.0);

} // namespace nr
