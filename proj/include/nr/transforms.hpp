#pragma once

#include "nr/linalg.hpp"

namespace nr {

// ===== polar decomposition =====

/** A = isometry * positive, with positive = |A| PSD and isometry a partial
 *  isometry: isometry^* isometry is the orthogonal projection onto
 *  range(positive).  Singular values at or below rank_tol are treated as
 *  zero when deciding the rank. */
struct PolarParts {
    Matrix isometry;
    Matrix positive;
    double rank_tol;
};

/** Polar decomposition via SVD.  rank_tol = n * eps * sigma_max. */
PolarParts polar_decompose(const Matrix& a);

// ===== Aluthge transforms =====

/** Generalized Aluthge transform P^a U P^b for A = U P polar.  Requires
 *  a, b >= 0; powers of P use the PSD calculus of psd_power (0^0 = 0). */
Matrix aluthge_general(const Matrix& a, double s, double t);

/** One-parameter Aluthge transform |A|^t U |A|^{1-t}, t in [0, 1].
 *  t = 1/2 is the classical transform. */
Matrix aluthge_t(const Matrix& a, double t);

} // namespace nr
