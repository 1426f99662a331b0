#include "nr/transforms.hpp"

#include <cmath>
#include <limits>

namespace nr {

PolarParts polar_decompose(const Matrix& a) {
    require_square(a, "polar_decompose");
    require_finite(a, "polar_decompose");
    const auto n = a.rows();
    if (n == 0) return {Matrix(0, 0), Matrix(0, 0), 0.0};

    Svd dec = svd(a);
    const double smax = dec.sigma.size() ? dec.sigma(0) : 0.0;
    const double rank_tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * smax;

    // positive factor |A| = V diag(sigma) V^*
    Matrix p = dec.V * dec.sigma.asDiagonal() * dec.V.adjoint();
    p = 0.5 * (p + p.adjoint());

    // partial isometry W diag(sigma_i > rank_tol ? 1 : 0) V^*
    RealVector gate(dec.sigma.size());
    for (Eigen::Index i = 0; i < dec.sigma.size(); ++i)
        gate(i) = dec.sigma(i) > rank_tol ? 1.0 : 0.0;
    Matrix u = dec.W * gate.asDiagonal() * dec.V.adjoint();

    return {std::move(u), std::move(p), rank_tol};
}

Matrix aluthge_general(const Matrix& a, double s, double t) {
    require_square(a, "aluthge_general");
    if (s < 0.0 || t < 0.0)
        throw LinalgError("aluthge_general: exponents must be nonnegative");
    PolarParts polar = polar_decompose(a);
    return psd_power(polar.positive, s) * polar.isometry * psd_power(polar.positive, t);
}

Matrix aluthge_t(const Matrix& a, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw LinalgError("aluthge_t: t must lie in [0, 1]");
    return aluthge_general(a, t, 1.0 - t);
}

} // namespace nr
