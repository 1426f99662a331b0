#include "nr/radius.hpp"
#include "nr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace nr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kGridCells = 257;                 // initial uniform subdivision
constexpr double kGolden = 0.38196601125010515; // (3 - sqrt(5))/2 split point
constexpr std::size_t kMaxEvals = 4u << 20;     // hard safety stop

struct Cell {
    double ceiling; // upper bound for f on [a, b]
    double a, b;
    double fa, fb;
};

struct CellOrder {
    bool operator()(const Cell& x, const Cell& y) const { return x.ceiling < y.ceiling; }
};

/**
 * Branch-and-bound maximization of a 2pi-periodic profile f.
 *
 *   lipschitz        global Lipschitz constant for f
 *   envelope_phase   when positive, f is assumed to be a pointwise sup of
 *                    members d + R cos(envelope_phase * theta + phi), R >= 0,
 *                    enabling a quadratic cell bound: with k = 1/cos(H) for
 *                    phase half-width H and m = max(f(a), f(b), 0),
 *                      max over cell <= max(m k + offset (k - 1), offset).
 *                    (For a member with constant term d, max <= d +
 *                    max(edge - d, 0)/cos(H); maximize over d in
 *                    [-offset, offset].)  Pass 0 to disable.
 *   envelope_offset  rigorous bound on |d| over all members (0 when the
 *                    members are pure sinusoids)
 *   eval_slack       rigorous bound on the evaluation error of f itself;
 *                    folded into the ceilings and the final radius
 *
 * Returns midpoint +/- half-gap once the gap closes below 2 * tol.
 */
CertifiedValue maximize_on_circle(const std::function<double(double)>& f, double lipschitz,
                                  int envelope_phase, double envelope_offset,
                                  double eval_slack, double tol) {
    const auto ceiling_of = [&](double a, double b, double fa, double fb) {
        const double h = 0.5 * (b - a);
        double c = 0.5 * (fa + fb) + lipschitz * h;
        const double ph = envelope_phase * h;
        // the initial grid already satisfies ph < 0.1, so k stays within
        // 1.005 and the +2 eval_slack padding covers the k-scaled edge error
        if (envelope_phase > 0 && ph < 0.1) {
            const double k = 1.0 / std::cos(ph);
            const double m = std::max(std::max(fa, fb), 0.0);
            const double env =
                std::max(m * k + envelope_offset * (k - 1.0), envelope_offset);
            c = std::min(c, env);
        }
        return c + 2.0 * eval_slack;
    };

    std::vector<double> grid_f(kGridCells + 1);
    std::size_t evals = 0;
    for (int k = 0; k < kGridCells; ++k) {
        grid_f[k] = f(2.0 * kPi * k / kGridCells);
        ++evals;
    }
    grid_f[kGridCells] = grid_f[0];

    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kGridCells; ++k) best = std::max(best, grid_f[k]);

    std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
    for (int k = 0; k < kGridCells; ++k) {
        const double a = 2.0 * kPi * k / kGridCells;
        const double b = 2.0 * kPi * (k + 1) / kGridCells;
        Cell cell{ceiling_of(a, b, grid_f[k], grid_f[k + 1]), a, b, grid_f[k], grid_f[k + 1]};
        if (cell.ceiling > best) heap.push(cell);
    }

    double hi = heap.empty() ? best : std::max(best, heap.top().ceiling);
    while (hi - best > 2.0 * tol - 2.0 * eval_slack && !heap.empty()) {
        if (evals > kMaxEvals)
            throw LinalgError("maximize_on_circle: evaluation budget exceeded "
                              "(tolerance too tight for this profile)");
        Cell cell = heap.top();
        heap.pop();
        if (cell.ceiling <= best) { // stale: incumbent improved past it
            hi = heap.empty() ? best : std::max(best, heap.top().ceiling);
            continue;
        }
        const double c = cell.a + kGolden * (cell.b - cell.a);
        const double fc = f(c);
        ++evals;
        best = std::max(best, fc);
        Cell left{ceiling_of(cell.a, c, cell.fa, fc), cell.a, c, cell.fa, fc};
        Cell right{ceiling_of(c, cell.b, fc, cell.fb), c, cell.b, fc, cell.fb};
        if (left.ceiling > best) heap.push(left);
        if (right.ceiling > best) heap.push(right);
        hi = heap.empty() ? best : std::max(best, heap.top().ceiling);
    }
    hi = std::max(hi, best);

    // true max lies in [best - eval_slack, hi]
    const double lo = best - eval_slack;
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

} // namespace

CertifiedValue numerical_radius(const Matrix& a, double tol) {
    require_square(a, "numerical_radius");
    require_finite(a, "numerical_radius");
    const auto n = a.rows();
    if (n == 0) return {0.0, 0.0};

    const double norm = spectral_norm(a);
    if (tol < 0.0) throw LinalgError("tolerance must be positive (0 selects the default)");
    if (tol == 0.0) tol = 1e-9 * std::max(1.0, norm);
    if (norm == 0.0) return {0.0, 0.0};

    const Matrix re = real_part(a);
    const Matrix im = imag_part(a);
    Matrix h(n, n);
    const auto profile = [&](double theta) {
        h.noalias() = std::cos(theta) * re - std::sin(theta) * im;
        return lambda_max_hermitian(h);
    };
    // eigenvalue evaluations are backward stable: |computed - exact| <= c n eps ||H||
    const double eval_slack = 8.0 * static_cast<double>(n) *
                              std::numeric_limits<double>::epsilon() * norm;
    // the profile is a sup of sinusoids Re(e^{i theta} <Ax, x>) over unit x
    return maximize_on_circle(profile, norm, /*envelope_phase=*/1, 0.0, eval_slack, tol);
}

double numerical_radius_oracle(const Matrix& a, int n_starts, std::uint64_t seed) {
    require_square(a, "numerical_radius_oracle");
    require_finite(a, "numerical_radius_oracle");
    const auto n = a.rows();
    if (n == 0 || n_starts <= 0) return 0.0;

    Rng rng(seed);
    double best = 0.0;
    for (int s = 0; s < n_starts; ++s) {
        Vector x(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto [re, im] = rng.next_normal_pair();
            x(i) = Complex(re, im);
        }
        const double xn = x.norm();
        if (xn == 0.0) continue;
        x /= xn;

        double value = std::abs(Complex(x.adjoint() * (a * x)));
        for (int iter = 0; iter < 300; ++iter) {
            const Complex c = x.adjoint() * (a * x);
            const double m = std::abs(c);
            const Complex u = (m > 0.0) ? c / m : Complex(1.0, 0.0);
            // ascend: top eigenvector of Re(conj(u) A)
            const Matrix g = real_part(std::conj(u) * a);
            Eigen::SelfAdjointEigenSolver<Matrix> solver(g);
            if (solver.info() != Eigen::Success) break;
            x = solver.eigenvectors().col(n - 1);
            const double next = std::abs(Complex(x.adjoint() * (a * x)));
            if (next <= value + 1e-12 * std::max(1.0, value)) {
                value = std::max(value, next);
                break;
            }
            value = next;
        }
        best = std::max(best, value);
    }
    return best;
}

CertifiedValue sup_theta_real_norm(const Matrix& a, double tol) {
    require_square(a, "sup_theta_real_norm");
    require_finite(a, "sup_theta_real_norm");
    const auto n = a.rows();
    if (n == 0) return {0.0, 0.0};

    const double norm = spectral_norm(a);
    if (tol < 0.0) throw LinalgError("tolerance must be positive (0 selects the default)");
    if (tol == 0.0) tol = 1e-9 * std::max(1.0, norm);
    if (norm == 0.0) return {0.0, 0.0};

    const Matrix re = real_part(a);
    const Matrix im = imag_part(a);
    Matrix h(n, n);
    const auto profile = [&](double theta) {
        h.noalias() = std::cos(theta) * re - std::sin(theta) * im;
        if (n == 1) return std::abs(h(0, 0).real());
        if (n == 2) {
            const double p = h(0, 0).real(), q = h(1, 1).real();
            const double m = 0.5 * (p + q);
            const double d = std::hypot(0.5 * (p - q), std::abs(h(0, 1)));
            return std::abs(m) + d; // max(|m + d|, |m - d|)
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw LinalgError("sup_theta_real_norm: eigensolver failed to converge");
        return std::max(solver.eigenvalues()(n - 1), -solver.eigenvalues()(0));
    };
    // the profile is a sup of sinusoids sigma * Re(e^{i theta} <Ax, x>) over
    // unit x and sigma = +/-1, so the envelope bound applies here as well
    const double eval_slack = 8.0 * static_cast<double>(n) *
                              std::numeric_limits<double>::epsilon() * norm;
    return maximize_on_circle(profile, norm, /*envelope_phase=*/1, 0.0, eval_slack, tol);
}

CertifiedValue sup_theta_product_norm(const Matrix& a, const Matrix& b, double tol) {
    require_square(a, "sup_theta_product_norm");
    require_square(b, "sup_theta_product_norm");
    require_finite(a, "sup_theta_product_norm");
    require_finite(b, "sup_theta_product_norm");
    if (a.rows() != b.rows())
        throw LinalgError("sup_theta_product_norm: dimension mismatch");
    const auto n = a.rows();
    if (n == 0) return {0.0, 0.0};

    const double na = spectral_norm(a);
    const double nb = spectral_norm(b);
    if (tol < 0.0) throw LinalgError("tolerance must be positive (0 selects the default)");
    if (tol == 0.0) tol = 1e-9 * std::max(1.0, na * nb);
    if (na == 0.0 || nb == 0.0) return {0.0, 0.0};

    const Matrix ra = real_part(a), ia = imag_part(a);
    const Matrix rb = real_part(b), ib = imag_part(b);
    Matrix pa(n, n), pb(n, n), prod(n, n), gram(n, n);
    const auto profile = [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        pa.noalias() = c * ra - s * ia;
        pb.noalias() = c * rb - s * ib;
        prod.noalias() = pa * pb;
        gram.noalias() = prod.adjoint() * prod;
        return std::sqrt(std::max(0.0, lambda_max_hermitian(gram)));
    };
    const double eval_slack = 8.0 * static_cast<double>(n) *
                              std::numeric_limits<double>::epsilon() * na * nb;
    // Re(e^{i t}A) Re(e^{i t}B) = M0 + cos(2t) M1 + sin(2t) M2 with
    //   M0 = (Re A Re B + Im A Im B)/2,   M1 = (Re A Re B - Im A Im B)/2,
    //   M2 = -(Re A Im B + Im A Re B)/2,
    // so the profile is a sup over unit x, y of Re<.x, y>: members of the
    // form d + R cos(2 theta + phi) with |d| <= ||M0||.  The offset bound is
    // padded for the formation and eigensolver roundoff in ||M0|| itself.
    const double dc_bound = spectral_norm(0.5 * (ra * rb + ia * ib)) +
                            64.0 * static_cast<double>(n) *
                                std::numeric_limits<double>::epsilon() * na * nb;
    return maximize_on_circle(profile, 2.0 * na * nb, /*envelope_phase=*/2, dc_bound,
                              eval_slack, tol);
}

} // namespace nr
