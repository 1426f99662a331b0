#include "nr/catalog.hpp"

#include "nr/radius.hpp"
#include "nr/transforms.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace nr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kTwoSqrtTwo = 2.0 * std::sqrt(2.0);

// ===== certified scalar terms =====

/// slack covering rounding in the explicit formation of a matrix expression
double formation_slack(const Matrix& m) {
    return 64.0 * kEps * std::max(1.0, fro_norm(m));
}

Ival cert_norm(const Matrix& m) {
    const double s = spectral_norm(m);
    const double n = static_cast<double>(std::max(m.rows(), m.cols()));
    return Ival::pm(s, 16.0 * n * kEps * s + formation_slack(m));
}

Ival cert_omega(const Matrix& m, double tol) {
    // radius sub-terms run at a quarter of the entry tolerance; the floor
    // keeps the solver out of sub-eps territory on large-norm products
    const double t = std::max(0.25 * tol, 1e-13 * std::max(1.0, fro_norm(m)));
    const CertifiedValue cv = numerical_radius(m, t);
    return Ival::pm(cv.value, cv.error_radius + formation_slack(m));
}

/// like cert_omega but with an extra radius for upstream matrix uncertainty
Ival cert_omega_slack(const Matrix& m, double tol, double extra) {
    Ival w = cert_omega(m, tol);
    return Ival::pm(w.mid(), w.rad() + extra);
}

Ival cert_sup_prod(const Matrix& a, const Matrix& b, double tol) {
    // the product profile only has a Lipschitz bound, so a full-precision
    // certificate would dominate the whole suite; run it looser and carry
    // the wider radius honestly through the margin
    const double na = spectral_norm(a), nb = spectral_norm(b);
    const double t = std::max(0.25 * tol, 1e-6 * std::max(1.0, na * nb));
    const CertifiedValue cv = sup_theta_product_norm(a, b, t);
    return Ival::pm(cv.value, cv.error_radius + formation_slack(a) + formation_slack(b));
}

/// real quadratic form <P x, x> with a conservative rounding radius
Ival cert_quad(const Matrix& p, const Matrix& x) {
    const double v = (x.adjoint() * (p * x))(0, 0).real();
    const double xn = x.norm();
    const double rad = 16.0 * static_cast<double>(p.rows()) * kEps * fro_norm(p) * xn * xn;
    return Ival::pm(v, rad);
}

// ===== operand access (signatures are validated before evaluators run) =====

const Matrix& mat(const std::vector<Operand>& ops, std::size_t i) {
    return std::get<Matrix>(ops[i]);
}
double tparam(const std::vector<Operand>& ops, std::size_t i) { return std::get<double>(ops[i]); }
double sgn(const std::vector<Operand>& ops, std::size_t i) {
    return static_cast<double>(std::get<int>(ops[i]));
}

// ===== recurring matrix expressions =====

Matrix abs_sq(const Matrix& x) { return x.adjoint() * x; }       // |X|^2 exactly
Matrix abs_sq_star(const Matrix& x) { return x * x.adjoint(); }  // |X*|^2 exactly

Matrix off_block(const Matrix& x, const Matrix& y) {
    const Matrix zero = Matrix::Zero(x.rows(), x.cols());
    return block_2x2(zero, x, y, zero);
}

/// G = ||T||^{2t-1} |T|^{2(1-t)} + ||T||^{1-2t} |T|^{2t}; second member of the
/// pair bounds the Frobenius error induced by the uncertainty of ||T||
std::pair<Matrix, double> weighted_power_sum(const Matrix& t_mat, double t, Ival norm_t) {
    const Matrix p_low = abs_power(t_mat, 2.0 * (1.0 - t));
    const Matrix p_high = abs_power(t_mat, 2.0 * t);
    const Ival c1 = ipow_pos(norm_t, 2.0 * t - 1.0);
    const Ival c2 = ipow_pos(norm_t, 1.0 - 2.0 * t);
    Matrix g = c1.mid() * p_low + c2.mid() * p_high;
    const double slack = c1.rad() * fro_norm(p_low) + c2.rad() * fro_norm(p_high);
    return {std::move(g), slack};
}

// ===== registry construction =====

using Ops = std::vector<Operand>;
using Chain = std::vector<Ival>;

CatalogEntry make(std::string id, std::string anchor, Kind kind, std::vector<Role> sig,
                  std::function<Chain(const Ops&, double)> eval) {
    CatalogEntry e;
    e.id = std::move(id);
    e.anchor = std::move(anchor);
    e.kind = kind;
    e.signature = std::move(sig);
    for (Role r : e.signature) {
        if (r == Role::ParamT) e.t_parameterized = true;
        if (r == Role::Sign) e.sign_parameterized = true;
    }
    e.eval = std::move(eval);
    return e;
}

std::vector<CatalogEntry> build_registry() {
    using R = Role;
    std::vector<CatalogEntry> reg;
    reg.reserve(35);

    reg.push_back(make(
        "EQ-equiv-lo", "Section 1, the norm equivalence (1/2)||A|| <= w(A)", Kind::INEQUALITY,
        {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            return {0.5 * cert_norm(a), cert_omega(a, tol)};
        }));

    reg.push_back(make(
        "EQ-equiv-hi", "Section 1, the norm equivalence w(A) <= ||A||", Kind::INEQUALITY,
        {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            return {cert_omega(a, tol), cert_norm(a)};
        }));

    reg.push_back(make(
        "L1.1a-eq10", "Lemma 1.1 (10): w(AB) <= (1/2)|| |A*|^2 + |B|^2 ||", Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            return {cert_omega(a * b, tol), 0.5 * cert_norm(abs_sq_star(a) + abs_sq(b))};
        }));

    reg.push_back(make(
        "L1.1b", "Lemma 1.1: w^2(A) <= (1/2)|| |A|^2 + |A*|^2 ||", Kind::INEQUALITY,
        {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            return {isquare(cert_omega(a, tol)), 0.5 * cert_norm(abs_sq(a) + abs_sq_star(a))};
        }));

    reg.push_back(make(
        "L1.1c", "Lemma 1.1: w(A) <= (1/2)|| |A| + |A*| ||", Kind::INEQUALITY,
        {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            return {cert_omega(a, tol),
                    0.5 * cert_norm(abs_matrix(a) + abs_matrix(a.adjoint()))};
        }));

    reg.push_back(make(
        "L1.1d-eq16", "Lemma 1.1 (16): w(A) <= (1/2)(||A|| + ||A^2||^{1/2})", Kind::INEQUALITY,
        {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            return {cert_omega(a, tol), 0.5 * (cert_norm(a) + isqrt(cert_norm(a * a)))};
        }));

    reg.push_back(make(
        "EQ-yam1", "Section 1, Yamazaki: w(A) <= (1/2)(||A|| + w(Aluthge(A)))", Kind::INEQUALITY,
        {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            return {cert_omega(a, tol),
                    0.5 * (cert_norm(a) + cert_omega(aluthge_t(a, 0.5), tol))};
        }));

    reg.push_back(make(
        "EQ-yam2", "Section 1: w(Aluthge(A)) <= ||Aluthge(A)|| <= ||A^2||^{1/2} <= ||A||",
        Kind::ORDERING, {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix at = aluthge_t(a, 0.5);
            return {cert_omega(at, tol), cert_norm(at), isqrt(cert_norm(a * a)), cert_norm(a)};
        }));

    reg.push_back(make(
        "EQ-comm1", "Section 1: w(AB + BA) <= 2 sqrt(2) w(A) ||B||", Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            return {cert_omega(a * b + b * a, tol),
                    Ival::point(kTwoSqrtTwo) * cert_omega(a, tol) * cert_norm(b)};
        }));

    reg.push_back(make(
        "EQ-comm2-eq12", "Section 1 (12): w(AB + B*A) <= 2 w(A) ||B||", Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            return {cert_omega(a * b + b.adjoint() * a, tol),
                    2.0 * (cert_omega(a, tol) * cert_norm(b))};
        }));

    reg.push_back(make(
        "L-pos-sum", "Lemma (11): ||A + B|| <= max(||A||, ||B||) + ||A^{1/2} B^{1/2}||",
        Kind::INEQUALITY, {R::PsdMatrix, R::PsdMatrix}, [](const Ops& o, double) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Ival lhs = cert_norm(a + b);
            const Ival rhs = imax(cert_norm(a), cert_norm(b)) +
                             cert_norm(psd_power(a, 0.5) * psd_power(b, 0.5));
            return {lhs, rhs};
        }));

    reg.push_back(make(
        "L-kato", "Lemma (14): |<Tx,y>|^2 <= <|T|^{2t}x,x> <|T*|^{2(1-t)}y,y>",
        Kind::INEQUALITY, {R::SquareMatrix, R::AnyVector, R::AnyVector, R::ParamT},
        [](const Ops& o, double) -> Chain {
            const Matrix& t_mat = mat(o, 0);
            const Matrix& x = mat(o, 1);
            const Matrix& y = mat(o, 2);
            const double t = tparam(o, 3);
            const Complex inner = (y.adjoint() * (t_mat * x))(0, 0);
            const double scale = fro_norm(t_mat) * x.norm() * y.norm();
            const Ival lhs = Ival::pm(std::norm(inner),
                                      32.0 * static_cast<double>(t_mat.rows()) * kEps * scale * scale);
            const Ival rhs = cert_quad(abs_power(t_mat, 2.0 * t), x) *
                             cert_quad(abs_power(t_mat.adjoint(), 2.0 * (1.0 - t)), y);
            return {lhs, rhs};
        }));

    reg.push_back(make(
        "L-buzano", "Lemma (7): |<x,e><e,y>| <= (1/2)(|<x,y>| + ||x|| ||y||), ||e|| = 1",
        Kind::INEQUALITY, {R::AnyVector, R::AnyVector, R::UnitVector},
        [](const Ops& o, double) -> Chain {
            const Matrix& x = mat(o, 0);
            const Matrix& y = mat(o, 1);
            const Matrix& e = mat(o, 2);
            const double slack =
                16.0 * static_cast<double>(x.rows()) * kEps * (1.0 + x.norm() * y.norm());
            const Complex xe = (e.adjoint() * x)(0, 0);
            const Complex ey = (y.adjoint() * e)(0, 0);
            const Complex xy = (y.adjoint() * x)(0, 0);
            const Ival lhs = Ival::pm(std::abs(xe * ey), slack);
            const Ival rhs = 0.5 * Ival::pm(std::abs(xy) + x.norm() * y.norm(), 2.0 * slack);
            return {lhs, rhs};
        }));

    reg.push_back(make(
        "L-AOK-sum",
        "Lemma (6): w(A+B) <= (1/2)(w(A)+w(B) + sqrt((w(A)-w(B))^2 + 4 sup_theta ...))",
        Kind::INEQUALITY, {R::SquareMatrix, R::SquareMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Ival wa = cert_omega(a, tol);
            const Ival wb = cert_omega(b, tol);
            const Ival sp = cert_sup_prod(a, b, tol);
            const Ival rhs = 0.5 * (wa + wb + isqrt(isquare(wa - wb) + 4.0 * sp));
            return {cert_omega(a + b, tol), rhs};
        }));

    reg.push_back(make(
        "EQ-supR", "Section 1: w(A) = sup_theta || Re(e^{i theta} A) ||", Kind::IDENTITY,
        {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const double t = std::max(0.25 * tol, 1e-13 * std::max(1.0, fro_norm(a)));
            const CertifiedValue sup = sup_theta_real_norm(a, t);
            return {cert_omega(a, tol), Ival::pm(sup.value, sup.error_radius)};
        }));

    reg.push_back(make(
        "L-block", "Section 1 Lemma: w([O X; Y O]) = w([O Y; X O]) = w([O X; -Y O])",
        Kind::IDENTITY, {R::SquareMatrix, R::SquareMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& x = mat(o, 0);
            const Matrix& y = mat(o, 1);
            return {cert_omega(off_block(x, y), tol), cert_omega(off_block(y, x), tol),
                    cert_omega(off_block(x, -y), tol)};
        }));

    reg.push_back(make(
        "T2.1",
        "Theorem 2.1: w(AB+CD) <= w([O AB; CD O]) + (1/2) sqrt(w((AB)^2) + w((D*C*)^2) + "
        "||AB D*C* + D*C* AB||)",
        Kind::INEQUALITY, {R::SquareMatrix, R::SquareMatrix, R::SquareMatrix, R::SquareMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix ab = mat(o, 0) * mat(o, 1);
            const Matrix cd = mat(o, 2) * mat(o, 3);
            const Matrix dc = cd.adjoint(); // D*C*
            const Ival rhs = cert_omega(off_block(ab, cd), tol) +
                             0.5 * isqrt(cert_omega(ab * ab, tol) + cert_omega(dc * dc, tol) +
                                         cert_norm(ab * dc + dc * ab));
            return {cert_omega(ab + cd, tol), rhs};
        }));

    reg.push_back(make(
        "T2.1p",
        "Theorem 2.1 specialization: w(A +/- C) <= w([O A; C O]) + (1/2) sqrt(w(A^2) + w(C^2) "
        "+ ||AC* + C*A||)",
        Kind::INEQUALITY, {R::SquareMatrix, R::SquareMatrix, R::Sign},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& c = mat(o, 1);
            const double s = sgn(o, 2);
            const Ival rhs = cert_omega(off_block(a, c), tol) +
                             0.5 * isqrt(cert_omega(a * a, tol) + cert_omega(c * c, tol) +
                                         cert_norm(a * c.adjoint() + c.adjoint() * a));
            return {cert_omega(a + s * c, tol), rhs};
        }));

    reg.push_back(make(
        "C-eq17",
        "Corollary (17): w(A +/- C) <= w(A -/+ C) + sqrt(w(A^2) + w(C^2) + ||AC* + C*A||)",
        Kind::INEQUALITY, {R::SquareMatrix, R::SquareMatrix, R::Sign},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& c = mat(o, 1);
            const double s = sgn(o, 2);
            const Ival root = isqrt(cert_omega(a * a, tol) + cert_omega(c * c, tol) +
                                    cert_norm(a * c.adjoint() + c.adjoint() * a));
            return {cert_omega(a + s * c, tol), cert_omega(a - s * c, tol) + root};
        }));

    reg.push_back(make(
        "C-eq19", "Corollary (19): (||Re A|| - ||Im A||)^2 <= (1/2)(w(A^2) + ||A^2||)",
        Kind::INEQUALITY, {R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix a2 = a * a;
            const Ival lhs = isquare(cert_norm(real_part(a)) - cert_norm(imag_part(a)));
            return {lhs, 0.5 * (cert_omega(a2, tol) + cert_norm(a2))};
        }));

    reg.push_back(make(
        "C-nilp", "Corollary: if A^2 = O then ||Re A|| = ||Im A||", Kind::IDENTITY,
        {R::Nilpotent2}, [](const Ops& o, double) -> Chain {
            const Matrix& a = mat(o, 0);
            return {cert_norm(real_part(a)), cert_norm(imag_part(a))};
        }));

    reg.push_back(make(
        "T2.5-t",
        "Theorem 2.5: w^2(ABC+DEF) <= (1/2) w((A*|B*|^{2(1-t)}A + D*|E*|^{2(1-t)}D)"
        "(C*|B|^{2t}C + F*|E|^{2t}F)) + (1/2) ||C*|B|^{2t}C + F*|E|^{2t}F|| "
        "||A|B*|^{2(1-t)}A* + D|E*|^{2(1-t)}D*||",
        Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix, R::SquareMatrix, R::SquareMatrix, R::SquareMatrix,
         R::SquareMatrix, R::ParamT},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Matrix& c = mat(o, 2);
            const Matrix& d = mat(o, 3);
            const Matrix& e = mat(o, 4);
            const Matrix& f = mat(o, 5);
            const double t = tparam(o, 6);
            const Matrix bt2 = abs_power(b.adjoint(), 2.0 * (1.0 - t));
            const Matrix et2 = abs_power(e.adjoint(), 2.0 * (1.0 - t));
            const Matrix b2t = abs_power(b, 2.0 * t);
            const Matrix e2t = abs_power(e, 2.0 * t);
            const Matrix p = a.adjoint() * bt2 * a + d.adjoint() * et2 * d;
            const Matrix n = a * bt2 * a.adjoint() + d * et2 * d.adjoint();
            const Matrix m = c.adjoint() * b2t * c + f.adjoint() * e2t * f;
            const Ival lhs = isquare(cert_omega(a * b * c + d * e * f, tol));
            const Ival rhs = 0.5 * cert_omega(p * m, tol) + 0.5 * (cert_norm(m) * cert_norm(n));
            return {lhs, rhs};
        }));

    reg.push_back(make(
        "T2.5-min", "Theorem 2.5: w^2(ABC+DEF) <= (1/2) min(alpha, beta)", Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix, R::SquareMatrix, R::SquareMatrix, R::SquareMatrix,
         R::SquareMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Matrix& c = mat(o, 2);
            const Matrix& d = mat(o, 3);
            const Matrix& e = mat(o, 4);
            const Matrix& f = mat(o, 5);
            // t = 1 endpoint (alpha): |X|^0 terms are the identity
            const Matrix m1 = c.adjoint() * abs_sq(b) * c + f.adjoint() * abs_sq(e) * f;
            const Ival alpha = cert_omega((abs_sq(a) + abs_sq(d)) * m1, tol) +
                               cert_norm(m1) * cert_norm(abs_sq_star(a) + abs_sq_star(d));
            // t = 0 endpoint (beta)
            const Matrix pf = a.adjoint() * abs_sq_star(b) * a + d.adjoint() * abs_sq_star(e) * d;
            const Matrix nf = a * abs_sq_star(b) * a.adjoint() + d * abs_sq_star(e) * d.adjoint();
            const Matrix c2 = abs_sq(c) + abs_sq(f);
            const Ival beta = cert_omega(pf * c2, tol) + cert_norm(c2) * cert_norm(nf);
            const Ival lhs = isquare(cert_omega(a * b * c + d * e * f, tol));
            return {lhs, 0.5 * imin(alpha, beta)};
        }));

    reg.push_back(make(
        "R-I",
        "Remark, case B = E = I: w^2(AC+DF) <= (1/2)(w((|A|^2+|D|^2)(|C|^2+|F|^2)) + "
        "|| |C|^2+|F|^2 || || |A*|^2+|D*|^2 ||)",
        Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix, R::SquareMatrix, R::SquareMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& c = mat(o, 1);
            const Matrix& d = mat(o, 2);
            const Matrix& f = mat(o, 3);
            const Matrix left = abs_sq(a) + abs_sq(d);
            const Matrix right = abs_sq(c) + abs_sq(f);
            const Ival lhs = isquare(cert_omega(a * c + d * f, tol));
            const Ival rhs = 0.5 * (cert_omega(left * right, tol) +
                                    cert_norm(right) * cert_norm(abs_sq_star(a) + abs_sq_star(d)));
            return {lhs, rhs};
        }));

    reg.push_back(make(
        "R-II", "Remark, case D = E = F = O: w^2(ABC) <= (1/2) min(alpha', beta')",
        Kind::INEQUALITY, {R::SquareMatrix, R::SquareMatrix, R::SquareMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Matrix& c = mat(o, 2);
            const Matrix cb2c = c.adjoint() * abs_sq(b) * c;
            const Ival alpha = cert_omega(abs_sq(a) * cb2c, tol) +
                               isquare(cert_norm(a)) * cert_norm(cb2c);
            const Matrix mid = a.adjoint() * abs_sq_star(b) * a;
            const Ival beta = cert_omega(mid * abs_sq(c), tol) +
                              isquare(cert_norm(c)) * cert_norm(a * abs_sq_star(b) * a.adjoint());
            const Ival lhs = isquare(cert_omega(a * b * c, tol));
            return {lhs, 0.5 * imin(alpha, beta)};
        }));

    reg.push_back(make(
        "C2-prod", "Corollary 2: w(AB) <= (1/2) min(alpha_0, beta_0)", Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix}, [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Ival alpha = Ival::point(std::sqrt(2.0)) *
                               isqrt(cert_norm(b.adjoint() * abs_sq(a) * b +
                                               a * abs_sq_star(b) * a.adjoint()));
            const Ival beta = cert_norm(abs_sq_star(a) + abs_sq(b));
            return {cert_omega(a * b, tol), 0.5 * imin(alpha, beta)};
        }));

    reg.push_back(make(
        "C-wAB", "Corollary: w(T) <= (1/2) min(alpha_1, beta_1) with the t-power split",
        Kind::INEQUALITY, {R::SquareMatrix, R::ParamT}, [](const Ops& o, double tol) -> Chain {
            const Matrix& t_mat = mat(o, 0);
            const double t = tparam(o, 1);
            const Ival alpha = Ival::point(std::sqrt(2.0)) *
                               isqrt(cert_norm(abs_sq(t_mat) + abs_sq_star(t_mat)));
            const Ival beta = cert_norm(abs_power(t_mat.adjoint(), 2.0 * (1.0 - t)) +
                                        abs_power(t_mat, 2.0 * t));
            return {cert_omega(t_mat, tol), 0.5 * imin(alpha, beta)};
        }));

    reg.push_back(make(
        "E15-unbal",
        "Theorem 2.7 proof (15): w(AB) <= (1/2) sqrt((1/4)||K||^2 + w^2(BA) + "
        "(1/2) w(K BA + BA K)), K = |A|^2 + |B*|^2",
        Kind::INEQUALITY, {R::SquareMatrix, R::SquareMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Matrix k = abs_sq(a) + abs_sq_star(b);
            const Matrix ba = b * a;
            const Ival rhs =
                0.5 * isqrt(0.25 * isquare(cert_norm(k)) + isquare(cert_omega(ba, tol)) +
                            0.5 * cert_omega(k * ba + ba * k, tol));
            return {cert_omega(a * b, tol), rhs};
        }));

    reg.push_back(make(
        "T2.7-bal",
        "Theorem 2.7: the preceding bound after the norm-balancing substitution "
        "A -> sqrt(||B||/||A||) A, B -> sqrt(||A||/||B||) B",
        Kind::INEQUALITY, {R::NonzeroMatrix, R::NonzeroMatrix},
        [](const Ops& o, double tol) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& b = mat(o, 1);
            const Ival na = cert_norm(a);
            const Ival nb = cert_norm(b);
            const Ival r1 = idiv_pos(nb, na);
            const Ival r2 = idiv_pos(na, nb);
            const Matrix asq = abs_sq(a);
            const Matrix bsq = abs_sq_star(b);
            const Matrix k = r1.mid() * asq + r2.mid() * bsq;
            // scalar-ratio uncertainty enters K linearly
            const double k_slack = r1.rad() * fro_norm(asq) + r2.rad() * fro_norm(bsq);
            const Matrix ba = b * a;
            const Ival nk_raw = cert_norm(k);
            const Ival nk = Ival::pm(nk_raw.mid(), nk_raw.rad() + k_slack);
            const Ival wcross = cert_omega_slack(k * ba + ba * k, tol,
                                                 2.0 * k_slack * fro_norm(ba));
            const Ival rhs = 0.5 * isqrt(0.25 * isquare(nk) + isquare(cert_omega(ba, tol)) +
                                         0.5 * wcross);
            return {cert_omega(a * b, tol), rhs};
        }));

    reg.push_back(make(
        "E3-mcintosh", "Inequality (3): 2 ||A X B|| <= ||A*A X + X B B*||", Kind::INEQUALITY,
        {R::SquareMatrix, R::SquareMatrix, R::SquareMatrix},
        [](const Ops& o, double) -> Chain {
            const Matrix& a = mat(o, 0);
            const Matrix& x = mat(o, 1);
            const Matrix& b = mat(o, 2);
            return {2.0 * cert_norm(a * x * b),
                    cert_norm(a.adjoint() * a * x + x * b * b.adjoint())};
        }));

    reg.push_back(make(
        "E4-identity",
        "Identity (4): || ||T||^{2t-1} |T|^{2(1-t)} + ||T||^{1-2t} |T|^{2t} || = 2 ||T||",
        Kind::IDENTITY, {R::NonzeroMatrix, R::ParamT}, [](const Ops& o, double) -> Chain {
            const Matrix& t_mat = mat(o, 0);
            const double t = tparam(o, 1);
            const Ival nt = cert_norm(t_mat);
            auto [g, slack] = weighted_power_sum(t_mat, t, nt);
            const Ival ng = cert_norm(g);
            return {Ival::pm(ng.mid(), ng.rad() + slack), 2.0 * nt};
        }));

    reg.push_back(make(
        "T2.8-aluthge",
        "Theorem 2.8: w(T) <= (1/2) sqrt(||T||^2 + w^2(T_t) + (1/2) w(G T_t + T_t G)), "
        "G = ||T||^{2t-1} |T|^{2(1-t)} + ||T||^{1-2t} |T|^{2t}",
        Kind::INEQUALITY, {R::NonzeroMatrix, R::ParamT}, [](const Ops& o, double tol) -> Chain {
            const Matrix& t_mat = mat(o, 0);
            const double t = tparam(o, 1);
            const Ival nt = cert_norm(t_mat);
            const Matrix tt = aluthge_t(t_mat, t);
            auto [g, slack] = weighted_power_sum(t_mat, t, nt);
            const Ival wcross = cert_omega_slack(g * tt + tt * g, tol, 2.0 * slack * fro_norm(tt));
            const Ival rhs = 0.5 * isqrt(isquare(nt) + isquare(cert_omega(tt, tol)) +
                                         0.5 * wcross);
            return {cert_omega(t_mat, tol), rhs};
        }));

    reg.push_back(make(
        "R-chain1",
        "Remark after Theorem 2.8: the new bound refines "
        "w(T) <= (1/2)(||T|| + w(T_t)) step by step",
        Kind::ORDERING, {R::NonzeroMatrix, R::ParamT}, [](const Ops& o, double tol) -> Chain {
            const Matrix& t_mat = mat(o, 0);
            const double t = tparam(o, 1);
            const Ival nt = cert_norm(t_mat);
            const Matrix tt = aluthge_t(t_mat, t);
            auto [g, slack] = weighted_power_sum(t_mat, t, nt);
            const Ival wt = cert_omega(tt, tol);
            const Ival ng_raw = cert_norm(g);
            const Ival ng = Ival::pm(ng_raw.mid(), ng_raw.rad() + slack);
            const Ival wcross = cert_omega_slack(g * tt + tt * g, tol, 2.0 * slack * fro_norm(tt));
            const Ival nt2 = isquare(nt);
            const Ival wt2 = isquare(wt);
            return {cert_omega(t_mat, tol),
                    0.5 * isqrt(nt2 + wt2 + 0.5 * wcross),
                    0.5 * isqrt(nt2 + wt2 + wt * ng),
                    0.5 * isqrt(nt2 + wt2 + 2.0 * (wt * nt)),
                    0.5 * (nt + wt)};
        }));

    reg.push_back(make(
        "R-chain2",
        "Remark after Theorem 2.8: the power-sum variant refines "
        "w(T) <= (1/4)|| |T|^{2(1-t)} + |T|^{2t} || + (1/2) w(T_t)",
        Kind::ORDERING, {R::SquareMatrix, R::ParamT}, [](const Ops& o, double tol) -> Chain {
            const Matrix& t_mat = mat(o, 0);
            const double t = tparam(o, 1);
            const Matrix tt = aluthge_t(t_mat, t);
            const Matrix h = abs_power(t_mat, 2.0 * (1.0 - t)) + abs_power(t_mat, 2.0 * t);
            const Ival wt = cert_omega(tt, tol);
            const Ival nh = cert_norm(h);
            const Ival nh2 = isquare(nh);
            const Ival wt2 = isquare(wt);
            return {cert_omega(t_mat, tol),
                    0.5 * isqrt(0.25 * nh2 + wt2 + 0.5 * cert_omega(h * tt + tt * h, tol)),
                    0.5 * isqrt(0.25 * nh2 + wt2 + wt * nh),
                    0.25 * nh + 0.5 * wt};
        }));

    reg.push_back(make(
        "R-zero", "Final Remark: if the Aluthge transform vanishes then w(T) = (1/2)||T||",
        Kind::IDENTITY, {R::Nilpotent2}, [](const Ops& o, double tol) -> Chain {
            const Matrix& t_mat = mat(o, 0);
            return {cert_omega(t_mat, tol), 0.5 * cert_norm(t_mat)};
        }));

    return reg;
}

// ===== signature validation =====

void require_matrix_like(const Operand& op, Role role, std::size_t idx, Eigen::Index& dim) {
    if (!std::holds_alternative<Matrix>(op))
        throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                           "operand " + std::to_string(idx) + ": expected a matrix");
    const Matrix& m = std::get<Matrix>(op);
    if (!m.allFinite())
        throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                           "operand " + std::to_string(idx) + ": non-finite entries");

    const bool vector_role = (role == Role::AnyVector || role == Role::UnitVector);
    if (vector_role) {
        if (m.cols() != 1 || m.rows() < 1)
            throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                               "operand " + std::to_string(idx) + ": expected a column vector");
        if (dim >= 0 && m.rows() != dim)
            throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                               "operand " + std::to_string(idx) + ": dimension mismatch");
        if (dim < 0) dim = m.rows();
        if (role == Role::UnitVector && std::abs(m.norm() - 1.0) > 1e-8)
            throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                               "operand " + std::to_string(idx) + ": expected a unit vector");
        return;
    }

    if (m.rows() != m.cols() || m.rows() < 1)
        throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                           "operand " + std::to_string(idx) + ": expected a square matrix");
    if (dim >= 0 && m.rows() != dim)
        throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                           "operand " + std::to_string(idx) + ": dimension mismatch");
    if (dim < 0) dim = m.rows();

    switch (role) {
    case Role::NonzeroMatrix:
        if (fro_norm(m) == 0.0)
            throw CatalogError(CatalogError::Code::ZERO_NORM_OPERAND,
                               "operand " + std::to_string(idx) +
                                   ": this relation is undefined for the zero matrix");
        break;
    case Role::PsdMatrix: {
        const double scale = std::max(1.0, fro_norm(m));
        if (fro_norm(m - m.adjoint()) > 1e-10 * scale)
            throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                               "operand " + std::to_string(idx) + ": expected a Hermitian matrix");
        const HermitianEigen eig = herm_eigen(m);
        if (eig.values(0) < -1e-10 * std::max(1.0, eig.values(eig.values.size() - 1)))
            throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                               "operand " + std::to_string(idx) +
                                   ": expected a positive semidefinite matrix");
        break;
    }
    case Role::Nilpotent2: {
        if (m.rows() != 2)
            throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                               "operand " + std::to_string(idx) + ": expected a 2x2 matrix");
        const double scale = std::max(1.0, fro_norm(m) * fro_norm(m));
        if (fro_norm(m * m) > 1e-10 * scale)
            throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                               "operand " + std::to_string(idx) +
                                   ": hypothesis requires the square to vanish");
        break;
    }
    default:
        break;
    }
}

void validate_signature(const CatalogEntry& e, const std::vector<Operand>& ops) {
    if (ops.size() != e.signature.size())
        throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                           e.id + ": expected " + std::to_string(e.signature.size()) +
                               " operands, got " + std::to_string(ops.size()));
    Eigen::Index dim = -1;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Role role = e.signature[i];
        switch (role) {
        case Role::ParamT: {
            if (!std::holds_alternative<double>(ops[i]))
                throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                                   "operand " + std::to_string(i) + ": expected the t parameter");
            const double t = std::get<double>(ops[i]);
            if (!(t >= 0.0 && t <= 1.0))
                throw CatalogError(CatalogError::Code::PARAM_OUT_OF_RANGE,
                                   "operand " + std::to_string(i) + ": t must lie in [0, 1]");
            break;
        }
        case Role::Sign: {
            if (!std::holds_alternative<int>(ops[i]) ||
                (std::get<int>(ops[i]) != 1 && std::get<int>(ops[i]) != -1))
                throw CatalogError(CatalogError::Code::SIGNATURE_MISMATCH,
                                   "operand " + std::to_string(i) + ": expected a sign of +1/-1");
            break;
        }
        default:
            require_matrix_like(ops[i], role, i, dim);
            break;
        }
    }
}

} // namespace

// ===== public surface =====

const std::vector<CatalogEntry>& registry() {
    static const std::vector<CatalogEntry> reg = build_registry();
    return reg;
}

const CatalogEntry& find_entry(const std::string& id) {
    for (const CatalogEntry& e : registry())
        if (e.id == id) return e;
    throw CatalogError(CatalogError::Code::UNKNOWN_ENTRY, "unknown entry id: " + id);
}

EvalResult evaluate(const std::string& id, const std::vector<Operand>& operands, double tol) {
    const CatalogEntry& e = find_entry(id);
    if (tol <= 0.0) tol = 1e-8;
    validate_signature(e, operands);
    const std::vector<Ival> chain = e.eval(operands, tol);

    EvalResult r;
    r.chain.reserve(chain.size());
    for (const Ival& v : chain) {
        r.chain.push_back(v.mid());
        r.certified_error += v.rad();
    }
    r.lhs = r.chain.front();
    r.rhs = r.chain.back();

    switch (e.kind) {
    case Kind::INEQUALITY:
        r.margin = r.rhs - r.lhs;
        break;
    case Kind::IDENTITY: {
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < r.chain.size(); ++i)
            worst = std::max(worst, std::abs(r.chain[i + 1] - r.chain[i]));
        r.margin = -worst;
        break;
    }
    case Kind::ORDERING: {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < r.chain.size(); ++i)
            worst = std::min(worst, r.chain[i + 1] - r.chain[i]);
        r.margin = worst;
        break;
    }
    }
    return r;
}

std::vector<EvalResult> evaluate_chain(const std::string& id, const std::vector<Operand>& operands,
                                       double tol) {
    const CatalogEntry& e = find_entry(id);
    if (e.kind != Kind::ORDERING)
        throw CatalogError(CatalogError::Code::WRONG_KIND,
                           e.id + ": evaluate_chain requires an ordering-chain entry");
    if (tol <= 0.0) tol = 1e-8;
    validate_signature(e, operands);
    const std::vector<Ival> chain = e.eval(operands, tol);

    std::vector<EvalResult> links;
    links.reserve(chain.size() - 1);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        EvalResult r;
        r.lhs = chain[i].mid();
        r.rhs = chain[i + 1].mid();
        r.margin = r.rhs - r.lhs;
        r.certified_error = chain[i].rad() + chain[i + 1].rad();
        r.chain = {r.lhs, r.rhs};
        links.push_back(std::move(r));
    }
    return links;
}

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::INEQUALITY: return "INEQUALITY";
    case Kind::IDENTITY: return "IDENTITY";
    case Kind::ORDERING: return "ORDERING";
    }
    return "?";
}

const char* role_name(Role r) {
    switch (r) {
    case Role::SquareMatrix: return "square_matrix";
    case Role::NonzeroMatrix: return "nonzero_matrix";
    case Role::PsdMatrix: return "psd_matrix";
    case Role::Nilpotent2: return "nilpotent_2x2";
    case Role::AnyVector: return "vector";
    case Role::UnitVector: return "unit_vector";
    case Role::ParamT: return "t";
    case Role::Sign: return "sign";
    }
    return "?";
}

} // namespace nr
