#include <doctest.h>

#include "nr/harness.hpp"
#include "nr/radius.hpp"
#include "nr/rng.hpp"

using namespace nr;

namespace {

Matrix jordan2() {
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    return m;
}

std::vector<Matrix> corpus(Family fam, int dim, int count, std::uint64_t seed = 42) {
    GeneratorSpec spec;
    spec.family = fam;
    spec.dim = dim;
    spec.seed = seed;
    return generate(spec, count);
}

} // namespace

// ===== certified numerical radius =====

TEST_CASE("numerical_radius: known exact values") {
    const CertifiedValue id = numerical_radius(Matrix::Identity(2, 2));
    CHECK(std::abs(id.value - 1.0) <= id.error_radius + 1e-12);

    // field of values of the 2x2 Jordan block is the closed disk of radius 1/2
    const CertifiedValue j = numerical_radius(jordan2(), 1e-10);
    CHECK(std::abs(j.value - 0.5) <= 1e-9);
    CHECK(j.error_radius <= 1e-10);

    Matrix d(2, 2);
    d << Complex(1, 0), 0, 0, Complex(0, 1);
    const CertifiedValue di = numerical_radius(d);
    CHECK(std::abs(di.value - 1.0) <= 1e-9);
}

TEST_CASE("numerical_radius: input and tolerance validation") {
    Matrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(numerical_radius(rect), LinalgError);
    CHECK_THROWS_AS(numerical_radius(jordan2(), -1e-9), LinalgError);
}

TEST_CASE("numerical_radius: norm equivalence on mixed families") {
    const double tol = 1e-9;
    for (Family fam : {Family::gaussian, Family::hermitian, Family::normal, Family::unitary,
                       Family::nilpotent, Family::rank_deficient}) {
        for (const Matrix& a : corpus(fam, 4, 10)) {
            const double nrm = spectral_norm(a);
            const CertifiedValue w = numerical_radius(a, tol);
            CHECK(w.value >= 0.5 * nrm - tol);
            CHECK(w.value <= nrm + tol);
            CHECK(w.error_radius <= tol);
        }
    }
}

TEST_CASE("numerical_radius: scaling equivariance") {
    const double tol = 1e-10;
    Rng rng(31);
    for (const Matrix& a : corpus(Family::gaussian, 3, 8)) {
        const auto [re, im] = rng.next_normal_pair();
        const Complex c(re, im);
        const double base = numerical_radius(a, tol).value;
        const double scaled = numerical_radius(c * a, tol * std::abs(c)).value;
        CHECK(std::abs(scaled - std::abs(c) * base) <= 3.0 * tol * std::max(1.0, std::abs(c)));
    }
}

TEST_CASE("numerical_radius: unitary similarity invariance") {
    const double tol = 1e-10;
    Rng rng(32);
    for (const Matrix& a : corpus(Family::gaussian, 4, 8)) {
        const Matrix q = draw_matrix(Family::unitary, 4, 1.0, rng);
        const double w1 = numerical_radius(a, tol).value;
        const double w2 = numerical_radius(adjoint(q) * a * q, tol).value;
        CHECK(std::abs(w1 - w2) <= 2.0 * tol + 1e-12 * spectral_norm(a));
    }
}

TEST_CASE("numerical_radius: normal matrices attain the spectral radius") {
    const double tol = 1e-9;
    for (const Matrix& a : corpus(Family::normal, 5, 10)) {
        Eigen::ComplexEigenSolver<Matrix> es(a);
        const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(std::abs(numerical_radius(a, tol).value - rho) <= tol + 1e-11 * std::max(1.0, rho));
    }
}

TEST_CASE("numerical_radius: block arrangements share the radius") {
    // the three off-diagonal embeddings of (X, Y) are unitarily equivalent
    const double tol = 1e-10;
    Rng rng(33);
    for (int k = 0; k < 6; ++k) {
        const Matrix x = draw_matrix(Family::gaussian, 3, 1.0, rng);
        const Matrix y = draw_matrix(Family::gaussian, 3, 1.0, rng);
        const Matrix o = Matrix::Zero(3, 3);
        const double w1 = numerical_radius(block_2x2(o, x, y, o), tol).value;
        const double w2 = numerical_radius(block_2x2(o, y, x, o), tol).value;
        const double w3 = numerical_radius(block_2x2(o, x, -y, o), tol).value;
        CHECK(std::abs(w1 - w2) <= 3.0 * tol);
        CHECK(std::abs(w1 - w3) <= 3.0 * tol);
    }
}

// ===== sampling oracle =====

TEST_CASE("numerical_radius_oracle: examples") {
    CHECK(numerical_radius_oracle(Matrix::Identity(2, 2), 1, 7) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(numerical_radius_oracle(jordan2(), 200, 7) >= 0.5 - 1e-8);
}

TEST_CASE("numerical_radius_oracle: agreement with the certified solver") {
    for (int dim : {2, 3, 5}) {
        for (const Matrix& a : corpus(Family::gaussian, dim, 4, 17)) {
            const CertifiedValue w = numerical_radius(a, 1e-10);
            const double lower = numerical_radius_oracle(a, 500, 101);
            CHECK(lower <= w.value + w.error_radius + 1e-9); // oracle is a lower bound
            CHECK(w.value - lower <= 1e-6);                  // and a sharp one at this size
        }
    }
}

// ===== auxiliary sup-over-theta quantities =====

TEST_CASE("sup_theta_real_norm equals the numerical radius") {
    for (const Matrix& a : corpus(Family::gaussian, 4, 10, 23)) {
        const CertifiedValue w = numerical_radius(a, 1e-10);
        const CertifiedValue s = sup_theta_real_norm(a, 1e-10);
        CHECK(std::abs(w.value - s.value) <= w.error_radius + s.error_radius + 1e-12);
    }
}

TEST_CASE("sup_theta_product_norm: examples and symmetry") {
    const Matrix i2 = Matrix::Identity(2, 2);
    const CertifiedValue both_id = sup_theta_product_norm(i2, i2, 1e-9);
    CHECK(std::abs(both_id.value - 1.0) <= 1e-9);

    const CertifiedValue with_zero = sup_theta_product_norm(i2, Matrix::Zero(2, 2), 1e-9);
    CHECK(std::abs(with_zero.value) <= 1e-9);

    Matrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(sup_theta_product_norm(i2, Matrix::Zero(3, 3), 1e-9), LinalgError);
    CHECK_THROWS_AS(sup_theta_product_norm(rect, rect, 1e-9), LinalgError);

    // sup_theta |Re(e^{i.}A) Re(e^{i.}B)| is bounded by |A| |B|
    Rng rng(55);
    for (int k = 0; k < 6; ++k) {
        const Matrix a = draw_matrix(Family::gaussian, 3, 1.0, rng);
        const Matrix b = draw_matrix(Family::gaussian, 3, 1.0, rng);
        const CertifiedValue s = sup_theta_product_norm(a, b, 1e-7);
        CHECK(s.value >= -1e-7);
        CHECK(s.value <= spectral_norm(a) * spectral_norm(b) + 1e-7);
        CHECK(s.error_radius <= 1e-7);
    }
}
