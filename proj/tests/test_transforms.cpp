#include <doctest.h>

#include "nr/harness.hpp"
#include "nr/radius.hpp"
#include "nr/transforms.hpp"

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

void check_polar_invariants(const Matrix& a) {
    const PolarParts pp = polar_decompose(a);
    const int n = static_cast<int>(a.rows());
    const double scale = std::max(1.0, spectral_norm(a));
    CHECK(fro_norm(pp.isometry * pp.positive - a) < 1e-12 * n * scale);
    CHECK(fro_norm(pp.positive - abs_matrix(a)) < 1e-12 * n * scale);
    // U^*U is the orthogonal projection onto range(P)
    const Matrix proj = adjoint(pp.isometry) * pp.isometry;
    CHECK(fro_norm(proj - adjoint(proj)) < 1e-12 * n);
    CHECK(fro_norm(proj * proj - proj) < 1e-12 * n);
    CHECK(fro_norm(proj * pp.positive - pp.positive) < 1e-12 * n * scale);
}

} // namespace

// ===== polar decomposition =====

TEST_CASE("polar_decompose: unitary input") {
    for (const Matrix& q : corpus(Family::unitary, 3, 5)) {
        const PolarParts pp = polar_decompose(q);
        CHECK(fro_norm(pp.isometry - q) < 1e-12);
        CHECK(fro_norm(pp.positive - Matrix::Identity(3, 3)) < 1e-12);
    }
}

TEST_CASE("polar_decompose: isometry vanishes on the kernel") {
    Matrix d(2, 2);
    d << 2, 0, 0, 0;
    const PolarParts pp = polar_decompose(d);
    Matrix u_expect(2, 2);
    u_expect << 1, 0, 0, 0;
    CHECK(fro_norm(pp.isometry - u_expect) < 1e-14);
    CHECK(fro_norm(pp.positive - d) < 1e-14);

    const PolarParts pj = polar_decompose(jordan2());
    CHECK(fro_norm(pj.isometry - jordan2()) < 1e-14);
    Matrix p_expect(2, 2);
    p_expect << 0, 0, 0, 1;
    CHECK(fro_norm(pj.positive - p_expect) < 1e-14);
    CHECK(fro_norm(adjoint(pj.isometry) * pj.isometry - p_expect) < 1e-14);
}

TEST_CASE("polar_decompose: round-trip invariants on a large mixed corpus") {
    // 1000 matrices across families, rank-deficient ones included
    for (Family fam : {Family::gaussian, Family::rank_deficient, Family::nilpotent,
                       Family::hermitian, Family::normal}) {
        for (int dim : {2, 3, 5}) {
            for (const Matrix& a : corpus(fam, dim, 67, 1234 + dim)) {
                check_polar_invariants(a);
            }
        }
    }
    check_polar_invariants(Matrix::Zero(3, 3));
}

// ===== Aluthge transforms =====

TEST_CASE("aluthge_general: examples and domain errors") {
    // full-rank PSD: U = I, so P^a U P^b = P whenever a+b = 1
    for (const Matrix& raw : corpus(Family::psd, 3, 5)) {
        const Matrix p = raw + 0.1 * Matrix::Identity(3, 3); // keep it full rank
        const Matrix out = aluthge_general(p, 0.3, 0.7);
        CHECK(fro_norm(out - p) < 1e-10 * std::max(1.0, fro_norm(p)));
    }

    CHECK(fro_norm(aluthge_general(jordan2(), 0.5, 0.5)) < 1e-14);

    for (const Matrix& q : corpus(Family::unitary, 4, 3)) {
        CHECK(fro_norm(aluthge_general(q, 0.25, 0.75) - q) < 1e-12);
    }

    CHECK_THROWS_AS(aluthge_general(jordan2(), -0.1, 0.5), LinalgError);
    CHECK_THROWS_AS(aluthge_general(jordan2(), 0.5, -0.1), LinalgError);
}

TEST_CASE("aluthge_t: convention and parameter validation") {
    // |T|^t U |T|^{1-t}; t = 1/2 is the classical transform
    for (const Matrix& a : corpus(Family::gaussian, 4, 5, 9)) {
        const PolarParts pp = polar_decompose(a);
        const Matrix classical =
            psd_power(pp.positive, 0.5) * pp.isometry * psd_power(pp.positive, 0.5);
        CHECK(fro_norm(aluthge_t(a, 0.5) - classical) < 1e-12 * std::max(1.0, fro_norm(a)));
        CHECK(fro_norm(aluthge_t(a, 0.3) - aluthge_general(a, 0.3, 0.7)) == 0.0);
    }

    for (const Matrix& raw : corpus(Family::psd, 3, 5, 10)) {
        const Matrix p = raw + 0.1 * Matrix::Identity(3, 3);
        CHECK(fro_norm(aluthge_t(p, 0.25) - p) < 1e-10 * std::max(1.0, fro_norm(p)));
    }

    CHECK_THROWS_AS(aluthge_t(jordan2(), -0.01), LinalgError);
    CHECK_THROWS_AS(aluthge_t(jordan2(), 1.01), LinalgError);
}

TEST_CASE("aluthge_t: nilpotent 2x2 collapses to zero on the whole grid") {
    for (const Matrix& t : corpus(Family::nilpotent, 2, 10, 3)) {
        for (double tt : default_t_grid()) {
            CHECK(fro_norm(aluthge_t(t, tt)) < 1e-12 * std::max(1.0, fro_norm(t)));
        }
    }
}

TEST_CASE("aluthge transform: norm chain w(T~) <= |T~| <= |T^2|^1/2 <= |T|") {
    for (const Matrix& t : corpus(Family::gaussian, 4, 8, 77)) {
        const double scale = std::max(1.0, spectral_norm(t));
        const Matrix at = aluthge_t(t, 0.5);
        const CertifiedValue w = numerical_radius(at, 1e-10);
        const double n_at = spectral_norm(at);
        const double root = std::sqrt(spectral_norm(t * t));
        CHECK(w.value <= n_at + 1e-9 * scale);
        CHECK(n_at <= root + 1e-9 * scale);
        CHECK(root <= spectral_norm(t) + 1e-9 * scale);
    }
}

TEST_CASE("weighted power-sum norm identity evaluates to 2|T|") {
    // | |T|^{2t-1} |T|^{2(1-t)} + |T|^{1-2t} |T|^{2t} | = 2 |T|  (T != 0)
    for (const Matrix& t : corpus(Family::gaussian, 4, 6, 13)) {
        const double nrm = spectral_norm(t);
        for (double tt : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const Matrix g = std::pow(nrm, 2.0 * tt - 1.0) * abs_power(t, 2.0 * (1.0 - tt)) +
                             std::pow(nrm, 1.0 - 2.0 * tt) * abs_power(t, 2.0 * tt);
            CHECK(std::abs(spectral_norm(g) - 2.0 * nrm) < 1e-9 * nrm);
        }
    }
}
