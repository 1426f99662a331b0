#include "nr/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

namespace nr {

// ===== families =====

const char* family_name(Family f) {
    switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::hermitian: return "hermitian";
    case Family::psd: return "psd";
    case Family::normal: return "normal";
    case Family::unitary: return "unitary";
    case Family::nilpotent: return "nilpotent";
    case Family::rank_deficient: return "rank_deficient";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::gaussian, Family::hermitian, Family::psd, Family::normal,
                     Family::unitary, Family::nilpotent, Family::rank_deficient})
        if (name == family_name(f)) return f;
    throw HarnessError("unknown family: " + name);
}

namespace {

Matrix gaussian_matrix(int n, int m, Rng& rng) {
    Matrix a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            const auto [re, im] = rng.next_normal_pair();
            a(i, j) = Complex(re, im);
        }
    return a;
}

Matrix unitary_matrix(int n, Rng& rng) {
    const Matrix a = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the phase ambiguity so the distribution is Haar, not QR-dependent
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double m = std::abs(d);
        q.col(j) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
    }
    return q;
}

} // namespace

Matrix draw_matrix(Family family, int dim, double scale, Rng& rng) {
    const int n = dim;
    switch (family) {
    case Family::gaussian:
        return scale * gaussian_matrix(n, n, rng);
    case Family::hermitian: {
        const Matrix a = gaussian_matrix(n, n, rng);
        return scale * Matrix(0.5 * (a + a.adjoint()));
    }
    case Family::psd: {
        const Matrix b = gaussian_matrix(n, n, rng);
        Matrix p = b.adjoint() * b;
        return scale * Matrix(0.5 * (p + p.adjoint()));
    }
    case Family::normal: {
        const Matrix u = unitary_matrix(n, rng);
        Vector lam(n);
        for (int i = 0; i < n; ++i) {
            const auto [re, im] = rng.next_normal_pair();
            lam(i) = Complex(re, im);
        }
        return scale * Matrix(u * lam.asDiagonal() * u.adjoint());
    }
    case Family::unitary:
        return unitary_matrix(n, rng); // scale ignored: the predicate is Q*Q = I
    case Family::nilpotent: {
        Matrix a = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const auto [re, im] = rng.next_normal_pair();
                a(i, j) = scale * Complex(re, im);
            }
        return a;
    }
    case Family::rank_deficient: {
        const Matrix g = gaussian_matrix(n, n, rng);
        RealVector d = RealVector::Ones(n);
        d(n - 1) = 0.0;
        return scale * Matrix(g * d.asDiagonal() * g);
    }
    }
    throw HarnessError("unknown family");
}

std::vector<Matrix> generate(const GeneratorSpec& spec, int count) {
    if (count < 1) throw HarnessError("generate: count must be >= 1");
    if (spec.dim < 1) throw HarnessError("generate: dim must be >= 1");
    if (!(spec.scale > 0.0)) throw HarnessError("generate: scale must be > 0");
    Rng rng(spec.seed);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(draw_matrix(spec.family, spec.dim, spec.scale, rng));
    return out;
}

// ===== operand drawing for catalog entries =====

const std::vector<double>& default_t_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int k = 1; k <= 19; ++k) g.push_back(0.05 * k);
        return g;
    }();
    return grid;
}

std::vector<Family> compatible_families(const CatalogEntry& e) {
    bool needs_psd = false, needs_nilp2 = false, has_matrix = false;
    for (Role r : e.signature) {
        if (r == Role::PsdMatrix) needs_psd = true;
        if (r == Role::Nilpotent2) needs_nilp2 = true;
        if (r == Role::SquareMatrix || r == Role::NonzeroMatrix) has_matrix = true;
    }
    if (needs_psd) return {Family::psd};
    if (needs_nilp2) return {Family::nilpotent};
    if (!has_matrix) return {Family::gaussian}; // vector-only relations: family is moot
    return {Family::gaussian, Family::hermitian, Family::normal, Family::unitary,
            Family::nilpotent, Family::rank_deficient};
}

namespace {

Matrix unit_vector(int dim, Rng& rng) {
    Matrix v = gaussian_matrix(dim, 1, rng);
    const double n = v.norm();
    return n > 0.0 ? Matrix(v / n) : Matrix::Identity(dim, 1);
}

/// one operand tuple for a trial; t and sign come from the trial schedule
std::vector<Operand> draw_operands(const CatalogEntry& e, const GeneratorSpec& spec, Rng& rng,
                                   double t_value, int sign_value) {
    std::vector<Operand> ops;
    ops.reserve(e.signature.size());
    for (Role role : e.signature) {
        switch (role) {
        case Role::SquareMatrix:
        case Role::NonzeroMatrix:
        case Role::PsdMatrix:
        case Role::Nilpotent2:
            ops.emplace_back(draw_matrix(spec.family, spec.dim, spec.scale, rng));
            break;
        case Role::AnyVector:
            ops.emplace_back(Matrix(spec.scale * gaussian_matrix(spec.dim, 1, rng)));
            break;
        case Role::UnitVector:
            ops.emplace_back(unit_vector(spec.dim, rng));
            break;
        case Role::ParamT:
            ops.emplace_back(t_value);
            break;
        case Role::Sign:
            ops.emplace_back(sign_value);
            break;
        }
    }
    return ops;
}

// FNV-1a over a canonical byte serialization of the operands
struct Digest {
    std::uint64_t h = 0xCBF29CE484222325ull;
    void bytes(const void* p, std::size_t n) {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= c[i];
            h *= 0x100000001B3ull;
        }
    }
    void u64(std::uint64_t v) { bytes(&v, 8); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
};

} // namespace

std::string operands_digest(const std::vector<Operand>& ops) {
    Digest d;
    for (const Operand& op : ops) {
        if (const Matrix* m = std::get_if<Matrix>(&op)) {
            d.u64(0x4D); // 'M'
            d.u64(static_cast<std::uint64_t>(m->rows()));
            d.u64(static_cast<std::uint64_t>(m->cols()));
            for (Eigen::Index i = 0; i < m->rows(); ++i)
                for (Eigen::Index j = 0; j < m->cols(); ++j) {
                    d.f64((*m)(i, j).real());
                    d.f64((*m)(i, j).imag());
                }
        } else if (const double* t = std::get_if<double>(&op)) {
            d.u64(0x54); // 'T'
            d.f64(*t);
        } else {
            d.u64(0x53); // 'S'
            d.u64(static_cast<std::uint64_t>(std::get<int>(op)));
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d.h));
    return buf;
}

// ===== suite runner =====

std::vector<Operand> draw_trial_operands(const CatalogEntry& e, const GeneratorSpec& spec,
                                         std::uint64_t trial, double t_value, int sign_value) {
    Rng rng(sub_seed(spec.seed, trial));
    return draw_operands(e, spec, rng, t_value, sign_value);
}

std::vector<CheckReport> run_suite(const std::vector<std::string>& entries,
                                   const std::vector<GeneratorSpec>& specs, int trials,
                                   double tol) {
    if (trials < 1) throw HarnessError("run_suite: trials must be >= 1");
    if (tol <= 0.0) tol = 1e-8;

    // validate all pairings before any work
    for (const std::string& id : entries) {
        const CatalogEntry& e = find_entry(id);
        for (const GeneratorSpec& spec : specs) {
            const auto fams = compatible_families(e);
            const bool fam_ok = std::find(fams.begin(), fams.end(), spec.family) != fams.end();
            bool dim_ok = spec.dim >= 1;
            for (Role r : e.signature)
                if (r == Role::Nilpotent2 && spec.dim != 2) dim_ok = false;
            if (!fam_ok || !dim_ok)
                throw HarnessError("incompatible entry/family pairing: " + e.id + " with " +
                                   family_name(spec.family) + " dim " + std::to_string(spec.dim));
        }
    }

    const std::vector<double>& grid = default_t_grid();
    std::vector<CheckReport> reports;
    reports.reserve(entries.size() * specs.size());

    for (const std::string& id : entries) {
        const CatalogEntry& e = find_entry(id);
        for (const GeneratorSpec& spec : specs) {
            const auto start = std::chrono::steady_clock::now();
            CheckReport report;
            report.entry_id = e.id;
            report.spec = spec;
            report.trials = trials;

            std::vector<double> margins;
            margins.reserve(static_cast<std::size_t>(trials));
            for (int trial = 0; trial < trials; ++trial) {
                const std::uint64_t trial_seed = sub_seed(spec.seed, static_cast<std::uint64_t>(trial));
                Rng rng(trial_seed);
                const double t_value = grid[static_cast<std::size_t>(trial) % grid.size()];
                const int sign_value = (trial % 2 == 0) ? 1 : -1;
                const std::vector<Operand> ops = draw_operands(e, spec, rng, t_value, sign_value);
                const EvalResult res = evaluate(e.id, ops, tol);
                margins.push_back(res.margin);
                if (!passes(res, tol))
                    report.violations.push_back({trial_seed, operands_digest(ops), res.margin});
            }

            std::vector<double> sorted = margins;
            std::sort(sorted.begin(), sorted.end());
            report.min_margin = sorted.front();
            const auto quantile = [&](double p) {
                const double pos = p * static_cast<double>(sorted.size() - 1);
                const std::size_t lo = static_cast<std::size_t>(pos);
                const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
                const double frac = pos - static_cast<double>(lo);
                return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
            };
            report.quantiles = {quantile(0.0), quantile(0.25), quantile(0.5), quantile(0.75),
                                quantile(1.0)};
            report.runtime_ms = std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

// ===== tightness search =====

namespace {

Matrix psd_project(const Matrix& m) {
    const HermitianEigen eig = herm_eigen(m);
    RealVector clipped = eig.values.cwiseMax(0.0);
    Matrix out = eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

/// perturb one randomly chosen coordinate of one randomly chosen operand
std::vector<Operand> perturb(const CatalogEntry& e, const std::vector<Operand>& ops, Rng& rng,
                             double sigma) {
    std::vector<Operand> out = ops;
    const std::size_t k = static_cast<std::size_t>(rng.next_u64() % ops.size());
    const Role role = e.signature[k];
    switch (role) {
    case Role::ParamT: {
        const double t = std::get<double>(out[k]);
        const double z = rng.next_normal();
        out[k] = std::clamp(t + 0.2 * sigma * z, 0.0, 1.0);
        break;
    }
    case Role::Sign:
        out[k] = -std::get<int>(out[k]);
        break;
    case Role::Nilpotent2: {
        Matrix m = std::get<Matrix>(out[k]);
        const auto [re, im] = rng.next_normal_pair();
        m(0, 1) += sigma * Complex(re, im); // stays strictly upper triangular
        out[k] = std::move(m);
        break;
    }
    case Role::PsdMatrix: {
        Matrix m = std::get<Matrix>(out[k]);
        const auto n = m.rows();
        const auto i = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(n));
        const auto j = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(n));
        const auto [re, im] = rng.next_normal_pair();
        if (i == j) {
            m(i, i) += Complex(sigma * re, 0.0);
        } else {
            const Complex z(re, im);
            m(i, j) += sigma * z;
            m(j, i) += sigma * std::conj(z);
        }
        out[k] = psd_project(m);
        break;
    }
    case Role::UnitVector: {
        Matrix v = std::get<Matrix>(out[k]);
        const auto i = static_cast<Eigen::Index>(rng.next_u64() %
                                                 static_cast<std::uint64_t>(v.rows()));
        const auto [re, im] = rng.next_normal_pair();
        v(i, 0) += sigma * Complex(re, im);
        const double n = v.norm();
        if (n > 0.0) v /= n;
        out[k] = std::move(v);
        break;
    }
    default: { // square / nonzero matrices and free vectors
        Matrix m = std::get<Matrix>(out[k]);
        const auto rows = m.rows(), cols = m.cols();
        const auto i = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(rows));
        const auto j = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(cols));
        const auto [re, im] = rng.next_normal_pair();
        m(i, j) += sigma * Complex(re, im);
        out[k] = std::move(m);
        break;
    }
    }
    return out;
}

} // namespace

SearchResult tightness_search(const std::string& entry_id, const GeneratorSpec& spec, int budget,
                              double tol) {
    const CatalogEntry& e = find_entry(entry_id);
    if (budget < 1) throw HarnessError("tightness_search: budget must be >= 1");
    if (tol <= 0.0) tol = 1e-8;

    Rng rng(spec.seed);
    SearchResult best;
    best.best_margin = std::numeric_limits<double>::infinity();
    best.evaluations = 0;

    int evals = 0;
    while (evals < budget) {
        // fresh restart
        std::vector<Operand> current = draw_operands(e, spec, rng, 0.5, 1);
        double current_margin;
        try {
            current_margin = evaluate(e.id, current, tol).margin;
        } catch (const CatalogError&) {
            ++evals; // degenerate draw (e.g. zero-norm); spend and move on
            continue;
        }
        ++evals;
        if (current_margin < best.best_margin) {
            best.best_margin = current_margin;
            best.best_operands = current;
        }

        double sigma = 0.5;
        int rejects = 0;
        while (evals < budget && sigma > 1e-10) {
            std::vector<Operand> cand = perturb(e, current, rng, sigma);
            double m;
            try {
                m = evaluate(e.id, cand, tol).margin;
            } catch (const CatalogError&) {
                ++evals; // perturbation broke a hypothesis; reject it
                ++rejects;
                if (rejects >= 25) { sigma *= 0.6; rejects = 0; }
                continue;
            }
            ++evals;
            if (m < current_margin) {
                current = std::move(cand);
                current_margin = m;
                rejects = 0;
                if (m < best.best_margin) {
                    best.best_margin = m;
                    best.best_operands = current;
                }
            } else if (++rejects >= 25) {
                sigma *= 0.6;
                rejects = 0;
            }
        }
    }
    best.evaluations = evals;
    return best;
}

// ===== refinement comparison =====

std::vector<RefinementRow> refinement_comparison(const std::vector<Matrix>& ts,
                                                 const std::vector<double>& t_grid, double tol) {
    if (tol <= 0.0) tol = 1e-8;
    std::vector<RefinementRow> rows;
    rows.reserve(ts.size() * t_grid.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        for (double t : t_grid) {
            const std::vector<Operand> ops = {ts[k], t};
            const EvalResult refined = evaluate("R-chain1", ops, tol);
            const EvalResult power_sum = evaluate("R-chain2", ops, tol);
            if (!passes(refined, tol) || !passes(power_sum, tol))
                throw HarnessError("refinement ordering violated at matrix " + std::to_string(k) +
                                   ", t = " + std::to_string(t));
            RefinementRow row;
            row.matrix_index = static_cast<int>(k);
            row.t = t;
            row.columns = {refined.chain[0], refined.chain[1], refined.chain[4],
                           power_sum.chain[3]};
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<RefinementRow> refinement_comparison(const std::vector<GeneratorSpec>& specs,
                                                 int count, const std::vector<double>& t_grid,
                                                 double tol) {
    std::vector<Matrix> ts;
    for (const GeneratorSpec& spec : specs) {
        std::vector<Matrix> drawn = generate(spec, count);
        ts.insert(ts.end(), std::make_move_iterator(drawn.begin()),
                  std::make_move_iterator(drawn.end()));
    }
    return refinement_comparison(ts, t_grid, tol);
}

} // namespace nr
