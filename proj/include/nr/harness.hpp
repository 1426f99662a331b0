#pragma once

#include "nr/catalog.hpp"
#include "nr/rng.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nr {

// ===== seeded operand generators =====

enum class Family { gaussian, hermitian, psd, normal, unitary, nilpotent, rank_deficient };

const char* family_name(Family f);
Family family_from_name(const std::string& name); // raises HarnessError on unknown names

class HarnessError : public std::runtime_error {
public:
    explicit HarnessError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GeneratorSpec {
    Family family = Family::gaussian;
    int dim = 2;
    std::uint64_t seed = 42;
    double scale = 1.0; // ignored by the unitary family (it would break the predicate)
};

/** Deterministic matrix stream: same spec, same bytes.  Every output satisfies
 *  its family predicate (Hermitian exactly, strictly upper triangular, ...). */
std::vector<Matrix> generate(const GeneratorSpec& spec, int count);

/// single draw from an open rng stream (the building block of generate/run_suite)
Matrix draw_matrix(Family family, int dim, double scale, Rng& rng);

// ===== corpus sweeps =====

struct Violation {
    std::uint64_t seed;  // per-trial sub-seed; replays the operands
    std::string digest;  // 16-hex digest of the operand bytes
    double margin;
};

struct CheckReport {
    std::string entry_id;
    GeneratorSpec spec;
    int trials = 0;
    std::vector<Violation> violations;
    double min_margin = 0.0;
    std::array<double, 5> quantiles{}; // p0, p25, p50, p75, p100
    double runtime_ms = 0.0;
};

/// t values cycled through t-parameterized entries: 0.05, 0.10, ..., 0.95
const std::vector<double>& default_t_grid();

/// families an entry can legally be driven with
std::vector<Family> compatible_families(const CatalogEntry& e);

/**
 * One CheckReport per (entry, spec): `trials` independent operand tuples per
 * report, each drawn from the sub-stream sub_seed(spec.seed, trial).
 * t-parameterized entries sweep the default grid across the trial stream
 * (trial i uses grid[i mod 19]); sign operands alternate by trial parity.
 * A trial is a violation when margin < -(tol + certified_error) * max(1,|rhs|).
 * Raises HarnessError on an incompatible entry/family pairing.
 */
std::vector<CheckReport> run_suite(const std::vector<std::string>& entries,
                                   const std::vector<GeneratorSpec>& specs, int trials,
                                   double tol);

/** The operand tuple run_suite would evaluate at a given trial index, with
 *  the t/sign schedule overridable (used by fixed-t sweeps). */
std::vector<Operand> draw_trial_operands(const CatalogEntry& e, const GeneratorSpec& spec,
                                         std::uint64_t trial, double t_value, int sign_value);

std::string operands_digest(const std::vector<Operand>& ops);

// ===== tightness search =====

struct SearchResult {
    std::vector<Operand> best_operands;
    double best_margin;
    int evaluations;
};

/**
 * Minimizes an entry's margin by random restarts plus coordinate-wise
 * Gaussian perturbation hill-descent (a candidate is kept only if its margin
 * decreases).  Deterministic given spec.seed; spends exactly `budget`
 * evaluate() calls.
 */
SearchResult tightness_search(const std::string& entry_id, const GeneratorSpec& spec, int budget,
                              double tol);

// ===== refinement comparison =====

struct RefinementRow {
    int matrix_index;
    double t;
    // w(T) | sqrt-form bound | (1/2)(||T|| + w(T_t)) | (1/4)||...|| + (1/2) w(T_t)
    std::array<double, 4> columns;
};

/**
 * For each matrix and each t: the certified radius, the refined sqrt-form
 * bound, and the two classical bounds it sharpens.  Asserts both ordering
 * chains row-wise (raises HarnessError on a violation beyond tolerance).
 */
std::vector<RefinementRow> refinement_comparison(const std::vector<Matrix>& ts,
                                                 const std::vector<double>& t_grid, double tol);

/// convenience overload: draws count matrices per spec, then compares
std::vector<RefinementRow> refinement_comparison(const std::vector<GeneratorSpec>& specs,
                                                 int count, const std::vector<double>& t_grid,
                                                 double tol);

} // namespace nr
