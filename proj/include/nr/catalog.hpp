#pragma once

#include "nr/interval.hpp"
#include "nr/linalg.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nr {

// ===== registry of checkable relations =====
//
// Each entry is one inequality, identity, or ordering chain between certified
// scalar expressions in matrix operands.  Entries are immutable data;
// evaluation is pure.

enum class Kind { INEQUALITY, IDENTITY, ORDERING };

/// operand roles drive signature validation and search perturbations
enum class Role {
    SquareMatrix,    // any finite square matrix
    NonzeroMatrix,   // square, not identically zero
    PsdMatrix,       // Hermitian positive semidefinite
    Nilpotent2,      // 2x2 with square numerically zero
    AnyVector,       // n x 1
    UnitVector,      // n x 1 with unit norm
    ParamT,          // scalar in [0, 1]
    Sign,            // +1 or -1
};

/// matrix | real parameter | sign
using Operand = std::variant<Matrix, double, int>;

struct EvalResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;          // INEQUALITY: rhs-lhs; IDENTITY: -max|step|; ORDERING: min step
    double certified_error = 0.0; // sum of the error radii of the chain values
    std::vector<double> chain;    // every certified value, in display order
};

class CatalogError : public std::runtime_error {
public:
    enum class Code {
        UNKNOWN_ENTRY,
        SIGNATURE_MISMATCH,
        ZERO_NORM_OPERAND,
        PARAM_OUT_OF_RANGE,
        WRONG_KIND,
    };
    CatalogError(Code code, const std::string& msg) : std::runtime_error(msg), code(code) {}
    Code code;
};

struct CatalogEntry {
    std::string id;
    std::string anchor; // literature pointer for the relation
    Kind kind;
    std::vector<Role> signature;
    bool t_parameterized = false; // has a ParamT operand
    bool sign_parameterized = false;

    // returns the chain of enclosures; size 2 for a plain inequality/identity
    std::function<std::vector<Ival>(const std::vector<Operand>&, double tol)> eval;
};

/// all registered entries, in registry order
const std::vector<CatalogEntry>& registry();

/// lookup by id; raises CatalogError(UNKNOWN_ENTRY)
const CatalogEntry& find_entry(const std::string& id);

/**
 * Evaluate one entry on validated operands.  Internal numerical-radius terms
 * run at tol/4 so the certificate leaves headroom inside the entry-level
 * pass threshold -(tol + certified_error) * max(1, |rhs|).
 */
EvalResult evaluate(const std::string& id, const std::vector<Operand>& operands, double tol);

/** Per-link results for an ORDERING entry (kind check enforced). */
std::vector<EvalResult> evaluate_chain(const std::string& id, const std::vector<Operand>& operands,
                                       double tol);

/// pass criterion shared by evaluate() consumers
inline bool passes(const EvalResult& r, double tol) {
    return r.margin >= -(tol + r.certified_error) * std::max(1.0, std::abs(r.rhs));
}

const char* kind_name(Kind k);
const char* role_name(Role r);

} // namespace nr
