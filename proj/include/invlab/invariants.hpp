#pragma once

#include <string>
#include <vector>

#include "invlab/states.hpp"

namespace invlab {

enum class Mode { LU, SLOCC };

/// One permutation of the r copy slots per party, 0-indexed images:
/// perms[p][c] = sigma_p(c). Copy c of the state carries dummy slot sigma_p(c)
/// for party p; delta/eps contractions run over the slots.
struct PermutationTuple {
    int r = 1;
    std::vector<std::vector<int>> perms;
    Mode mode = Mode::LU;
    std::string name;  // catalog name when applicable

    int parties() const { return static_cast<int>(perms.size()); }
};

struct InvariantValue {
    Mode mode;
    int degree;
    cxd value;        // J or K; for modsq evaluations the real value
    bool is_modsq;    // true when value holds |K|^2
};

/// Throws ValidationError unless every perm is a bijection on {0..r-1} and,
/// in SLOCC mode, r is even.
void validate_tuple(const PermutationTuple& spec);

/// Right-composes every party permutation with sigma_1^{-1}, making party 1 the
/// identity. Value-preserving for pure-state evaluation only; mixed-state
/// evaluation must use the raw tuple.
PermutationTuple canonical_form(const PermutationTuple& spec);

// Evaluation engine. The *_serial variants are the reference implementations:
// a single left-to-right accumulation in raw index order, kept for the
// exact brute-force equivalence tests and the benchmark. The unsuffixed
// variants run the same enumeration through the deterministic chunked
// OpenMP reduction.

cxd eval_lu_pure(const PureState& psi, const PermutationTuple& spec);
cxd eval_lu_pure_serial(const PureState& psi, const PermutationTuple& spec);

cxd eval_lu_mixed(const DensityMatrix& rho, const PermutationTuple& spec);
cxd eval_lu_mixed_serial(const DensityMatrix& rho, const PermutationTuple& spec);

cxd eval_slocc_pure(const PureState& psi, const PermutationTuple& spec);
cxd eval_slocc_pure_serial(const PureState& psi, const PermutationTuple& spec);

double eval_slocc_modsq_mixed(const DensityMatrix& rho, const PermutationTuple& spec);
double eval_slocc_modsq_mixed_serial(const DensityMatrix& rho, const PermutationTuple& spec);

/// Catalog: norm | norm(n) | two_qubit_quartic | slocc_quadratic | three_tangle |
/// moment(m), m = 1..4.
///
/// Raw-value conventions (not rescaled; the networks measure exactly these):
///  - slocc_quadratic evaluates to twice det(alpha) (the eps contraction double
///    counts the determinant), so the Bell value is 1.
///  - three_tangle evaluates to 0.5 on GHZ; the common literature normalization
///    tau_3(GHZ) = 1 is a factor 2 away and is intentionally not applied.
///  - moment(m) is the degree-2m tuple with identity permutations. On pure
///    states |K|^2 = Tr((rho rho~)^m) exactly; on mixed states the double-eps
///    contraction gives (Tr rho rho~)^m, which coincides with the moment only
///    for m = 1. No permutation tuple reaches the higher mixed moments: the
///    double-eps form ties the upper and lower copy pairings together, while
///    Tr((rho rho~)^m) needs them offset (exhaustively checked for r = 4).
PermutationTuple named_invariant(const std::string& name);

/// DOT rendering of the contraction diagram: one node per tensor term (and per
/// conjugate term in LU mode), one edge per delta/eps contraction, labelled by
/// party.
std::string diagram(const PermutationTuple& spec);

}  // namespace invlab
