#pragma once

#include <cstdint>
#include <optional>

#include "invlab/invariants.hpp"
#include "invlab/states.hpp"

namespace invlab {

/// Mixing weights of the structural physical approximation to Lambda for r
/// copies of an n-qubit state.
struct SpaParameters {
    int n = 1;
    int r = 2;
    double identity_weight = 0.0;  // 2^{3nr/2} / (2^{3nr/2}+1)
    double map_weight = 0.0;       // 1 / (2^{3nr/2}+1)
};

enum class Component { Real, Imaginary };

struct NetworkConfig {
    PermutationTuple spec;
    bool use_spa = false;                    // SLOCC only
    Component component = Component::Real;   // Imaginary is LU only
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
};

/// Joint-dimension guard for network simulation; INVLAB_DIM_CAP overrides the
/// default 2^16. Dense operator materialization is additionally capped at
/// kDenseCap; the ancilla-circuit path (which squares 2D-dimensional matrices)
/// runs on demand up to kCircuitCap and is cross-checked against the
/// structured path on every call up to kAutoCircuitCap.
std::int64_t dimension_cap();
inline constexpr std::int64_t kDenseCap = 2048;
inline constexpr std::int64_t kCircuitCap = 512;
inline constexpr std::int64_t kAutoCircuitCap = 64;

/// P_sigma = (x)_p P_{sigma_p}, each P_{sigma_p} acting on that party's r copy
/// slots by |i_1...i_r> -> |i_{sigma(1)}...i_{sigma(r)}>, in the global
/// copy-major party-minor layout. A 0/1 permutation matrix.
ComplexTensor permutation_operator(const PermutationTuple& spec, const std::vector<int>& dims);

/// Swaps copies (1,2), (3,4), ... as whole n-party blocks; r must be even.
ComplexTensor pairwise_swap(int r, const std::vector<int>& dims);

SpaParameters spa_coefficients(int n, int r);

/// Tilde applied to the even-numbered copies of a joint matrix over r n-qubit
/// copies (linear extension; the result is generally not positive).
/// Oracle/diagnostic only: not reachable from the simulated-physics path.
ComplexTensor lambda_map(const ComplexTensor& joint, int n, int r);

/// Linear action of the SPA channel on an arbitrary matrix (used for the Choi
/// construction); apply_spa wraps it with density-matrix validation.
ComplexTensor spa_map(const ComplexTensor& joint, const SpaParameters& params);
DensityMatrix apply_spa(const DensityMatrix& joint, const SpaParameters& params);

/// Choi matrix sum_ij E_ij (x) spa_map(E_ij); PSD iff the channel is CP.
ComplexTensor spa_choi(const SpaParameters& params);

/// Exact ancilla expectation of the measurement network.
/// LU: Re Tr(P rho^{(x)r}) or Re Tr(iP rho^{(x)r}).
/// SLOCC: Re Tr(V rho') with rho' = LambdaBar(P^dag rho^{(x)r} P) under SPA,
/// else the ideal-Lambda diagnostic path. Computed by structured contraction;
/// below kCircuitCap the explicit |0>-H-controlled U-H-Z circuit is also run
/// and must agree to 1e-10.
double network_expectation(const DensityMatrix& rho, const NetworkConfig& config);
double network_expectation(const PureState& psi, const NetworkConfig& config);

/// The dense circuit path on its own (throws above kCircuitCap).
double network_expectation_circuit(const DensityMatrix& rho, const NetworkConfig& config);

/// Binomial draw with p = (1+F)/2; F clamped to [-1,1] within 1e-12 slack.
std::int64_t sample_shots(double F, std::int64_t shots, std::uint64_t seed);

struct RecoveredModsq {
    double value;
    bool below_zero;  // negative under sampling noise; never clamped
};

/// Inverts the SPA-dressed expectation: |K|^2 = (2^{3nr/2}+1) z - 2^{nr}.
RecoveredModsq recover_modsq(double z_hat, int n, int r);

}  // namespace invlab
