#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "invlab/network.hpp"

namespace invlab {

struct EstimationReport {
    std::string protocol;  // "network" | "tomography"
    double estimate = 0.0;
    double predicted_variance = 0.0;
    double empirical_variance = 0.0;  // valid only when has_sampling
    bool has_sampling = false;
    std::int64_t shots = 0;
    double copies = 0.0;
    std::vector<std::string> flags;
    std::uint64_t seed = 0;
    double exact_expectation = 0.0;  // network runs: the exact ancilla <Z>
};

struct SampleBudget {
    double epsilon = 0.0;
    double copies_network = 0.0;
    double copies_tomography = 0.0;
};

enum class SloccVariant { Quadratic, Literal };

/// F_hat = 2 s/N - 1, var_hat = (1 - F_hat^2)/N.
std::pair<double, double> estimate_F(std::int64_t successes, std::int64_t shots);

/// M = (r/eps)(1 - |J|^2), or (r/eps)(2 - |J|^2) when both components must be
/// estimated.
double copies_needed_lu(int r, double modJ_sq, double epsilon, bool component_known);

/// M = (r/eps)[(2^{3nr/2}+1)^2 - (|K|^2 + 2^{nr})^2].
double copies_needed_slocc(int n, int r, double modK_sq, double epsilon);

/// N = (3/eps) sum_j b_j^2 (1 - b_j^2).
double tomography_copies_lu(const std::array<double, 3>& b, double epsilon);

/// N = (15/4eps)[sum_j (a_j^2(1-a_j^2) + t_j(1-b_j^2)) + sum_jk R_jk^2(1-R_jk^2)]
/// with t_j = b_j^2 (Quadratic, the symmetry-consistent reading) or t_j = b_j
/// (Literal, the formula exactly as printed).
double tomography_copies_slocc(const BlochDecomposition& bd, double epsilon,
                               SloccVariant variant);

/// sigma_j measurements on Bob's half, N/3 each; J_hat = (1 + sum b_hat^2)/2.
EstimationReport simulate_tomography_lu(const DensityMatrix& rho, std::int64_t N,
                                        std::uint64_t seed);

/// Full network protocol run: exact expectation, optional shot sampling, and
/// (for SPA runs) the recovered |K|^2 with its propagated variance.
EstimationReport run_network_protocol(const DensityMatrix& rho, const NetworkConfig& config);
EstimationReport run_network_protocol(const PureState& psi, const NetworkConfig& config);

enum class Comparison { LU, SLOCC };

struct HaarComparison {
    Comparison kind;
    SloccVariant variant = SloccVariant::Quadratic;  // SLOCC only
    std::uint64_t samples = 0;
    double ratio = 0.0;        // lu: mean(N_tom)/mean(M_net); slocc: mean(M_net)/mean(N_tom)
    double std_error = 0.0;    // delta-method standard error of the ratio
    bool interval_defined = true;
    SampleBudget budget;       // Haar-mean copy budgets of the two protocols
    /// SLOCC only: min over samples of M_network/N_tomography, the best case
    /// for the network. Stays well above 1 (no state favors the network).
    double min_network_over_tomography = 0.0;
    std::vector<std::string> flags;
};

/// Monte Carlo over Haar-random two-qubit pure states; per-sample seeds are
/// derived from (seed, i) so the result is independent of scheduling.
HaarComparison haar_average_ratio(Comparison kind, std::uint64_t samples, double epsilon,
                                  std::uint64_t seed, SloccVariant variant);

/// Root of N_tomography(b3) - M_network(b3) on the pure Schmidt family
/// a = 0, b = (0,0,b3); analytically sqrt(3/5).
double lu_crossover(double b3_lo = 0.5, double b3_hi = 0.9);

}  // namespace invlab
