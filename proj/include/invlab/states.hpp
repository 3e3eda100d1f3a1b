#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "invlab/complex_tensor.hpp"

namespace invlab {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kMinEigTol = -1e-8;

/// n-party pure state; amplitudes tensor has one axis per party.
struct PureState {
    std::vector<int> dims;
    ComplexTensor amplitudes;
    bool unnormalized = false;

    int parties() const { return static_cast<int>(dims.size()); }
    std::int64_t total_dim() const;
};

/// n-party density matrix over prod(dims); row index is the bra side of
/// rho^{upper}_{lower} = <upper|rho|lower>, upper = row.
struct DensityMatrix {
    std::vector<int> dims;
    ComplexTensor matrix;

    int parties() const { return static_cast<int>(dims.size()); }
    std::int64_t total_dim() const { return matrix.shape.empty() ? 0 : matrix.shape[0]; }
};

struct BlochDecomposition {
    std::array<double, 3> a{};
    std::array<double, 3> b{};
    std::array<std::array<double, 3>, 3> R{};
};

PureState make_pure(std::vector<cxd> amplitudes, std::vector<int> dims,
                    bool unnormalized = false);
DensityMatrix density_from_pure(const PureState& psi);

/// Validates Hermiticity, unit trace and positivity (min eig >= -1e-8).
DensityMatrix make_density(ComplexTensor matrix, std::vector<int> dims);

/// product | bell | schmidt(p) | ghz(n) | w(n); p in [1/2, 1].
PureState named_state(const std::string& name, double param = 0.0);

PureState haar_random_pure(const std::vector<int>& dims, std::uint64_t seed);
ComplexTensor haar_random_unitary(int d, std::uint64_t seed);
ComplexTensor random_sl2(std::uint64_t seed);

/// Test-measure mixed state: partial trace of a Haar pure state on a doubled system.
DensityMatrix random_mixed(const std::vector<int>& dims, std::uint64_t seed);

BlochDecomposition bloch_decompose(const DensityMatrix& rho);
DensityMatrix bloch_reconstruct(const BlochDecomposition& bd);

/// Spin flip: sigma_y^{(x)n} rho^T sigma_y^{(x)n}; all parties must be qubits.
DensityMatrix tilde(const DensityMatrix& rho);
/// Same map on a raw matrix over n qubits, without DensityMatrix validation.
ComplexTensor tilde_matrix(const ComplexTensor& m, int n_qubits);

const ComplexTensor& pauli(int j);  // 0 -> x, 1 -> y, 2 -> z

}  // namespace invlab
