#include "invlab/states.hpp"

#include <cmath>
#include <random>

#include "invlab/linalg.hpp"
#include "invlab/rng.hpp"

namespace invlab {

namespace {

std::vector<std::int64_t> to_shape(const std::vector<int>& dims) {
    if (dims.empty()) throw ValidationError("state needs at least one party");
    std::vector<std::int64_t> s;
    for (int d : dims) {
        if (d < 1) throw ValidationError("party dimension must be >= 1");
        s.push_back(d);
    }
    return s;
}

double norm_sq(const std::vector<cxd>& v) {
    double n = 0.0;
    for (const auto& x : v) n += std::norm(x);
    return n;
}

}  // namespace

std::int64_t PureState::total_dim() const {
    std::int64_t n = 1;
    for (int d : dims) n *= d;
    return n;
}

PureState make_pure(std::vector<cxd> amplitudes, std::vector<int> dims, bool unnormalized) {
    auto shape = to_shape(dims);
    std::int64_t n = 1;
    for (auto d : shape) n *= d;
    if (static_cast<std::int64_t>(amplitudes.size()) != n)
        throw ValidationError("amplitude count does not match product of dims");
    if (!unnormalized) {
        const double nn = norm_sq(amplitudes);
        if (std::abs(nn - 1.0) > kNormTol)
            throw ValidationError("state norm deviates from 1; pass the unnormalized flag "
                                  "to construct it anyway");
    }
    return PureState{std::move(dims), ComplexTensor(shape, std::move(amplitudes)),
                     unnormalized};
}

DensityMatrix density_from_pure(const PureState& psi) {
    const std::int64_t D = psi.total_dim();
    auto m = ComplexTensor::zeros({D, D});
    for (std::int64_t i = 0; i < D; ++i) {
        const cxd ai = psi.amplitudes.data[static_cast<std::size_t>(i)];
        if (ai == cxd(0.0, 0.0)) continue;
        for (std::int64_t j = 0; j < D; ++j)
            m.data[static_cast<std::size_t>(i * D + j)] =
                ai * std::conj(psi.amplitudes.data[static_cast<std::size_t>(j)]);
    }
    return make_density(std::move(m), psi.dims);
}

DensityMatrix make_density(ComplexTensor matrix, std::vector<int> dims) {
    std::int64_t D = 1;
    for (int d : dims) {
        if (d < 1) throw ValidationError("party dimension must be >= 1");
        D *= d;
    }
    if (!matrix.is_square_matrix() || matrix.shape[0] != D)
        throw ValidationError("density matrix dimension does not match dims");
    double herm = 0.0;
    for (std::int64_t i = 0; i < D; ++i)
        for (std::int64_t j = 0; j <= i; ++j)
            herm = std::max(herm,
                            std::abs(matrix.data[static_cast<std::size_t>(i * D + j)] -
                                     std::conj(matrix.data[static_cast<std::size_t>(j * D + i)])));
    if (herm > kHermTol) throw ValidationError("density matrix is not Hermitian");
    if (std::abs(trace(matrix) - cxd(1.0, 0.0)) > kHermTol)
        throw ValidationError("density matrix trace is not 1");
    if (min_eigenvalue(matrix) < kMinEigTol)
        throw ValidationError("density matrix has a negative eigenvalue beyond tolerance");
    return DensityMatrix{std::move(dims), std::move(matrix)};
}

PureState named_state(const std::string& name, double param) {
    const double s2 = 1.0 / std::sqrt(2.0);
    if (name == "product") {
        return make_pure({cxd(1, 0), 0, 0, 0}, {2, 2});
    }
    if (name == "bell") {
        return make_pure({s2, 0, 0, s2}, {2, 2});
    }
    if (name == "schmidt") {
        const double p = param;
        if (p < 0.5 || p > 1.0) throw ValidationError("schmidt parameter must be in [1/2, 1]");
        return make_pure({std::sqrt(p), 0, 0, std::sqrt(1.0 - p)}, {2, 2});
    }
    if (name == "ghz") {
        const int n = static_cast<int>(param);
        if (n < 2) throw ValidationError("ghz needs n >= 2 parties");
        std::vector<cxd> amps(static_cast<std::size_t>(1) << n, cxd(0, 0));
        amps.front() = s2;
        amps.back() = s2;
        return make_pure(std::move(amps), std::vector<int>(n, 2));
    }
    if (name == "w") {
        const int n = static_cast<int>(param);
        if (n < 2) throw ValidationError("w needs n >= 2 parties");
        std::vector<cxd> amps(static_cast<std::size_t>(1) << n, cxd(0, 0));
        const double a = 1.0 / std::sqrt(static_cast<double>(n));
        for (int k = 0; k < n; ++k) amps[static_cast<std::size_t>(1) << k] = a;
        return make_pure(std::move(amps), std::vector<int>(n, 2));
    }
    throw ValidationError("unknown named state: " + name);
}

PureState haar_random_pure(const std::vector<int>& dims, std::uint64_t seed) {
    auto shape = to_shape(dims);
    std::int64_t n = 1;
    for (auto d : shape) n *= d;
    auto eng = make_engine(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cxd> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
        const double re = g(eng);
        const double im = g(eng);
        x = cxd(re, im);
    }
    double nn = std::sqrt(norm_sq(v));
    for (auto& x : v) x /= nn;
    return PureState{dims, ComplexTensor(shape, std::move(v)), false};
}

ComplexTensor haar_random_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw ValidationError("unitary dimension must be >= 1");
    auto eng = make_engine(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = g(eng);
            const double im = g(eng);
            a(i, j) = cxd(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Mezzadri phase fix: rescale columns by R_jj/|R_jj| so the law is exactly Haar.
    for (int j = 0; j < d; ++j) {
        cxd rjj = r(j, j);
        q.col(j) *= (rjj == cxd(0.0, 0.0)) ? cxd(1.0, 0.0) : rjj / std::abs(rjj);
    }
    return from_eigen(q);
}

ComplexTensor random_sl2(std::uint64_t seed) {
    auto eng = make_engine(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        std::array<cxd, 4> m;
        for (auto& x : m) {
            const double re = g(eng);
            const double im = g(eng);
            x = cxd(re, im);
        }
        const cxd det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det) < 1e-6) continue;  // reject near-singular draws
        const cxd scale = cxd(1.0, 0.0) / std::sqrt(det);
        return ComplexTensor({2, 2}, {m[0] * scale, m[1] * scale, m[2] * scale, m[3] * scale});
    }
}

DensityMatrix random_mixed(const std::vector<int>& dims, std::uint64_t seed) {
    std::vector<int> doubled = dims;
    doubled.insert(doubled.end(), dims.begin(), dims.end());
    auto psi = haar_random_pure(doubled, seed);
    auto rho_full = density_from_pure(psi);
    std::vector<int> keep;
    for (std::size_t i = 0; i < dims.size(); ++i) keep.push_back(static_cast<int>(i));
    auto red = partial_trace(rho_full.matrix, doubled, keep);
    return make_density(std::move(red), dims);
}

const ComplexTensor& pauli(int j) {
    static const ComplexTensor sx({2, 2}, {0, 1, 1, 0});
    static const ComplexTensor sy({2, 2}, {0, cxd(0, -1), cxd(0, 1), 0});
    static const ComplexTensor sz({2, 2}, {1, 0, 0, -1});
    switch (j) {
        case 0: return sx;
        case 1: return sy;
        case 2: return sz;
        default: throw ValidationError("pauli index must be 0..2");
    }
}

BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
    if (rho.dims != std::vector<int>{2, 2})
        throw ValidationError("bloch_decompose needs a two-qubit state");
    BlochDecomposition bd;
    const auto& m = rho.matrix;
    auto expval = [&](const ComplexTensor& op) {
        return trace(matmul(m, op)).real();
    };
    const auto id = ComplexTensor::identity(2);
    for (int j = 0; j < 3; ++j) {
        bd.a[j] = expval(kron({pauli(j), id}));
        bd.b[j] = expval(kron({id, pauli(j)}));
        for (int k = 0; k < 3; ++k) bd.R[j][k] = expval(kron({pauli(j), pauli(k)}));
    }
    return bd;
}

DensityMatrix bloch_reconstruct(const BlochDecomposition& bd) {
    const auto id = ComplexTensor::identity(2);
    auto acc = kron({id, id});
    for (int j = 0; j < 3; ++j) {
        acc = axpy(acc, bd.a[j], kron({pauli(j), id}));
        acc = axpy(acc, bd.b[j], kron({id, pauli(j)}));
        for (int k = 0; k < 3; ++k) acc = axpy(acc, bd.R[j][k], kron({pauli(j), pauli(k)}));
    }
    for (auto& x : acc.data) x *= 0.25;
    return make_density(std::move(acc), {2, 2});
}

ComplexTensor tilde_matrix(const ComplexTensor& m, int n_qubits) {
    const std::int64_t D = std::int64_t(1) << n_qubits;
    if (!m.is_square_matrix() || m.shape[0] != D)
        throw ValidationError("tilde_matrix: dimension mismatch");
    std::vector<ComplexTensor> ys(static_cast<std::size_t>(n_qubits), pauli(1));
    const auto y = kron(ys);
    auto mt = ComplexTensor::zeros({D, D});
    for (std::int64_t i = 0; i < D; ++i)
        for (std::int64_t j = 0; j < D; ++j)
            mt.data[static_cast<std::size_t>(i * D + j)] =
                m.data[static_cast<std::size_t>(j * D + i)];
    return matmul(matmul(y, mt), y);
}

DensityMatrix tilde(const DensityMatrix& rho) {
    for (int d : rho.dims)
        if (d != 2) throw ValidationError("tilde is defined for qubit parties only");
    return make_density(tilde_matrix(rho.matrix, rho.parties()), rho.dims);
}

}  // namespace invlab
