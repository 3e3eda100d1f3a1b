#include "invlab/network.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include "invlab/rng.hpp"

namespace invlab {

namespace {

std::int64_t joint_dimension(const std::vector<int>& dims, int r) {
    std::int64_t d = 1;
    for (int x : dims) d *= x;
    std::int64_t out = 1;
    for (int c = 0; c < r; ++c) {
        if (out > (std::int64_t(1) << 40) / d) throw GuardError("joint dimension overflow");
        out *= d;
    }
    return out;
}

// Axis dims of the joint space in copy-major party-minor order.
std::vector<std::int64_t> joint_axes(const std::vector<int>& dims, int r) {
    std::vector<std::int64_t> a;
    for (int c = 0; c < r; ++c)
        for (int d : dims) a.push_back(d);
    return a;
}

bool advance(std::vector<std::int64_t>& idx, const std::vector<std::int64_t>& dims) {
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < dims[i]) return true;
        idx[i] = 0;
    }
    return false;
}

// Dense permutation matrix sending basis state x to y with
// y[c][p] = x[copy_of(c,p)][p].
ComplexTensor copy_slot_permutation(const std::vector<int>& dims, int r,
                                    const std::vector<std::vector<int>>& source_copy) {
    const auto axes = joint_axes(dims, r);
    const std::int64_t D = joint_dimension(dims, r);
    if (D > kDenseCap) throw GuardError("dense operator exceeds the materialization cap");
    const int n = static_cast<int>(dims.size());
    auto out = ComplexTensor::zeros({D, D});
    std::vector<std::int64_t> x(axes.size(), 0);
    std::int64_t xi = 0;
    do {
        std::int64_t yi = 0;
        for (int c = 0; c < r; ++c)
            for (int p = 0; p < n; ++p)
                yi = yi * dims[p] + x[static_cast<std::size_t>(source_copy[c][p] * n + p)];
        out.data[static_cast<std::size_t>(yi * D + xi)] = 1.0;
        ++xi;
    } while (advance(x, axes));
    return out;
}

ComplexTensor kron_power(const ComplexTensor& m, int r) {
    ComplexTensor acc = m;
    for (int i = 1; i < r; ++i) acc = kron({acc, m});
    return acc;
}

double pow2d(int e) { return std::ldexp(1.0, e); }

// Exact structured expectation (no dense operators).
double structured_expectation(const DensityMatrix& rho, const NetworkConfig& cfg) {
    if (cfg.spec.mode == Mode::LU) {
        const cxd J = eval_lu_mixed(rho, cfg.spec);
        return cfg.component == Component::Real ? J.real() : (cxd(0, 1) * J).real();
    }
    const double k2 = eval_slocc_modsq_mixed(rho, cfg.spec);
    if (!cfg.use_spa) return k2;
    const int n = rho.parties();
    const int r = cfg.spec.r;
    return (k2 + pow2d(n * r)) / (pow2d(3 * n * r / 2) + 1.0);
}

}  // namespace

std::int64_t dimension_cap() {
    if (const char* env = std::getenv("INVLAB_DIM_CAP")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::int64_t>(v);
        throw ValidationError("INVLAB_DIM_CAP must be a positive integer");
    }
    return std::int64_t(1) << 16;
}

ComplexTensor permutation_operator(const PermutationTuple& spec, const std::vector<int>& dims) {
    validate_tuple(spec);
    if (spec.parties() != static_cast<int>(dims.size()))
        throw ValidationError("permutation_operator: party count mismatch");
    const int n = spec.parties();
    std::vector<std::vector<int>> source(static_cast<std::size_t>(spec.r),
                                         std::vector<int>(static_cast<std::size_t>(n)));
    for (int c = 0; c < spec.r; ++c)
        for (int p = 0; p < n; ++p) source[c][p] = spec.perms[p][c];
    return copy_slot_permutation(dims, spec.r, source);
}

ComplexTensor pairwise_swap(int r, const std::vector<int>& dims) {
    if (r < 2 || r % 2 != 0) throw ValidationError("pairwise_swap needs even r");
    const int n = static_cast<int>(dims.size());
    std::vector<std::vector<int>> source(static_cast<std::size_t>(r),
                                         std::vector<int>(static_cast<std::size_t>(n)));
    for (int c = 0; c < r; ++c) {
        const int partner = (c % 2 == 0) ? c + 1 : c - 1;
        for (int p = 0; p < n; ++p) source[c][p] = partner;
    }
    return copy_slot_permutation(dims, r, source);
}

SpaParameters spa_coefficients(int n, int r) {
    if (n < 1) throw ValidationError("spa_coefficients needs n >= 1");
    if (r < 2 || r % 2 != 0) throw ValidationError("spa_coefficients needs even r >= 2");
    const double big = pow2d(3 * n * r / 2);
    return SpaParameters{n, r, big / (big + 1.0), 1.0 / (big + 1.0)};
}

ComplexTensor lambda_map(const ComplexTensor& joint, int n, int r) {
    const std::int64_t D = std::int64_t(1) << (n * r);
    if (!joint.is_square_matrix() || joint.shape[0] != D)
        throw ValidationError("lambda_map: dimension mismatch");
    if (D > kDenseCap) throw GuardError("lambda_map exceeds the materialization cap");

    // Partial transpose over the even-numbered copies (qubit blocks 2,4,...).
    std::int64_t mask = 0;
    for (int c = 1; c < r; c += 2)
        for (int p = 0; p < n; ++p) mask |= std::int64_t(1) << (n * r - 1 - (c * n + p));
    auto pt = ComplexTensor::zeros({D, D});
    for (std::int64_t i = 0; i < D; ++i)
        for (std::int64_t j = 0; j < D; ++j) {
            const std::int64_t ii = (i & ~mask) | (j & mask);
            const std::int64_t jj = (j & ~mask) | (i & mask);
            pt.data[static_cast<std::size_t>(ii * D + jj)] =
                joint.data[static_cast<std::size_t>(i * D + j)];
        }

    // Conjugate by sigma_y on every qubit of the even copies.
    std::vector<ComplexTensor> facs;
    for (int c = 0; c < r; ++c)
        for (int p = 0; p < n; ++p)
            facs.push_back(c % 2 == 1 ? pauli(1) : ComplexTensor::identity(2));
    const auto y = kron(facs);
    return matmul(matmul(y, pt), y);
}

ComplexTensor spa_map(const ComplexTensor& joint, const SpaParameters& params) {
    const std::int64_t D = std::int64_t(1) << (params.n * params.r);
    if (!joint.is_square_matrix() || joint.shape[0] != D)
        throw ValidationError("spa_map: dimension mismatch");
    auto lam = lambda_map(joint, params.n, params.r);
    const cxd tr = trace(joint);
    auto out = ComplexTensor::zeros({D, D});
    for (std::int64_t i = 0; i < D; ++i)
        out.data[static_cast<std::size_t>(i * D + i)] =
            params.identity_weight * tr / static_cast<double>(D);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] += params.map_weight * lam.data[i];
    return out;
}

DensityMatrix apply_spa(const DensityMatrix& joint, const SpaParameters& params) {
    for (int d : joint.dims)
        if (d != 2) throw ValidationError("apply_spa needs qubit parties");
    if (joint.parties() != params.n * params.r)
        throw ValidationError("apply_spa: copy/party layout does not match SpaParameters");
    return make_density(spa_map(joint.matrix, params), joint.dims);
}

ComplexTensor spa_choi(const SpaParameters& params) {
    const std::int64_t D = std::int64_t(1) << (params.n * params.r);
    if (D * D > kDenseCap * kDenseCap)
        throw GuardError("spa_choi exceeds the materialization cap");
    auto choi = ComplexTensor::zeros({D * D, D * D});
    for (std::int64_t i = 0; i < D; ++i)
        for (std::int64_t j = 0; j < D; ++j) {
            auto e = ComplexTensor::zeros({D, D});
            e.data[static_cast<std::size_t>(i * D + j)] = 1.0;
            const auto out = spa_map(e, params);
            for (std::int64_t k = 0; k < D; ++k)
                for (std::int64_t l = 0; l < D; ++l)
                    choi.data[static_cast<std::size_t>((i * D + k) * D * D + (j * D + l))] =
                        out.data[static_cast<std::size_t>(k * D + l)];
        }
    return choi;
}

double network_expectation_circuit(const DensityMatrix& rho, const NetworkConfig& cfg) {
    const int r = cfg.spec.r;
    const std::int64_t D = joint_dimension(rho.dims, r);
    if (D > kCircuitCap) throw GuardError("circuit path exceeds its dimension cap");

    ComplexTensor rho_in = kron_power(rho.matrix, r);
    ComplexTensor u;
    if (cfg.spec.mode == Mode::LU) {
        u = permutation_operator(cfg.spec, rho.dims);
        if (cfg.component == Component::Imaginary)
            for (auto& x : u.data) x *= cxd(0, 1);
    } else {
        const int n = rho.parties();
        const auto p = permutation_operator(cfg.spec, rho.dims);
        auto x = matmul(matmul(dagger(p), rho_in), p);
        rho_in = cfg.use_spa ? spa_map(x, spa_coefficients(n, r)) : lambda_map(x, n, r);
        u = pairwise_swap(r, rho.dims);
    }

    // |0><0| (x) rho_in, then H, controlled-U, H; <Z> on the ancilla.
    const std::int64_t E = 2 * D;
    auto full = ComplexTensor::zeros({E, E});
    for (std::int64_t i = 0; i < D; ++i)
        for (std::int64_t j = 0; j < D; ++j)
            full.data[static_cast<std::size_t>(i * E + j)] =
                rho_in.data[static_cast<std::size_t>(i * D + j)];

    auto h = ComplexTensor::zeros({E, E});
    const double s2 = 1.0 / std::sqrt(2.0);
    for (std::int64_t i = 0; i < D; ++i) {
        h.data[static_cast<std::size_t>(i * E + i)] = s2;
        h.data[static_cast<std::size_t>(i * E + D + i)] = s2;
        h.data[static_cast<std::size_t>((D + i) * E + i)] = s2;
        h.data[static_cast<std::size_t>((D + i) * E + D + i)] = -s2;
    }
    auto cu = ComplexTensor::zeros({E, E});
    for (std::int64_t i = 0; i < D; ++i) cu.data[static_cast<std::size_t>(i * E + i)] = 1.0;
    for (std::int64_t i = 0; i < D; ++i)
        for (std::int64_t j = 0; j < D; ++j)
            cu.data[static_cast<std::size_t>((D + i) * E + D + j)] =
                u.data[static_cast<std::size_t>(i * D + j)];

    const auto gate = matmul(h, matmul(cu, h));
    const auto fin = matmul(matmul(gate, full), dagger(gate));
    cxd z(0.0, 0.0);
    for (std::int64_t i = 0; i < D; ++i) {
        z += fin.data[static_cast<std::size_t>(i * E + i)];
        z -= fin.data[static_cast<std::size_t>((D + i) * E + D + i)];
    }
    return z.real();
}

double network_expectation(const DensityMatrix& rho, const NetworkConfig& cfg) {
    validate_tuple(cfg.spec);
    if (cfg.spec.parties() != rho.parties())
        throw ValidationError("network: spec party count does not match the state");
    if (cfg.component == Component::Imaginary && cfg.spec.mode != Mode::LU)
        throw ValidationError("imaginary component is only defined in LU mode");
    if (cfg.use_spa && cfg.spec.mode != Mode::SLOCC)
        throw ValidationError("the SPA applies to SLOCC networks only");
    const std::int64_t D = joint_dimension(rho.dims, cfg.spec.r);
    if (D > dimension_cap())
        throw GuardError("joint dimension " + std::to_string(D) +
                         " exceeds the cap (set INVLAB_DIM_CAP to override)");

    const double val = structured_expectation(rho, cfg);
    if (D <= kAutoCircuitCap) {
        const double circ = network_expectation_circuit(rho, cfg);
        if (std::abs(circ - val) > 1e-10)
            throw GuardError("structured and circuit paths disagree: " + std::to_string(val) +
                             " vs " + std::to_string(circ));
    }
    return val;
}

double network_expectation(const PureState& psi, const NetworkConfig& cfg) {
    if (psi.unnormalized)
        throw ValidationError("estimation refuses states built with the unnormalized flag");
    return network_expectation(density_from_pure(psi), cfg);
}

std::int64_t sample_shots(double F, std::int64_t shots, std::uint64_t seed) {
    if (shots < 0) throw ValidationError("shot count must be >= 0");
    if (std::abs(F) > 1.0 + 1e-12)
        throw GuardError("expectation " + std::to_string(F) +
                         " is materially outside [-1, 1]; upstream numerical failure");
    const double f = std::min(1.0, std::max(-1.0, F));
    if (shots == 0) return 0;
    auto eng = make_engine(seed);
    std::binomial_distribution<std::int64_t> bin(shots, (1.0 + f) / 2.0);
    return bin(eng);
}

RecoveredModsq recover_modsq(double z_hat, int n, int r) {
    if (n < 1 || r < 1) throw ValidationError("recover_modsq needs n, r >= 1");
    const double v = (pow2d(3 * n * r / 2) + 1.0) * z_hat - pow2d(n * r);
    return RecoveredModsq{v, v < 0.0};
}

}  // namespace invlab
