#include "invlab/estimation.hpp"

#include <cmath>
#include <limits>

#include "invlab/parallel.hpp"
#include "invlab/rng.hpp"

namespace invlab {

namespace {

double pow2d(int e) { return std::ldexp(1.0, e); }

bool near(double x, double v, double tol = 1e-9) { return std::abs(x - v) <= tol; }

// Bloch data of a two-qubit pure state straight from its amplitudes
// (hot path of the Haar loops; bloch_decompose is the checked route).
struct PureBloch {
    std::array<double, 3> a{}, b{};
    std::array<std::array<double, 3>, 3> R{};
    double modK_sq = 0.0;  // |2 det alpha|^2
    double modJ_sq = 0.0;  // J = Tr(rho_B^2), real for states
};

PureBloch pure_bloch(const PureState& psi) {
    const auto& t = psi.amplitudes.data;  // alpha[i*2+j]
    auto a = [&](int i, int j) { return t[static_cast<std::size_t>(2 * i + j)]; };
    PureBloch out;
    // rho_A[i][i'] = sum_j alpha[i,j] conj(alpha[i',j]); rho_B analogous.
    cxd rA[2][2] = {}, rB[2][2] = {};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j) {
                rA[i][k] += a(i, j) * std::conj(a(k, j));
                rB[i][k] += a(j, i) * std::conj(a(j, k));
            }
    out.a = {2.0 * rA[0][1].real(), -2.0 * rA[0][1].imag(), (rA[0][0] - rA[1][1]).real()};
    out.b = {2.0 * rB[0][1].real(), -2.0 * rB[0][1].imag(), (rB[0][0] - rB[1][1]).real()};
    const ComplexTensor* sg[3] = {&pauli(0), &pauli(1), &pauli(2)};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            cxd acc(0, 0);
            for (int i = 0; i < 2; ++i)
                for (int m = 0; m < 2; ++m)
                    for (int ii = 0; ii < 2; ++ii)
                        for (int mm = 0; mm < 2; ++mm)
                            acc += a(i, m) * std::conj(a(ii, mm)) *
                                   sg[j]->data[static_cast<std::size_t>(2 * ii + i)] *
                                   sg[k]->data[static_cast<std::size_t>(2 * mm + m)];
            out.R[j][k] = acc.real();
        }
    const cxd det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    out.modK_sq = std::norm(2.0 * det);
    const double purity = std::norm(rB[0][0]) + std::norm(rB[1][1]) + 2.0 * std::norm(rB[0][1]);
    out.modJ_sq = purity * purity;
    return out;
}

}  // namespace

std::pair<double, double> estimate_F(std::int64_t successes, std::int64_t shots) {
    if (shots < 1) throw ValidationError("estimate_F needs shots >= 1");
    if (successes < 0 || successes > shots)
        throw ValidationError("successes must lie in [0, shots]");
    const double f = 2.0 * static_cast<double>(successes) / static_cast<double>(shots) - 1.0;
    return {f, (1.0 - f * f) / static_cast<double>(shots)};
}

double copies_needed_lu(int r, double modJ_sq, double epsilon, bool component_known) {
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
    if (r < 1) throw ValidationError("degree r must be >= 1");
    const double bracket = component_known ? 1.0 - modJ_sq : 2.0 - modJ_sq;
    return static_cast<double>(r) / epsilon * bracket;
}

double copies_needed_slocc(int n, int r, double modK_sq, double epsilon) {
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
    if (modK_sq < 0.0) throw ValidationError("|K|^2 must be non-negative");
    const double big = pow2d(3 * n * r / 2) + 1.0;
    const double shifted = modK_sq + pow2d(n * r);
    return static_cast<double>(r) / epsilon * (big * big - shifted * shifted);
}

double tomography_copies_lu(const std::array<double, 3>& b, double epsilon) {
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
    double s = 0.0;
    for (double bj : b) s += bj * bj * (1.0 - bj * bj);
    return 3.0 / epsilon * s;
}

double tomography_copies_slocc(const BlochDecomposition& bd, double epsilon,
                               SloccVariant variant) {
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double aj = bd.a[j], bj = bd.b[j];
        const double tj = variant == SloccVariant::Quadratic ? bj * bj : bj;
        s += aj * aj * (1.0 - aj * aj) + tj * (1.0 - bj * bj);
        for (int k = 0; k < 3; ++k) {
            const double r = bd.R[j][k];
            s += r * r * (1.0 - r * r);
        }
    }
    return 15.0 / (4.0 * epsilon) * s;
}

EstimationReport simulate_tomography_lu(const DensityMatrix& rho, std::int64_t N,
                                        std::uint64_t seed) {
    if (rho.dims != std::vector<int>{2, 2})
        throw ValidationError("simulate_tomography_lu needs a two-qubit state");
    if (N < 3 || N % 3 != 0)
        throw ValidationError("N must be a positive multiple of 3 (N_j = N/3 per setting)");
    const auto bd = bloch_decompose(rho);
    const std::int64_t nj = N / 3;

    EstimationReport rep;
    rep.protocol = "tomography";
    rep.seed = seed;
    rep.shots = N;
    rep.copies = static_cast<double>(N);
    rep.has_sampling = true;

    double jhat = 1.0, var_hat = 0.0, var_true = 0.0;
    bool degenerate = true;
    for (int j = 0; j < 3; ++j) {
        const std::int64_t s =
            sample_shots(bd.b[j], nj, derive_seed(seed, static_cast<std::uint64_t>(j)));
        const auto [bhat, bvar] = estimate_F(s, nj);
        (void)bvar;
        jhat += bhat * bhat;
        var_hat += bhat * bhat * (1.0 - bhat * bhat) / static_cast<double>(nj);
        const double bj = bd.b[j];
        var_true += bj * bj * (1.0 - bj * bj) / static_cast<double>(nj);
        if (std::abs(bj) > 1e-12) degenerate = false;
    }
    rep.estimate = jhat / 2.0;
    rep.predicted_variance = var_true;
    rep.empirical_variance = var_hat;
    rep.exact_expectation =
        0.5 * (1.0 + bd.b[0] * bd.b[0] + bd.b[1] * bd.b[1] + bd.b[2] * bd.b[2]);
    if (degenerate) rep.flags.push_back("degenerate_endpoint");
    return rep;
}

EstimationReport run_network_protocol(const DensityMatrix& rho, const NetworkConfig& cfg) {
    EstimationReport rep;
    rep.protocol = "network";
    rep.seed = cfg.seed;
    rep.shots = cfg.shots;
    rep.copies = static_cast<double>(cfg.spec.r) * static_cast<double>(cfg.shots);

    const double F = network_expectation(rho, cfg);
    rep.exact_expectation = F;

    const bool spa = cfg.spec.mode == Mode::SLOCC && cfg.use_spa;
    const int n = rho.parties();
    const double scale = spa ? pow2d(3 * n * cfg.spec.r / 2) + 1.0 : 1.0;

    if (cfg.shots == 0) {
        rep.estimate = spa ? recover_modsq(F, n, cfg.spec.r).value : F;
        rep.has_sampling = false;
        if (cfg.spec.mode == Mode::LU && near(std::abs(F), 1.0, 1e-12))
            rep.flags.push_back("degenerate_endpoint");
        return rep;
    }

    if (cfg.spec.mode == Mode::SLOCC && !cfg.use_spa && std::abs(F) > 1.0 + 1e-12)
        throw GuardError("ideal-Lambda expectation exceeds measurable range; "
                         "sampling is only physical through the SPA");

    const std::int64_t succ = sample_shots(F, cfg.shots, cfg.seed);
    const auto [fhat, fvar] = estimate_F(succ, cfg.shots);
    rep.has_sampling = true;
    rep.empirical_variance = scale * scale * fvar;
    rep.predicted_variance =
        scale * scale * (1.0 - F * F) / static_cast<double>(cfg.shots);
    if (spa) {
        const auto rec = recover_modsq(fhat, n, cfg.spec.r);
        rep.estimate = rec.value;
        if (rec.below_zero) rep.flags.push_back("below_zero");
    } else {
        rep.estimate = fhat;
    }
    if (near(std::abs(F), 1.0, 1e-12)) rep.flags.push_back("degenerate_endpoint");
    return rep;
}

EstimationReport run_network_protocol(const PureState& psi, const NetworkConfig& cfg) {
    if (psi.unnormalized)
        throw ValidationError("estimation refuses states built with the unnormalized flag");
    return run_network_protocol(density_from_pure(psi), cfg);
}

HaarComparison haar_average_ratio(Comparison kind, std::uint64_t samples, double epsilon,
                                  std::uint64_t seed, SloccVariant variant) {
    if (samples < 1) throw ValidationError("haar_average_ratio needs samples >= 1");
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");

    std::vector<double> net(samples), tom(samples);
    parallel_for(samples, [&](std::uint64_t i) {
        const auto psi = haar_random_pure({2, 2}, derive_seed(seed, i));
        const auto pb = pure_bloch(psi);
        if (kind == Comparison::LU) {
            tom[i] = tomography_copies_lu(pb.b, epsilon);
            net[i] = copies_needed_lu(2, pb.modJ_sq, epsilon, true);
        } else {
            BlochDecomposition bd{pb.a, pb.b, pb.R};
            tom[i] = tomography_copies_slocc(bd, epsilon, variant);
            net[i] = copies_needed_slocc(2, 2, pb.modK_sq, epsilon);
        }
    });

    const double s = static_cast<double>(samples);
    const double mn = chunked_sum_d(samples, [&](std::uint64_t i) { return net[i]; }) / s;
    const double mt = chunked_sum_d(samples, [&](std::uint64_t i) { return tom[i]; }) / s;

    HaarComparison out;
    if (kind == Comparison::SLOCC) {
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t i = 0; i < samples; ++i)
            if (tom[i] > 0.0) best = std::min(best, net[i] / tom[i]);
        out.min_network_over_tomography = best;
    }
    out.kind = kind;
    out.variant = variant;
    out.samples = samples;
    out.budget = SampleBudget{epsilon, mn, mt};
    const double num = kind == Comparison::LU ? mt : mn;
    const double den = kind == Comparison::LU ? mn : mt;
    out.ratio = num / den;

    if (samples < 2) {
        out.interval_defined = false;
        out.std_error = 0.0;
        out.flags.push_back("interval_undefined");
        return out;
    }

    // Delta-method standard error of a ratio of sample means.
    double vn = 0.0, vt = 0.0, cov = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double dn = net[i] - mn, dt = tom[i] - mt;
        vn += dn * dn;
        vt += dt * dt;
        cov += dn * dt;
    }
    vn /= s - 1.0;
    vt /= s - 1.0;
    cov /= s - 1.0;
    const double vnum = kind == Comparison::LU ? vt : vn;
    const double vden = kind == Comparison::LU ? vn : vt;
    const double r = out.ratio;
    const double var_ratio =
        (vnum / (num * num) + vden / (den * den) - 2.0 * cov / (num * den)) * r * r / s;
    out.std_error = var_ratio > 0.0 ? std::sqrt(var_ratio) : 0.0;
    return out;
}

double lu_crossover(double b3_lo, double b3_hi) {
    // Budgets on the Schmidt family, epsilon cancels in the difference:
    // g(b3) = 3 u (1-u) - 2 (1 - J^2), u = b3^2, J = (1+u)/2.
    auto g = [](double b3) {
        const double u = b3 * b3;
        const double J = 0.5 * (1.0 + u);
        return 3.0 * u * (1.0 - u) - 2.0 * (1.0 - J * J);
    };
    double lo = b3_lo, hi = b3_hi;
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (glo * ghi > 0.0)
        throw ValidationError("lu_crossover: no sign change on the given range");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if (glo * gm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace invlab
