// Acceptance suite: one binary, one line per criterion. Run with no arguments
// for the full suite or with criterion numbers to run a subset. Exit code is
// the number of failed criteria.
//
// Criteria 6 (m = 2 on mixed states) and 9 (Haar SLOCC ratio band) encode
// target values that the measured family provably does not attain; they are
// asserted as stated and are expected to fail. See the notes in
// invariants.hpp (moment catalog) and the literal/quadratic variant handling
// in estimation.hpp.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "invlab/estimation.hpp"
#include "invlab/linalg.hpp"
#include "invlab/rng.hpp"
#include "oracles.hpp"

using namespace invlab;

namespace {

struct Criterion {
    int id;
    const char* title;
    std::function<bool(std::string&)> run;
};

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return std::string(buf);
}

// 1. Quartic LU invariant on the Schmidt family, both evaluation routes.
bool crit_quartic(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto quartic = named_invariant("two_qubit_quartic");
    bool ok = true;
    for (double p : {0.5, 0.75, 1.0}) {
        const double expected = 2.0 * (p * p - p) + 1.0;
        const auto psi = named_state("schmidt", p);
        const cxd direct = eval_lu_pure(psi, quartic);
        NetworkConfig cfg;
        cfg.spec = quartic;
        const double net = network_expectation(psi, cfg);
        ok = ok && within(direct.real(), expected, 1e-12) &&
             std::abs(direct.imag()) <= 1e-12 && within(net, expected, 1e-12);
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    detail = fmt("J(schmidt) = {0.5, 0.625, 1.0} both routes, %.0f ms", ms);
    return ok && ms < 1000.0;
}

// 2. Network-contraction oracle equivalence over Haar states and the catalog.
bool crit_oracle_equivalence(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t cap = dimension_cap();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const bool three = trial % 2 == 1;
        const std::vector<int> dims(three ? 3 : 2, 2);
        const auto psi = haar_random_pure(dims, derive_seed(20250, trial));
        const auto rho = density_from_pure(psi);
        std::vector<std::string> names =
            three ? std::vector<std::string>{"norm(3)", "three_tangle"}
                  : std::vector<std::string>{"norm", "two_qubit_quartic", "slocc_quadratic",
                                             "moment(1)", "moment(2)", "moment(3)",
                                             "moment(4)"};
        for (const auto& name : names) {
            const auto spec = named_invariant(name);
            std::int64_t joint = 1;
            for (int c = 0; c < spec.r; ++c) joint *= (three ? 8 : 4);
            if (joint > cap) continue;
            NetworkConfig cfg;
            cfg.spec = spec;
            if (spec.mode == Mode::LU) {
                const cxd j = eval_lu_mixed(rho, spec);
                worst = std::max(worst,
                                 std::abs(network_expectation(rho, cfg) - j.real()));
                cfg.component = Component::Imaginary;
                worst = std::max(worst, std::abs(network_expectation(rho, cfg) -
                                                 (cxd(0, 1) * j).real()));
            } else {
                const double k2 = eval_slocc_modsq_mixed(rho, spec);
                worst = std::max(worst, std::abs(network_expectation(rho, cfg) - k2));
                cfg.use_spa = true;
                const int nr = spec.parties() * spec.r;
                const double z = (k2 + std::ldexp(1.0, nr)) /
                                 (std::ldexp(1.0, 3 * nr / 2) + 1.0);
                worst = std::max(worst, std::abs(network_expectation(rho, cfg) - z));
            }
        }
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    detail = fmt("100 Haar states, worst |net - contraction| = %.2e, %.0f ms", worst, ms);
    return worst <= 1e-9 && ms < 60000.0;
}

// 3. SPA arithmetic.
bool crit_spa_arithmetic(std::string& detail) {
    const auto p = spa_coefficients(2, 2);
    const auto rec = recover_modsq(17.0 / 65.0, 2, 2);
    detail = fmt("weights (%.17g, %.17g), recover(17/65) = %.17g", p.identity_weight,
                 p.map_weight, rec.value);
    return p.identity_weight == 64.0 / 65.0 && p.map_weight == 1.0 / 65.0 &&
           within(rec.value, 1.0, 1e-12);
}

// 4. SPA channel complete positivity via the Choi matrix.
bool crit_spa_choi(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (auto [n, r] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}}) {
        const double mine = min_eigenvalue(spa_choi(spa_coefficients(n, r)));
        worst = std::min(worst, mine);
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    detail = fmt("min Choi eigenvalue %.2e, %.0f ms", worst, ms);
    return worst >= -1e-10 && ms < 60000.0;
}

// 5. Invariance suites.
bool crit_invariance(std::string& detail) {
    const auto quartic = named_invariant("two_qubit_quartic");
    const auto quad = named_invariant("slocc_quadratic");
    const auto tangle = named_invariant("three_tangle");
    const auto psi2 = haar_random_pure({2, 2}, 555);
    const auto psi3 = haar_random_pure({2, 2, 2}, 556);

    auto apply2 = [](const PureState& psi, const ComplexTensor& m1, const ComplexTensor& m2,
                     bool renorm) {
        auto amp = contract(m1, psi.amplitudes, {{1, 0}});          // axes [a', b]
        amp = permute_axes(contract(m2, amp, {{1, 1}}), {1, 0});    // [a', b']
        double n = 0.0;
        for (const auto& x : amp.data) n += std::norm(x);
        if (renorm)
            for (auto& x : amp.data) x /= std::sqrt(n);
        return PureState{psi.dims, std::move(amp), !renorm};
    };
    auto apply3 = [](const PureState& psi, const ComplexTensor& m1, const ComplexTensor& m2,
                     const ComplexTensor& m3) {
        auto amp = contract(m1, psi.amplitudes, {{1, 0}});                  // [a',b,c]
        amp = permute_axes(contract(m2, amp, {{1, 1}}), {1, 0, 2});         // [a',b',c]
        amp = permute_axes(contract(m3, amp, {{1, 2}}), {1, 2, 0});         // [a',b',c']
        return PureState{psi.dims, std::move(amp), true};
    };

    // a fixed degree-3 tuple alongside the catalog quartic
    const PermutationTuple r3{3, {{1, 2, 0}, {2, 0, 1}}, Mode::LU, ""};
    double lu_worst = 0.0, sl_worst = 0.0, ph_worst = 0.0;
    const cxd j0 = eval_lu_pure(psi2, quartic);
    const cxd j3 = eval_lu_pure(psi2, r3);
    const cxd k0 = eval_slocc_pure(psi2, quad);
    const cxd t0 = eval_slocc_pure(psi3, tangle);
    const auto mixed = random_mixed({2, 2}, 557);
    const cxd jm0 = eval_lu_mixed(mixed, quartic);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto u1 = haar_random_unitary(2, derive_seed(600, 2 * i));
        const auto u2 = haar_random_unitary(2, derive_seed(600, 2 * i + 1));
        lu_worst = std::max(lu_worst,
                            std::abs(eval_lu_pure(apply2(psi2, u1, u2, true), quartic) - j0));
        lu_worst = std::max(lu_worst,
                            std::abs(eval_lu_pure(apply2(psi2, u1, u2, true), r3) - j3));
        const auto u = kron({u1, u2});
        const DensityMatrix rotated{{2, 2}, matmul(matmul(u, mixed.matrix), dagger(u))};
        lu_worst = std::max(lu_worst, std::abs(eval_lu_mixed(rotated, quartic) - jm0));
        const auto m1 = random_sl2(derive_seed(601, 2 * i));
        const auto m2 = random_sl2(derive_seed(601, 2 * i + 1));
        sl_worst = std::max(
            sl_worst, std::abs(eval_slocc_pure(apply2(psi2, m1, m2, false), quad) - k0));
        const auto n1 = random_sl2(derive_seed(602, 3 * i));
        const auto n2 = random_sl2(derive_seed(602, 3 * i + 1));
        const auto n3 = random_sl2(derive_seed(602, 3 * i + 2));
        sl_worst = std::max(
            sl_worst, std::abs(eval_slocc_pure(apply3(psi3, n1, n2, n3), tangle) - t0));
    }
    for (double theta : {0.1, 0.7, 1.3, 2.9}) {
        PureState ph = psi2;
        for (auto& x : ph.amplitudes.data) x *= std::exp(cxd(0, theta));
        ph_worst = std::max(ph_worst,
                            std::abs(std::norm(eval_slocc_pure(ph, quad)) - std::norm(k0)));
    }
    detail = fmt("LU drift (pure+mixed) %.2e (<=1e-9), SL2 drift %.2e (<=1e-8), "
                 "phase %.2e (<=1e-12)",
                 lu_worst, sl_worst, ph_worst);
    return lu_worst <= 1e-9 && sl_worst <= 1e-8 && ph_worst <= 1e-12;
}

// 6. Moment identities on mixed states (m = 2 is expected to fail; no
// permutation tuple reaches the second mixed moment).
bool crit_moment_identity(std::string& detail) {
    double worst1 = 0.0, worst2 = 0.0;
    for (int s = 0; s < 100; ++s) {
        const auto rho = random_mixed({2, 2}, derive_seed(700, s));
        const auto rt = matmul(rho.matrix, tilde(rho).matrix);
        const double m1 = trace(rt).real();
        const double m2 = trace(matmul(rt, rt)).real();
        worst1 = std::max(worst1,
                          std::abs(eval_slocc_modsq_mixed(rho, named_invariant("moment(1)")) -
                                   m1));
        worst2 = std::max(worst2,
                          std::abs(eval_slocc_modsq_mixed(rho, named_invariant("moment(2)")) -
                                   m2));
    }
    detail = fmt("m=1 worst %.2e, m=2 worst %.2e (tol 1e-9)", worst1, worst2);
    return worst1 <= 1e-9 && worst2 <= 1e-9;
}

// 7. Sampling statistics: end-to-end pipeline and the variance law.
bool crit_sampling(std::string& detail) {
    NetworkConfig cfg;
    cfg.spec = named_invariant("slocc_quadratic");
    cfg.use_spa = true;
    cfg.shots = 1000000;
    const auto bell = density_from_pure(named_state("bell"));
    int ok = 0;
    const int seeds = 1000;
    for (int k = 0; k < seeds; ++k) {
        cfg.seed = derive_seed(800, static_cast<std::uint64_t>(k));
        const auto rep = run_network_protocol(bell, cfg);
        if (std::abs(rep.estimate - 1.0) <= 4.0 * std::sqrt(rep.predicted_variance)) ++ok;
    }

    bool var_ok = true;
    int stream = 0;
    for (double F : {0.0, 0.5, -0.5}) {
        ++stream;
        const std::int64_t N = 10000;
        const int runs = 4000;
        double sum = 0.0, sumsq = 0.0;
        for (int k = 0; k < runs; ++k) {
            const double fhat =
                estimate_F(sample_shots(F, N,
                                        derive_seed(801u + static_cast<std::uint64_t>(stream),
                                                    static_cast<std::uint64_t>(k))),
                           N)
                    .first;
            sum += fhat;
            sumsq += fhat * fhat;
        }
        const double var = sumsq / runs - (sum / runs) * (sum / runs);
        const double theory = (1.0 - F * F) / static_cast<double>(N);
        if (std::abs(var - theory) / theory >= 0.10) var_ok = false;
    }
    detail = fmt("pipeline within 4 sigma for %d/%d seeds (>=990), var law within 10%%: %s",
                 ok, seeds, var_ok ? "yes" : "no");
    return ok >= 990 && var_ok;
}

// 8. Haar LU ratio = 3/2.
bool crit_haar_lu(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto hc =
        haar_average_ratio(Comparison::LU, 100000, 0.01, 20258, SloccVariant::Quadratic);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    detail = fmt("ratio %.4f +- %.4f over 1e5 samples, %.0f ms", hc.ratio, hc.std_error, ms);
    return within(hc.ratio, 1.5, 0.05) && ms < 300000.0;
}

// 9. Haar SLOCC ratio band [2e3, 1e4] (expected to fail: the pinned budget
// formulas give ~1.23e3 quadratic / ~1.54e3 literal; see the ledger analysis).
bool crit_haar_slocc(std::string& detail) {
    const auto hq =
        haar_average_ratio(Comparison::SLOCC, 100000, 0.01, 20259, SloccVariant::Quadratic);
    const auto hl =
        haar_average_ratio(Comparison::SLOCC, 100000, 0.01, 20259, SloccVariant::Literal);
    const char* nearer =
        std::abs(hq.ratio - 5e3) <= std::abs(hl.ratio - 5e3) ? "quadratic" : "literal";
    detail = fmt("quadratic %.1f, literal %.1f; nearer 5e3: %s; band [2e3, 1e4]", hq.ratio,
                 hl.ratio, nearer);
    auto in_band = [](double r) { return r >= 2e3 && r <= 1e4; };
    return in_band(hq.ratio) && in_band(hl.ratio);
}

// 10. Crossover bisection.
bool crit_crossover(std::string& detail) {
    const double b3 = lu_crossover();
    detail = fmt("bisection %.9f vs sqrt(3/5) = %.9f", b3, std::sqrt(0.6));
    return within(b3, std::sqrt(0.6), 1e-6);
}

// 11. Three-tangle raw values with brute-force oracle agreement.
bool crit_tangle(std::string& detail) {
    const auto tangle = named_invariant("three_tangle");
    const auto ghz = named_state("ghz", 3);
    const auto w = named_state("w", 3);
    const cxd vg = eval_slocc_pure(ghz, tangle);
    const cxd vw = eval_slocc_pure(w, tangle);
    const double og = std::abs(vg - oracles::naive_slocc_pure(ghz, tangle));
    const double ow = std::abs(vw - oracles::naive_slocc_pure(w, tangle));
    const double ol = std::abs(vg - oracles::literal_three_tangle(ghz));
    detail = fmt("GHZ %.12f, W %.2e, oracle gaps %.1e/%.1e/%.1e", vg.real(), std::abs(vw), og,
                 ow, ol);
    return within(vg.real(), 0.5, 1e-12) && std::abs(vg.imag()) <= 1e-12 &&
           std::abs(vw) <= 1e-12 && og <= 1e-12 && ow <= 1e-12 && ol <= 1e-12;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "quartic LU invariant on the Schmidt family", crit_quartic},
        {2, "network-contraction oracle equivalence", crit_oracle_equivalence},
        {3, "SPA arithmetic", crit_spa_arithmetic},
        {4, "SPA channel Choi positivity", crit_spa_choi},
        {5, "invariance suites (LU, SL2, phase)", crit_invariance},
        {6, "moment identity m=1,2 on mixed states", crit_moment_identity},
        {7, "sampling statistics", crit_sampling},
        {8, "Haar LU copy ratio 3/2", crit_haar_lu},
        {9, "Haar SLOCC copy ratio band", crit_haar_slocc},
        {10, "tomography/network crossover", crit_crossover},
        {11, "three-tangle raw values", crit_tangle},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %02d [%s] %s -- %s\n", c.id, ok ? "PASS" : "FAIL", c.title,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
