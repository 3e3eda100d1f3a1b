#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "invlab/estimation.hpp"
#include "invlab/rng.hpp"

using namespace invlab;

TEST_CASE("estimate_F") {
    auto [f, v] = estimate_F(75, 100);
    CHECK(f == 0.5);
    CHECK(std::abs(v - 0.0075) < 1e-15);
    auto [f1, v1] = estimate_F(100, 100);
    CHECK(f1 == 1.0);
    CHECK(v1 == 0.0);
    auto [f0, v0] = estimate_F(50, 100);
    CHECK(f0 == 0.0);
    CHECK(v0 == 0.01);
    CHECK_THROWS_AS(estimate_F(1, 0), ValidationError);
    CHECK_THROWS_AS(estimate_F(11, 10), ValidationError);
}

TEST_CASE("copies_needed_lu") {
    CHECK(std::abs(copies_needed_lu(2, 0.25, 0.01, true) - 150.0) < 1e-9);
    CHECK(copies_needed_lu(2, 1.0, 0.01, true) == 0.0);
    CHECK(std::abs(copies_needed_lu(2, 0.25, 0.01, false) - 350.0) < 1e-9);
    CHECK_THROWS_AS(copies_needed_lu(2, 0.25, 0.0, true), ValidationError);
}

TEST_CASE("copies_needed_slocc") {
    CHECK(std::abs(copies_needed_slocc(2, 2, 1.0, 1.0) - 7872.0) < 1e-9);
    CHECK(std::abs(copies_needed_slocc(2, 2, 0.0, 1.0) - 7938.0) < 1e-9);
    CHECK(std::abs(copies_needed_slocc(2, 2, 1.0, 0.01) - 787200.0) < 1e-6);

    // monotonicity: decreasing in |K|^2, increasing in n and r
    double prev = copies_needed_slocc(2, 2, 0.0, 1.0);
    for (double k2 : {0.2, 0.5, 0.8, 1.0}) {
        const double cur = copies_needed_slocc(2, 2, k2, 1.0);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(copies_needed_slocc(3, 2, 0.5, 1.0) > copies_needed_slocc(2, 2, 0.5, 1.0));
    CHECK(copies_needed_slocc(2, 4, 0.5, 1.0) > copies_needed_slocc(2, 2, 0.5, 1.0));
}

TEST_CASE("tomography_copies_lu") {
    CHECK(tomography_copies_lu({0, 0, 1}, 0.5) == 0.0);
    CHECK(std::abs(tomography_copies_lu({0, 0, 0.5}, 0.01) - 56.25) < 1e-12);
    CHECK(tomography_copies_lu({0, 0, 0}, 1.0) == 0.0);
}

TEST_CASE("tomography_copies_slocc") {
    BlochDecomposition zero{};
    CHECK(tomography_copies_slocc(zero, 1.0, SloccVariant::Quadratic) == 0.0);
    CHECK(tomography_copies_slocc(zero, 1.0, SloccVariant::Literal) == 0.0);

    BlochDecomposition bell{};
    bell.R[0][0] = 1.0;
    bell.R[1][1] = -1.0;
    bell.R[2][2] = 1.0;
    CHECK(std::abs(tomography_copies_slocc(bell, 0.01, SloccVariant::Quadratic)) < 1e-12);
    CHECK(std::abs(tomography_copies_slocc(bell, 0.01, SloccVariant::Literal)) < 1e-12);

    BlochDecomposition single{};
    single.R[1][2] = 0.5;
    CHECK(std::abs(tomography_copies_slocc(single, 1.0, SloccVariant::Quadratic) - 0.703125) <
          1e-12);

    // the two variants differ exactly by the b_j vs b_j^2 term
    BlochDecomposition withb{};
    withb.b = {0.3, 0.0, 0.0};
    const double q = tomography_copies_slocc(withb, 1.0, SloccVariant::Quadratic);
    const double l = tomography_copies_slocc(withb, 1.0, SloccVariant::Literal);
    CHECK(std::abs(q - 15.0 / 4.0 * (0.09 * 0.91)) < 1e-12);
    CHECK(std::abs(l - 15.0 / 4.0 * (0.3 * 0.91)) < 1e-12);
}

TEST_CASE("simulate_tomography_lu converges") {
    const auto zz = density_from_pure(make_pure({1, 0, 0, 0}, {2, 2}));
    const auto rep = simulate_tomography_lu(zz, 300000, 5);
    CHECK(rep.protocol == "tomography");
    CHECK(std::abs(rep.estimate - 1.0) < 0.01);

    // I/4: J = 1/2 with bias <= 3/(2 N_j)
    auto id4 = ComplexTensor::zeros({4, 4});
    for (int i = 0; i < 4; ++i) id4.at({i, i}) = 0.25;
    const auto mixed = make_density(id4, {2, 2});
    const std::int64_t N = 30000;
    const double nj = static_cast<double>(N) / 3.0;
    double mean = 0.0;
    const int runs = 400;
    for (int k = 0; k < runs; ++k)
        mean += simulate_tomography_lu(mixed, N, static_cast<std::uint64_t>(k)).estimate;
    mean /= runs;
    const double bias_bound = 3.0 / (2.0 * nj);
    // Monte Carlo error on the mean of J_hat ~ sqrt(var)/sqrt(runs); generous 4x margin
    CHECK(std::abs(mean - 0.5) < bias_bound + 4.0 * std::sqrt(3.0 / (4.0 * nj * nj) / runs));

    const auto bell = density_from_pure(named_state("bell"));
    const auto rb = simulate_tomography_lu(bell, 300000, 6);
    CHECK(std::abs(rb.estimate - 0.5) < 0.01);
    CHECK(std::find(rb.flags.begin(), rb.flags.end(), "degenerate_endpoint") !=
          rb.flags.end());

    CHECK_THROWS_AS(simulate_tomography_lu(bell, 100, 1), ValidationError);
}

TEST_CASE("F-hat is unbiased and follows the variance law") {
    const double F = 0.5;
    const std::int64_t N = 10000;
    const int runs = 2000;
    double sum = 0.0, sumsq = 0.0;
    for (int k = 0; k < runs; ++k) {
        const auto s = sample_shots(F, N, derive_seed(4242, static_cast<std::uint64_t>(k)));
        const double fhat = estimate_F(s, N).first;
        sum += fhat;
        sumsq += fhat * fhat;
    }
    const double mean = sum / runs;
    const double var = sumsq / runs - mean * mean;
    const double theory = (1.0 - F * F) / static_cast<double>(N);
    // mean within 4 standard errors
    CHECK(std::abs(mean - F) < 4.0 * std::sqrt(theory / runs));
    // empirical variance within 10% relative
    CHECK(std::abs(var - theory) / theory < 0.10);
}

TEST_CASE("end-to-end SLOCC pipeline recovers |K|^2 = 1 on the Bell state") {
    NetworkConfig cfg;
    cfg.spec = named_invariant("slocc_quadratic");
    cfg.use_spa = true;
    cfg.shots = 1000000;
    const auto bell = density_from_pure(named_state("bell"));
    int ok = 0;
    const int seeds = 200;
    for (int k = 0; k < seeds; ++k) {
        cfg.seed = static_cast<std::uint64_t>(k);
        const auto rep = run_network_protocol(bell, cfg);
        if (std::abs(rep.estimate - 1.0) <= 4.0 * std::sqrt(rep.predicted_variance)) ++ok;
    }
    CHECK(ok >= static_cast<int>(0.99 * seeds));
}

TEST_CASE("network report fields") {
    NetworkConfig cfg;
    cfg.spec = named_invariant("slocc_quadratic");
    cfg.use_spa = true;
    const auto bell = density_from_pure(named_state("bell"));
    const auto exact = run_network_protocol(bell, cfg);
    CHECK(exact.protocol == "network");
    CHECK_FALSE(exact.has_sampling);
    CHECK(std::abs(exact.estimate - 1.0) < 1e-10);  // recovered from the exact <Z>
    CHECK(std::abs(exact.exact_expectation - 17.0 / 65.0) < 1e-12);
    CHECK(exact.copies == 0.0);

    cfg.shots = 10000;
    cfg.seed = 11;
    const auto rep = run_network_protocol(bell, cfg);
    CHECK(rep.has_sampling);
    CHECK(rep.copies == 2.0 * 10000.0);
    CHECK(rep.predicted_variance > 0.0);

    // a state with |K|^2 = 0 often recovers negative under noise: flag, never clamp
    cfg.seed = 3;
    cfg.shots = 1000;
    const auto prod = density_from_pure(named_state("product"));
    const auto rp = run_network_protocol(prod, cfg);
    if (rp.estimate < 0.0)
        CHECK(std::find(rp.flags.begin(), rp.flags.end(), "below_zero") != rp.flags.end());

    // unnormalized states are refused by estimation
    const auto un = make_pure({1, 1, 0, 0}, {2, 2}, true);
    CHECK_THROWS_AS(run_network_protocol(un, cfg), ValidationError);
}

TEST_CASE("haar_average_ratio: LU lands at 3/2") {
    const auto hc = haar_average_ratio(Comparison::LU, 40000, 0.01, 2024,
                                       SloccVariant::Quadratic);
    CHECK(std::abs(hc.ratio - 1.5) < 0.05);
    CHECK(hc.interval_defined);
    CHECK(hc.std_error < 0.05);
    CHECK(hc.std_error > 0.0);
}

TEST_CASE("haar_average_ratio: SLOCC variants land near the analytic values") {
    const auto hq = haar_average_ratio(Comparison::SLOCC, 40000, 0.01, 2024,
                                       SloccVariant::Quadratic);
    // closed-form Haar moments give 276918/225 = 1230.75 (quadratic)
    CHECK(std::abs(hq.ratio - 1230.75) < 40.0);
    const auto hl = haar_average_ratio(Comparison::SLOCC, 40000, 0.01, 2024,
                                       SloccVariant::Literal);
    // and 1538.43 (literal)
    CHECK(std::abs(hl.ratio - 1538.43) < 50.0);
    // same network budget both variants
    CHECK(hq.budget.copies_network == hl.budget.copies_network);
    // no sampled state favors the network; the best case stays ~3 orders of
    // magnitude against it
    CHECK(hq.min_network_over_tomography > 1.0);
    CHECK(hq.min_network_over_tomography > 100.0);
}

TEST_CASE("haar_average_ratio: degenerate single sample") {
    const auto hc = haar_average_ratio(Comparison::SLOCC, 1, 0.01, 5, SloccVariant::Quadratic);
    CHECK_FALSE(hc.interval_defined);
    CHECK(hc.ratio > 0.0);
    CHECK(std::find(hc.flags.begin(), hc.flags.end(), "interval_undefined") != hc.flags.end());
}

TEST_CASE("haar_average_ratio is scheduling independent (seed-derived streams)") {
    const auto a = haar_average_ratio(Comparison::LU, 5000, 0.01, 7, SloccVariant::Quadratic);
    const auto b = haar_average_ratio(Comparison::LU, 5000, 0.01, 7, SloccVariant::Quadratic);
    CHECK(a.ratio == b.ratio);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("lu_crossover") {
    const double b3 = lu_crossover();
    CHECK(std::abs(b3 - std::sqrt(3.0 / 5.0)) < 1e-6);

    // side checks: which protocol needs fewer copies (epsilon fixed at 0.01)
    auto budgets = [](double b3v) {
        const double u = b3v * b3v;
        const double J = 0.5 * (1.0 + u);
        const double tom = tomography_copies_lu({0, 0, b3v}, 0.01);
        const double net = copies_needed_lu(2, J * J, 0.01, true);
        return std::pair<double, double>(tom, net);
    };
    auto [t5, n5] = budgets(0.5);
    CHECK(t5 < n5);  // tomography needs fewer copies
    auto [t9, n9] = budgets(0.9);
    CHECK(t9 > n9);  // network needs fewer copies
    CHECK_THROWS_AS(lu_crossover(0.1, 0.2), ValidationError);
}
