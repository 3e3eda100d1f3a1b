// Compares the serial reference engines against the chunked OpenMP kernels:
// same enumeration, different reduction. Prints timings and the value gap.

#include <chrono>
#include <cstdio>

#include "invlab/estimation.hpp"
#include "invlab/parallel.hpp"
#include "invlab/rng.hpp"

using namespace invlab;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());

    {
        const auto rho = random_mixed({2, 2}, 42);
        const auto spec = named_invariant("moment(4)");
        double v_par = 0.0, v_ser = 0.0;
        const double tp =
            time_ms([&] { v_par = eval_slocc_modsq_mixed(rho, spec); }, 5);
        const double ts =
            time_ms([&] { v_ser = eval_slocc_modsq_mixed_serial(rho, spec); }, 5);
        std::printf("slocc modsq mixed, r=8 (2^16 terms): omp %.3f ms, serial %.3f ms, "
                    "speedup %.2fx, |diff| %.2e\n",
                    tp, ts, ts / tp, std::abs(v_par - v_ser));
    }

    {
        const auto psi = haar_random_pure({2, 2, 2}, 7);
        PermutationTuple spec{6,
                              {{0, 1, 2, 3, 4, 5},
                               {1, 2, 3, 4, 5, 0},
                               {2, 3, 4, 5, 0, 1}},
                              Mode::LU,
                              ""};
        const auto rho = density_from_pure(psi);
        cxd v_par, v_ser;
        const double tp = time_ms([&] { v_par = eval_lu_mixed(rho, spec); }, 3);
        const double ts = time_ms([&] { v_ser = eval_lu_mixed_serial(rho, spec); }, 3);
        std::printf("lu mixed, n=3 r=6 (2^18 terms): omp %.3f ms, serial %.3f ms, "
                    "speedup %.2fx, |diff| %.2e\n",
                    tp, ts, ts / tp, std::abs(v_par - v_ser));
    }

    {
        HaarComparison hc{};
        const double tp = time_ms(
            [&] {
                hc = haar_average_ratio(Comparison::SLOCC, 20000, 0.01, 99,
                                        SloccVariant::Quadratic);
            },
            1);
        std::printf("haar slocc comparison, 2e4 samples: %.1f ms (ratio %.1f)\n", tp,
                    hc.ratio);
    }
    return 0;
}
