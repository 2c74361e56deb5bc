// Timing comparison between the serial reference kernels and the OpenMP
// versions. Not part of the test suite; run directly:
//   build/bench/trimkd_bench [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "trimkd/alphastar.hpp"
#include "trimkd/asymptotics.hpp"
#include "trimkd/distributions.hpp"
#include "trimkd/experiments.hpp"
#include "trimkd/rng.hpp"
#include "trimkd/testing.hpp"

using namespace trimkd;

namespace {

template <class Fn>
double time_best_of(int repeats, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial_s, double parallel_s) {
    std::printf("%-34s %10.4f s %10.4f s %8.2fx\n", name.c_str(), serial_s, parallel_s,
                serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    const ExecPolicy serial{1};
    const ExecPolicy parallel{0};

    std::printf("%-34s %12s %12s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        Rng rng = stream_rng(1, 0);
        std::vector<double> x(4000);
        for (auto& v : x) v = rng.uniform();
        const auto f0 = Distribution::uniform(0, 1);
        row("pair-scan lower bound (n=4000)",
            time_best_of(repeats, [&] { kuiper_lower_bound(x, f0, 0.05, false, serial); }),
            time_best_of(repeats, [&] { kuiper_lower_bound(x, f0, 0.05, false, parallel); }));
    }
    {
        const auto gen =
            Distribution::mixture(0.9, Distribution::normal(0, 1), Distribution::normal(3, 1));
        const auto f0 = Distribution::normal(0, 1);
        std::vector<double> alphas;
        for (double a = 0.01; a <= 0.2; a += 0.01) alphas.push_back(a);
        row("rejection curve (n=2000, 100 reps)",
            time_best_of(repeats, [&] {
                experiments::rejection_curve(gen, f0, alphas, 2000, 100, 0.05, 0.05, 1, serial);
            }),
            time_best_of(repeats, [&] {
                experiments::rejection_curve(gen, f0, alphas, 2000, 100, 0.05, 0.05, 1, parallel);
            }));
    }
    {
        const auto model = ExtremeCaseModel::beta_extreme(0.05);
        row("coverage battery (N=1000, M=600)",
            time_best_of(repeats, [&] { experiments::coverage_extreme(model, 1000, 600, 0.05, 2, serial); }),
            time_best_of(repeats,
                         [&] { experiments::coverage_extreme(model, 1000, 600, 0.05, 2, parallel); }));
    }
    {
        LimitLawSets sets;
        sets.t1 = {0.27};
        sets.t3 = {{0.2, 0.8}};
        row("bridge simulation (2e4 x 4097)",
            time_best_of(repeats, [&] { simulate_limit_law(sets, 0.1, 20000, 4097, 3, serial); }),
            time_best_of(repeats, [&] { simulate_limit_law(sets, 0.1, 20000, 4097, 3, parallel); }));
    }
    {
        std::vector<double> mu, sigma;
        for (int i = 0; i < 15; ++i) mu.push_back(-0.7 + 0.1 * i);
        for (int i = 0; i < 15; ++i) sigma.push_back(0.6 + 0.06 * i);
        row("tolerance region (15x15, grid 1e4)",
            time_best_of(repeats,
                         [&] { normal_tolerance_region(0, 1, 0.1, mu, sigma, 0.0, 10000, serial); }),
            time_best_of(repeats,
                         [&] { normal_tolerance_region(0, 1, 0.1, mu, sigma, 0.0, 10000, parallel); }));
    }
    return 0;
}
