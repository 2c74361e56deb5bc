#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trimkd/distributions.hpp"
#include "trimkd/parallel.hpp"
#include "trimkd/testing.hpp"
#include "trimkd/trimdist.hpp"

// Monte Carlo drivers behind the `simulate` commands and the acceptance
// suite. Replicate r always derives its stream from (seed, r), so outputs
// are identical for any worker count.
namespace trimkd::experiments {

struct ThresholdCell {
    double eps1 = 0.0, eps2 = 0.0, lambda = 0.0, rho_n = 0.0;
};

// The nine (EI, EII) threshold cells at a common alpha and n.
std::vector<ThresholdCell> threshold_table(double alpha, std::size_t n);

struct RejectionCurve {
    std::size_t n = 0;
    std::vector<double> alphas;
    std::vector<double> frequency;
};

// Rejection frequency of the contamination test as the trimming level
// varies, for `replicates` samples of size n from `generator`.
RejectionCurve rejection_curve(const Distribution& generator, const Distribution& f0,
                               std::span<const double> alphas, std::size_t n, std::size_t replicates,
                               double eps1, double eps2, std::uint64_t seed,
                               const ExecPolicy& policy = {});

struct CoverageResult {
    double lower_coverage = 0.0;
    double upper_coverage = 0.0;
    double true_distance = 0.0;
};

// Coverage of the conservative confidence bounds for samples of size N
// from U(0,1) against an extreme-case target law, M replicates.
CoverageResult coverage_extreme(const ExtremeCaseModel& model, std::size_t N, std::size_t M,
                                double beta, std::uint64_t seed, const ExecPolicy& policy = {});

// Draws of sqrt(n) (d_n - d) for samples from `generator`.
std::vector<double> clt_deviations(const Distribution& generator, const Distribution& f0, double alpha,
                                   double true_distance, std::size_t n, std::size_t replicates,
                                   std::uint64_t seed, const ExecPolicy& policy = {});

// Classical two-sided Kolmogorov-Smirnov distance between a sample and
// N(mu, sigma^2).
double ks_distance_to_normal(std::span<const double> values, double mu, double sigma);

// Contamination-estimate comparison scenarios: a (1-a*) : a* split between
// a base law and a contaminating law, both mapped through a fixed null.
enum class CompScenario {
    normal_shift,   // base Phi(Z), contamination Phi(Z + 4)
    normal_spread,  // base Phi(Z), contamination Phi(3Z + 4)
    uniform_beta,   // base U(0,1), contamination Beta(5,1)
};

struct CompRun {
    double alpha_star_n = 0.0;
    double kuiper_bound = 0.0;
};

// Per-run estimates over `runs` independent samples of size n with a
// deterministic contaminated count round(n * alpha_star_true); the null
// model is U(0,1).
std::vector<CompRun> comp_runs(CompScenario scenario, double alpha_star_true, std::size_t runs,
                               std::size_t n, double eps1, double gamma, std::uint64_t seed,
                               const ExecPolicy& policy = {});

}  // namespace trimkd::experiments
