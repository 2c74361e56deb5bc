#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trimkd/distributions.hpp"

namespace trimkd {

// Outcome of a trimmed-distance computation: the value together with the
// optimal trimming function and the envelopes that produced it, on the
// evaluation grid.
struct TrimmedDistanceResult {
    double distance = 0.0;
    double alpha = 0.0;
    std::vector<double> grid;       // t values in [0,1]
    std::vector<double> h_tilde;    // clamped midline, in [-alpha/(1-alpha), 0]
    std::vector<double> upper_env;  // U(t) = sup_{s>=t} G(s)
    std::vector<double> lower_env;  // L(t) = inf_{s<=t} G(s)
    std::vector<double> g_values;   // G(t) = Gamma(t) - t/(1-alpha)
    double grid_resolution = 0.0;   // max |G| change between adjacent nodes

    // Optimal trimming function h(t) = h_tilde(t) + t/(1-alpha) at node i.
    double h_alpha_at(std::size_t i) const { return h_tilde[i] + grid[i] / (1.0 - alpha); }
};

// Evaluation window for quantile grids near 0/1.
struct QuantileSpec {
    double clip_epsilon = 1e-6;
};

// d_K(F0, R_alpha(F_n)) for a data sample, via the order-statistic sweep.
// O(n log n); ties in the transformed sample are processed as-is.
TrimmedDistanceResult empirical_trimmed_kd(std::span<const double> sample, const Distribution& f0,
                                           double alpha);

// Value-only fast path on an already sorted vector of F0-transformed
// observations; used by Monte Carlo drivers.
double trimmed_kd_value_sorted(std::span<const double> y_sorted, double alpha);

// min over h in C_alpha of ||h - Gamma|| for a nondecreasing grid function
// Gamma with Gamma defined on t (t nondecreasing, spans [0,1]). Backward
// sup sweep for U, forward inf sweep for L, clamped midline optimum.
TrimmedDistanceResult optimal_trim_envelope(std::span<const double> t, std::span<const double> gamma,
                                            double alpha);

// d_K(F0, R_alpha(F)) for theoretical laws via Gamma = F0 o F^{-1} on a
// uniform grid over [clip, 1-clip] extended by the exact limits at 0, 1.
double theoretical_trimmed_kd(const Distribution& f0, const Distribution& f, double alpha,
                              std::size_t grid_size = 100000, QuantileSpec clip = {});

// Closed forms for F0 = N(0,1) against N(mu, sigma^2): exact for sigma = 1
// (any mu) and mu = 0 (any sigma); other parameter pairs fall back to the
// grid route.
double gaussian_trimmed_kd(double mu, double sigma, double alpha);

// Independent oracle: bisects the smallest feasible band width d such
// that some h with h(0)=0, h(1)=1 and slopes in [0, 1/(1-alpha)] stays
// within d of Gamma at every node; feasibility by interval propagation.
double brute_force_trimmed_kd(std::span<const double> t, std::span<const double> gamma, double alpha,
                              double tol = 1e-6);

// Target laws with known distance to R_alpha(U(0,1)) used by the coverage
// experiments.
struct ExtremeCaseModel {
    enum class Kind { piecewise_ab, beta_extreme, half_kink };

    Kind kind{};
    double alpha = 0.0;
    double a = 0.0, b = 0.0, q = 0.0;  // piecewise_ab
    double d_alpha = 0.0;              // piecewise_ab (derived), half_kink (given)
    double beta0 = 0.0;                // beta_extreme (derived from alpha)
    double t0 = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;  // piecewise_ab knots

    static ExtremeCaseModel piecewise_ab(double a, double b, double q, double alpha);
    static ExtremeCaseModel beta_extreme(double alpha);
    static ExtremeCaseModel half_kink(double d_alpha, double alpha);

    // d_K(F0, R_alpha(U(0,1))) for this target law.
    double true_distance() const;
};

Distribution extreme_case_cdf(const ExtremeCaseModel& model);

}  // namespace trimkd
