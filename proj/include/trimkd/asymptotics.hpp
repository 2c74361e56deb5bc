#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trimkd/distributions.hpp"
#include "trimkd/parallel.hpp"
#include "trimkd/testing.hpp"
#include "trimkd/trimdist.hpp"

namespace trimkd {

// Contact sets indexing the Gaussian-process supremum of the limit law:
// t1 holds upper contacts, t2 lower contacts, t3 two-point oscillations.
struct LimitLawSets {
    std::vector<double> t1, t2;
    std::vector<std::pair<double, double>> t3;
    // Whether a contact sits exactly on a clamping boundary (the
    // pathological configurations excluded by the limit theorem).
    bool degenerate_t1 = false, degenerate_t2 = false, degenerate_t3 = false;

    bool empty() const { return t1.empty() && t2.empty() && t3.empty(); }
};

// Closed-form contact sets for F0 = N(0,1) vs N(mu, sigma^2). Covered:
// sigma=1 with mu != 0; mu=0 with sigma < 1 or sigma > 1/(1-alpha).
// Throws unsupported_case otherwise (callers fall back to the grid route).
LimitLawSets gaussian_limit_sets(double mu, double sigma, double alpha);

// Grid detection of the contact sets from an envelope result, with
// tolerance tol on the defining equalities.
LimitLawSets numeric_limit_sets(const TrimmedDistanceResult& env, double tol);

// Draws of Z = 1/(1-alpha) * max(max_{T1} B, max_{T2} -B, max_{T3} (B_t-B_s)/2)
// with B a Brownian bridge simulated on a uniform grid; set points snap to
// the nearest node. Replicate r derives its stream from (seed, r).
std::vector<double> simulate_limit_law(const LimitLawSets& sets, double alpha, std::size_t replicates,
                                       std::size_t bridge_grid_size, std::uint64_t seed,
                                       const ExecPolicy& policy = {});

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 1.0;
    double level_beta = 0.0;
    double point_estimate = 0.0;
};

// Conservative asymptotic bounds for the trimmed distance:
//   upper: d_n + z_{1-beta} / (2 sqrt(n) (1-alpha))
//   lower: d_n - K_{1-beta} / (sqrt(n) (1-alpha)), clamped to [0,1],
// where z is the normal and K the Kolmogorov-law quantile.
ConfidenceInterval confidence_bounds(double d_n, std::size_t n, double alpha, double beta);

// Sample-size bounds [L_delta, U_delta] for the credibility index.
struct CredibilityBounds {
    double l_delta = 0.0, u_delta = 0.0;
    bool l_defined = false, u_defined = false;
    bool index_infinite = false;  // d <= 0: the model is inside the neighbourhood
    double delta = 0.0, lambda = 0.0, rho = 0.0, d = 0.0;
};

CredibilityBounds credibility_bounds(double d, double alpha, double lambda, double rho, double delta);

struct SubsampleResult {
    bool reached = false;      // false: rejection frequency stays below delta up to m = n
    std::size_t m = 0;         // smallest size reaching delta (when reached)
    double frequency_at_m = 0.0;
};

// Smallest subsample size m at which the rejection frequency over M
// without-replacement subsamples (threshold recomputed at size m) first
// reaches delta. Doubling then bisection on the monotone trend.
SubsampleResult subsample_credibility(std::span<const double> sample, const Distribution& f0,
                                      double alpha, const TestPlan& plan_template, double delta,
                                      std::size_t M, std::uint64_t seed, const ExecPolicy& policy = {});

}  // namespace trimkd
