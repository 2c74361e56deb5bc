#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trimkd/distributions.hpp"
#include "trimkd/parallel.hpp"

namespace trimkd {

struct AlphaStarResult {
    double alpha_star = 0.0;
    double threshold = 0.0;    // sqrt(log(2/eps1) / (2n))
    double d_untrimmed = 0.0;  // classical Kolmogorov-Smirnov statistic
    std::pair<double, double> bracket{0.0, 0.0};
};

// Minimal trimming level estimate: 0 when the untrimmed statistic is
// already below the threshold, otherwise the smallest root of
//   (1-alpha) d_K(F0, R_alpha(F_n)) = threshold,
// found by first-crossing bisection (the left-hand side is nonincreasing);
// returns the bracket's lower edge, tolerance 1e-5 in alpha.
AlphaStarResult tk_index(std::span<const double> sample, const Distribution& f0, double eps1);

// Simultaneous lower confidence bound for the contamination level from
// Beta quantiles over all order-statistic intervals:
//   1 - min over pairs (i,j) of beta_quantile(1 - gamma/M_n; j-i, n+1-j+i)
//                              / (F0(X_(j)) - F0(X_(i))),
// with X_(0) = -inf, X_(n+1) = +inf, clamped at 0. Pairs with
// F0-probability below 1e-12 are skipped. restrict_pairs limits the scan
// to j-i <= floor(n/2) with the correspondingly smaller M_n.
double kuiper_lower_bound(std::span<const double> sample, const Distribution& f0, double gamma,
                          bool restrict_pairs = false, const ExecPolicy& policy = {});

// Serial reference for the pair scan; the parallel kernel must match it
// exactly.
double kuiper_lower_bound_serial(std::span<const double> sample, const Distribution& f0, double gamma,
                                 bool restrict_pairs = false);

// Membership map of normal candidate parameters inside the contamination
// neighbourhood of N(f0_mu, f0_sigma^2).
struct ToleranceRegion {
    double alpha = 0.0, f0_mu = 0.0, f0_sigma = 1.0;
    double tol = 0.0;  // membership cut on the distance (<= 0 on input: auto)
    std::vector<double> mu_grid, sigma_grid;
    std::vector<std::uint8_t> member;                 // [i_sigma * mu_grid.size() + i_mu]
    std::vector<std::pair<double, double>> boundary;  // member cells with a non-member neighbour

    bool is_member(std::size_t i_mu, std::size_t i_sigma) const {
        return member[i_sigma * mu_grid.size() + i_mu] != 0;
    }
};

ToleranceRegion normal_tolerance_region(double f0_mu, double f0_sigma, double alpha,
                                        std::span<const double> mu_grid,
                                        std::span<const double> sigma_grid, double tol,
                                        std::size_t grid_size = 20000, const ExecPolicy& policy = {});

}  // namespace trimkd
