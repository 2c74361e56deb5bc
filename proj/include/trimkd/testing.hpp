#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "trimkd/distributions.hpp"

namespace trimkd {

// Threshold calculus for the contamination test. lambda and rho come from
// the error targets via
//   lambda = 1/2 + (1/4) log(eps2/eps1),
//   rho    = 1/((1-alpha) lambda) * sqrt(log(2/eps1) / 2),
// admissible when eps1 e^{-2} < eps2 < eps1 e^2.
struct TestPlan {
    double alpha = 0.0;
    double eps1 = 0.0, eps2 = 0.0;
    double lambda = 0.0, rho = 0.0;
    std::size_t n = 0;
    double rho_n = 0.0;      // rho / sqrt(n)
    double threshold = 0.0;  // rejection boundary for the statistic
};

struct TestOutcome {
    double statistic = 0.0;
    double threshold = 0.0;
    bool reject = false;
    double ei_bound = 0.0;   // uniform type I bound at the plan separation
    double eii_bound = 0.0;  // uniform type II bound at the plan separation
};

TestPlan plan_test(double alpha, double eps1, double eps2, std::size_t n);

// Two-threshold form: null separation rho1, alternative separation rho2,
// rejection boundary (1-lambda) rho1 + lambda rho2. The eps fields carry
// the resulting exponential bounds.
TestPlan plan_test_general(double alpha, double rho1, double rho2, double lambda, std::size_t n);

// (EI, EII) exponential bounds
//   EI  <= 2 exp(-2 lambda^2     n (1-alpha)^2 (rho2-rho1)^2)
//   EII <= 2 exp(-2 (1-lambda)^2 n (1-alpha)^2 (rho2-rho1)^2).
std::pair<double, double> error_bounds(double alpha, double rho1, double rho2, double lambda,
                                       std::size_t n);

// Computes the statistic and applies the plan's strict rejection rule.
TestOutcome run_test(std::span<const double> sample, const Distribution& f0, const TestPlan& plan);

}  // namespace trimkd
