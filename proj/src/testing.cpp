#include "trimkd/testing.hpp"

#include <cmath>

#include "trimkd/errors.hpp"
#include "trimkd/trimdist.hpp"

namespace trimkd {

TestPlan plan_test(double alpha, double eps1, double eps2, std::size_t n) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("plan_test: alpha must lie in [0,1)");
    if (!(eps1 > 0.0 && eps1 < 1.0) || !(eps2 > 0.0 && eps2 < 1.0))
        throw parameter_error("plan_test: error targets must lie in (0,1)");
    if (n < 1) throw parameter_error("plan_test: n must be >= 1");
    if (!(eps2 > eps1 * std::exp(-2.0)))
        throw parameter_error("plan_test: inadmissible targets, need eps2 > eps1 * e^-2");
    if (!(eps2 < eps1 * std::exp(2.0)))
        throw parameter_error("plan_test: inadmissible targets, need eps2 < eps1 * e^2");

    TestPlan p;
    p.alpha = alpha;
    p.eps1 = eps1;
    p.eps2 = eps2;
    p.n = n;
    p.lambda = 0.5 + 0.25 * std::log(eps2 / eps1);
    p.rho = std::sqrt(0.5 * std::log(2.0 / eps1)) / ((1.0 - alpha) * p.lambda);
    p.rho_n = p.rho / std::sqrt(static_cast<double>(n));
    p.threshold = p.lambda * p.rho_n;
    return p;
}

TestPlan plan_test_general(double alpha, double rho1, double rho2, double lambda, std::size_t n) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("plan_test_general: alpha must lie in [0,1)");
    if (!(lambda > 0.0 && lambda < 1.0)) throw parameter_error("plan_test_general: lambda must lie in (0,1)");
    if (!(rho1 >= 0.0 && rho2 > rho1)) throw parameter_error("plan_test_general: need 0 <= rho1 < rho2");
    if (n < 1) throw parameter_error("plan_test_general: n must be >= 1");
    TestPlan p;
    p.alpha = alpha;
    p.lambda = lambda;
    p.n = n;
    p.rho = rho2 * std::sqrt(static_cast<double>(n));
    p.rho_n = rho2;
    p.threshold = (1.0 - lambda) * rho1 + lambda * rho2;
    const auto [ei, eii] = error_bounds(alpha, rho1, rho2, lambda, n);
    p.eps1 = ei;
    p.eps2 = eii;
    return p;
}

std::pair<double, double> error_bounds(double alpha, double rho1, double rho2, double lambda,
                                       std::size_t n) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("error_bounds: alpha must lie in [0,1)");
    if (!(lambda > 0.0 && lambda < 1.0)) throw parameter_error("error_bounds: lambda must lie in (0,1)");
    if (!(rho1 >= 0.0) || !(rho2 > rho1))
        throw parameter_error("error_bounds: need 0 <= rho1 < rho2 (separation collapses otherwise)");
    if (n < 1) throw parameter_error("error_bounds: n must be >= 1");
    const double gap = rho2 - rho1;
    const double base = 2.0 * static_cast<double>(n) * (1.0 - alpha) * (1.0 - alpha) * gap * gap;
    const double ei = 2.0 * std::exp(-base * lambda * lambda);
    const double eii = 2.0 * std::exp(-base * (1.0 - lambda) * (1.0 - lambda));
    return {ei, eii};
}

TestOutcome run_test(std::span<const double> sample, const Distribution& f0, const TestPlan& plan) {
    if (sample.size() != plan.n)
        throw parameter_error("run_test: sample length does not match the plan size");
    TestOutcome out;
    out.statistic = empirical_trimmed_kd(sample, f0, plan.alpha).distance;
    out.threshold = plan.threshold;
    out.reject = out.statistic > plan.threshold;
    const auto [ei, eii] = error_bounds(plan.alpha, 0.0, plan.rho_n, plan.lambda, plan.n);
    out.ei_bound = ei;
    out.eii_bound = eii;
    return out;
}

}  // namespace trimkd
