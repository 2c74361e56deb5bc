#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "trimkd/asymptotics.hpp"
#include "trimkd/distributions.hpp"
#include "trimkd/errors.hpp"
#include "trimkd/experiments.hpp"
#include "trimkd/rng.hpp"
#include "trimkd/special.hpp"
#include "trimkd/trimdist.hpp"

using namespace trimkd;

namespace {

double sample_variance(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / (v.size() - 1);
}

TrimmedDistanceResult gaussian_envelope(double mu, double sigma, double alpha, std::size_t m) {
    std::vector<double> t(m + 2), gamma(m + 2);
    t.front() = 0.0;
    t.back() = 1.0;
    gamma.front() = 0.0;
    gamma.back() = 1.0;
    const double clip = 1e-6;
    for (std::size_t i = 0; i < m; ++i) {
        t[i + 1] = clip + (1.0 - 2.0 * clip) * static_cast<double>(i) / static_cast<double>(m - 1);
        gamma[i + 1] = special::normal_cdf(mu + sigma * special::normal_quantile(t[i + 1]));
    }
    return optimal_trim_envelope(t, gamma, alpha);
}

}  // namespace

TEST_CASE("closed-form contact sets in the gaussian family") {
    const auto s1 = gaussian_limit_sets(1.0, 1.0, 0.1);
    REQUIRE(s1.t1.size() == 1);
    CHECK(s1.t2.empty());
    CHECK(s1.t3.empty());
    CHECK(s1.t1[0] == doctest::Approx(special::normal_cdf(-0.5 + std::log(0.9))).epsilon(1e-15));
    CHECK(s1.t1[0] == doctest::Approx(0.27247).epsilon(1e-4));

    const auto s1m = gaussian_limit_sets(-1.0, 1.0, 0.1);
    CHECK(s1m.t1[0] == s1.t1[0]);

    const auto s2 = gaussian_limit_sets(0.0, 0.8, 0.05);
    REQUIRE(s2.t1.size() == 1);
    REQUIRE(s2.t2.size() == 1);
    CHECK(s2.t1[0] == doctest::Approx(1.0 - s2.t2[0]).epsilon(1e-12));

    const auto s3 = gaussian_limit_sets(0.0, 1.5, 0.1);
    REQUIRE(s3.t3.size() == 1);
    CHECK(s3.t1.empty());
    CHECK(s3.t2.empty());
    CHECK(s3.t3[0].first < s3.t3[0].second);

    CHECK_THROWS_AS(gaussian_limit_sets(0.0, 1.05, 0.1), unsupported_case);
    CHECK_THROWS_AS(gaussian_limit_sets(0.5, 1.5, 0.1), unsupported_case);
}

TEST_CASE("grid detection matches the closed form for a shifted normal") {
    const auto env = gaussian_envelope(1.0, 1.0, 0.1, 4000);
    const auto sets = numeric_limit_sets(env, 2e-3);
    REQUIRE_FALSE(sets.t1.empty());
    CHECK(sets.t2.empty());
    CHECK(sets.t3.empty());
    const double t0 = 0.2724697;
    double closest = 1.0;
    for (double t : sets.t1) {
        closest = std::min(closest, std::fabs(t - t0));
        CHECK(std::fabs(t - t0) < 0.15);  // contact cluster localizes slowly in tol
    }
    CHECK(closest < 1e-3);
}

TEST_CASE("grid detection on the interval-contact coverage law") {
    // a >= d_alpha and b <= 1 - d_alpha keep the flat contact regions
    // inside [0,1]; see the clipped-regime case below for what happens
    // otherwise.
    const auto ab = ExtremeCaseModel::piecewise_ab(1.0 / 3.0, 2.0 / 3.0, 0.1, 0.05);
    const auto f0 = extreme_case_cdf(ab);
    const std::size_t m = 6000;
    std::vector<double> t(m), gamma(m);
    for (std::size_t i = 0; i < m; ++i) {
        t[i] = static_cast<double>(i) / static_cast<double>(m - 1);
        gamma[i] = f0.cdf(t[i]);
    }
    const auto env = optimal_trim_envelope(t, gamma, 0.05);
    CHECK(env.distance == doctest::Approx(ab.d_alpha).epsilon(1e-3));

    // The middle oscillation sits (1-q) alpha / (2(1-alpha)) below the
    // distance, so pair contacts only show up at tolerances beyond that gap.
    const double gap = (1.0 - ab.q) * ab.alpha / (2.0 * (1.0 - ab.alpha));
    const auto sets = numeric_limit_sets(env, gap + 2e-3);
    REQUIRE_FALSE(sets.t1.empty());
    REQUIRE_FALSE(sets.t2.empty());
    REQUIRE_FALSE(sets.t3.empty());
    CHECK(*std::min_element(sets.t1.begin(), sets.t1.end()) < 0.01);
    CHECK(*std::max_element(sets.t1.begin(), sets.t1.end()) < ab.t1);
    CHECK(*std::max_element(sets.t2.begin(), sets.t2.end()) > 0.99);
    CHECK(*std::min_element(sets.t2.begin(), sets.t2.end()) > ab.t2);
    bool straddles = false;
    const double mid = 0.5 * (ab.a + ab.b);
    for (auto [s, u] : sets.t3) {
        CHECK(s >= ab.t0 - 0.02);
        CHECK(u <= ab.t3 + 0.02);
        if (s < mid && u > mid) straddles = true;
    }
    CHECK(straddles);

    const auto tight = numeric_limit_sets(env, 1e-4);
    CHECK(tight.t3.empty());  // exact pair contacts do not exist for q < 1
}

TEST_CASE("clipped contact regions lower the distance of the coverage law") {
    // With a < d_alpha the flat contact at the left end falls outside
    // [0,1]; the optimum is then set by the middle oscillation
    // (1+2q) alpha / (2(1-alpha)), not by d_alpha.
    const auto ab = ExtremeCaseModel::piecewise_ab(0.01, 0.99, 0.1, 0.05);
    const auto f0 = extreme_case_cdf(ab);
    const std::size_t m = 6000;
    std::vector<double> t(m), gamma(m);
    for (std::size_t i = 0; i < m; ++i) {
        t[i] = static_cast<double>(i) / static_cast<double>(m - 1);
        gamma[i] = f0.cdf(t[i]);
    }
    const double middle = (1.0 + 2.0 * ab.q) * ab.alpha / (2.0 * (1.0 - ab.alpha));
    CHECK(optimal_trim_envelope(t, gamma, 0.05).distance == doctest::Approx(middle).epsilon(1e-3));
}

TEST_CASE("degenerate null distance is reported, not classified") {
    const std::size_t m = 1000;
    std::vector<double> t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = static_cast<double>(i) / (m - 1);
    const auto env = optimal_trim_envelope(t, t, 0.1);
    CHECK_THROWS_AS(numeric_limit_sets(env, 1e-3), numeric_error);
}

TEST_CASE("limit-law simulation variances") {
    const double alpha = 0.1;
    LimitLawSets one;
    one.t1 = {0.2724697};
    const auto draws = simulate_limit_law(one, alpha, 100000, 257, 77);
    const double var_target = 0.2724697 * (1 - 0.2724697) / (0.9 * 0.9);
    CHECK(sample_variance(draws) == doctest::Approx(var_target).epsilon(0.05));
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    CHECK(std::fabs(mean) < 0.01);

    LimitLawSets two;
    two.t2 = {0.5};
    const auto d2 = simulate_limit_law(two, 0.0, 100000, 257, 78);
    CHECK(sample_variance(d2) == doctest::Approx(0.25).epsilon(0.05));

    LimitLawSets pair;
    pair.t3 = {{0.2, 0.7}};
    const auto d3 = simulate_limit_law(pair, alpha, 100000, 257, 79);
    CHECK(sample_variance(d3) == doctest::Approx(0.5 * 0.5 / (4.0 * 0.81)).epsilon(0.05));

    LimitLawSets none;
    CHECK_THROWS_AS(simulate_limit_law(none, alpha, 10, 257, 1), parameter_error);
}

TEST_CASE("normalized deviations behave like the limit law at desk scale") {
    const double d_true = gaussian_trimmed_kd(1.0, 1.0, 0.1);
    const auto devs = experiments::clt_deviations(Distribution::normal(1, 1),
                                                  Distribution::normal(0, 1), 0.1, d_true, 2000, 400,
                                                  314159);
    const double sd = std::sqrt(sample_variance(devs));
    CHECK(sd == doctest::Approx(std::sqrt(0.2447284)).epsilon(0.15));
    const double mean = std::accumulate(devs.begin(), devs.end(), 0.0) / devs.size();
    CHECK(std::fabs(mean) < 0.35);  // finite-sample localization bias, see acceptance notes
}

TEST_CASE("conservative coverage holds across the extreme-case battery") {
    const std::vector<ExtremeCaseModel> cases = {
        ExtremeCaseModel::half_kink(0.1, 0.05),
        ExtremeCaseModel::piecewise_ab(0.49, 0.51, 0.01, 0.01),
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto cov = experiments::coverage_extreme(cases[i], 1000, 1200, 0.05, 7100 + i);
        CHECK(cov.lower_coverage >= 0.93);
        CHECK(cov.upper_coverage >= 0.93);
    }
}

TEST_CASE("confidence bounds arithmetic") {
    const auto ci0 = confidence_bounds(0.0, 400, 0.1, 0.05);
    CHECK(ci0.lower == 0.0);
    CHECK(ci0.upper ==
          doctest::Approx(special::normal_quantile(0.95) / (2.0 * 20.0 * 0.9)).epsilon(1e-12));

    const auto ci = confidence_bounds(0.0477, 20000, 0.05, 0.05);
    CHECK(ci.upper == doctest::Approx(0.0538215).epsilon(1e-4));
    CHECK(ci.lower == doctest::Approx(0.0375914).epsilon(1e-4));

    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const double dn = rng.uniform();
        const auto c = confidence_bounds(dn, 100 + rng.below(1000), 0.3 * rng.uniform(),
                                         0.01 + 0.48 * rng.uniform());
        CHECK(c.lower <= dn);
        CHECK(dn <= c.upper);
    }
    CHECK_THROWS_AS(confidence_bounds(0.1, 100, 0.1, 0.6), parameter_error);
}

TEST_CASE("credibility bounds reproduce the toy-scenario arithmetic") {
    const double eps2 = 0.05, eps1 = 0.05 / (0.999 * std::exp(2.0));
    const TestPlan plan = plan_test(0.05, eps1, eps2, 20000);
    CHECK(plan.lambda == doctest::Approx(0.99975).epsilon(1e-5));
    CHECK(plan.rho_n == doctest::Approx(0.012555).epsilon(1e-4));

    const auto f3 = credibility_bounds(0.0477, 0.05, plan.lambda, plan.rho, 0.5);
    REQUIRE(f3.l_defined);
    REQUIRE(f3.u_defined);
    CHECK(std::fabs(f3.l_delta - 359.0) <= 2.0);
    CHECK(std::fabs(f3.u_delta - 1386.0) <= 2.0);

    const auto f1 = credibility_bounds(0.0140, 0.05, plan.lambda, plan.rho, 0.5);
    CHECK(std::fabs(f1.l_delta - 4170.0) <= 0.01 * 4170.0);
    CHECK(std::fabs(f1.u_delta - 16079.0) <= 0.01 * 16079.0);

    // median of the normal is zero, so U is exactly (lambda rho / d)^2
    const double lr = plan.lambda * plan.rho;
    CHECK(f3.u_delta == doctest::Approx((lr / 0.0477) * (lr / 0.0477)).epsilon(1e-14));

    // L <= U whenever both defined, checked for delta >= 1/2
    Rng rng(4);
    for (int i = 0; i < 40; ++i) {
        const double d = 0.005 + rng.uniform();
        const double delta = 0.5 + 0.49 * rng.uniform();
        const auto cb = credibility_bounds(d, 0.1, plan.lambda, plan.rho, delta);
        if (cb.l_defined && cb.u_defined) CHECK(cb.l_delta <= cb.u_delta + 1e-9);
    }

    const auto inf_case = credibility_bounds(0.0, 0.05, plan.lambda, plan.rho, 0.5);
    CHECK(inf_case.index_infinite);
    const auto undef = credibility_bounds(0.3, 0.05, 0.5, 0.2, 0.5);  // lambda rho below the offset
    CHECK_FALSE(undef.l_defined);
}

TEST_CASE("subsampling estimator stays unreached under the null") {
    Rng rng = stream_rng(515, 0);
    const auto f0 = Distribution::normal(0, 1);
    std::vector<double> x(300);
    for (auto& v : x) v = rng.normal();
    const TestPlan plan = plan_test(0.05, 0.05 / (0.999 * std::exp(2.0)), 0.05, x.size());
    const auto r = subsample_credibility(x, f0, 0.05, plan, 0.5, 100, 9);
    CHECK_FALSE(r.reached);
    CHECK(r.m == x.size());
    CHECK(r.frequency_at_m < 0.5);
}

TEST_CASE("subsampling validation") {
    const auto f0 = Distribution::normal(0, 1);
    const TestPlan plan = plan_test(0.05, 0.01, 0.05, 100);
    std::vector<double> tiny(10, 0.0);
    CHECK_THROWS_AS(subsample_credibility(tiny, f0, 0.05, plan, 0.5, 100, 1), parameter_error);
    std::vector<double> ok(100, 0.0);
    CHECK_THROWS_AS(subsample_credibility(ok, f0, 0.05, plan, 0.5, 50, 1), parameter_error);
}
