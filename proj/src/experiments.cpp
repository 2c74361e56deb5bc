#include "trimkd/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "trimkd/alphastar.hpp"
#include "trimkd/asymptotics.hpp"
#include "trimkd/errors.hpp"
#include "trimkd/rng.hpp"
#include "trimkd/special.hpp"

namespace trimkd::experiments {

std::vector<ThresholdCell> threshold_table(double alpha, std::size_t n) {
    static constexpr double kCells[9][2] = {{0.1, 0.5},  {0.05, 0.25}, {0.01, 0.05},
                                            {0.1, 0.1},  {0.05, 0.05}, {0.01, 0.01},
                                            {0.1, 0.02}, {0.05, 0.01}, {0.01, 0.002}};
    std::vector<ThresholdCell> out;
    out.reserve(9);
    for (const auto& c : kCells) {
        const TestPlan p = plan_test(alpha, c[0], c[1], n);
        out.push_back({c[0], c[1], p.lambda, p.rho_n});
    }
    return out;
}

RejectionCurve rejection_curve(const Distribution& generator, const Distribution& f0,
                               std::span<const double> alphas, std::size_t n, std::size_t replicates,
                               double eps1, double eps2, std::uint64_t seed, const ExecPolicy& policy) {
    if (alphas.empty()) throw parameter_error("rejection_curve: alpha grid must be nonempty");
    std::vector<TestPlan> plans;
    plans.reserve(alphas.size());
    for (double a : alphas) plans.push_back(plan_test(a, eps1, eps2, n));

    const std::size_t na = alphas.size();
    std::vector<std::uint8_t> rejects(replicates * na, 0);
    parallel_for_index(static_cast<std::int64_t>(replicates), policy, [&](std::int64_t r) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(r));
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = f0.cdf(sample(generator, rng));
        std::sort(y.begin(), y.end());
        for (std::size_t j = 0; j < na; ++j) {
            const double stat = trimmed_kd_value_sorted(y, alphas[j]);
            rejects[static_cast<std::size_t>(r) * na + j] = stat > plans[j].threshold;
        }
    });

    RejectionCurve curve;
    curve.n = n;
    curve.alphas.assign(alphas.begin(), alphas.end());
    curve.frequency.assign(na, 0.0);
    for (std::size_t r = 0; r < replicates; ++r)
        for (std::size_t j = 0; j < na; ++j) curve.frequency[j] += rejects[r * na + j];
    for (double& f : curve.frequency) f /= static_cast<double>(replicates);
    return curve;
}

CoverageResult coverage_extreme(const ExtremeCaseModel& model, std::size_t N, std::size_t M,
                                double beta, std::uint64_t seed, const ExecPolicy& policy) {
    const Distribution f0 = extreme_case_cdf(model);
    const double d_true = model.true_distance();
    const double alpha = model.alpha;
    const double z = special::normal_quantile(1.0 - beta);
    const double kq = special::kolmogorov_quantile(1.0 - beta);
    const double root_n = std::sqrt(static_cast<double>(N));
    const double lower_margin = kq / (root_n * (1.0 - alpha));
    const double upper_margin = z / (2.0 * root_n * (1.0 - alpha));

    std::vector<std::uint8_t> lower_ok(M, 0), upper_ok(M, 0);
    parallel_for_index(static_cast<std::int64_t>(M), policy, [&](std::int64_t r) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(r));
        std::vector<double> y(N);
        for (std::size_t i = 0; i < N; ++i) y[i] = f0.cdf(rng.uniform());
        std::sort(y.begin(), y.end());
        const double dn = trimmed_kd_value_sorted(y, alpha);
        lower_ok[static_cast<std::size_t>(r)] = (dn - lower_margin) <= d_true;
        upper_ok[static_cast<std::size_t>(r)] = d_true <= (dn + upper_margin);
    });

    CoverageResult out;
    out.true_distance = d_true;
    for (std::size_t r = 0; r < M; ++r) {
        out.lower_coverage += lower_ok[r];
        out.upper_coverage += upper_ok[r];
    }
    out.lower_coverage /= static_cast<double>(M);
    out.upper_coverage /= static_cast<double>(M);
    return out;
}

std::vector<double> clt_deviations(const Distribution& generator, const Distribution& f0, double alpha,
                                   double true_distance, std::size_t n, std::size_t replicates,
                                   std::uint64_t seed, const ExecPolicy& policy) {
    std::vector<double> out(replicates);
    const double root_n = std::sqrt(static_cast<double>(n));
    parallel_for_index(static_cast<std::int64_t>(replicates), policy, [&](std::int64_t r) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(r));
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = f0.cdf(sample(generator, rng));
        std::sort(y.begin(), y.end());
        out[static_cast<std::size_t>(r)] = root_n * (trimmed_kd_value_sorted(y, alpha) - true_distance);
    });
    return out;
}

double ks_distance_to_normal(std::span<const double> values, double mu, double sigma) {
    std::vector<double> y(values.begin(), values.end());
    std::sort(y.begin(), y.end());
    const std::size_t n = y.size();
    const double dn = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = special::normal_cdf((y[i] - mu) / sigma);
        d = std::max(d, std::max(u - static_cast<double>(i) / dn, static_cast<double>(i + 1) / dn - u));
    }
    return d;
}

std::vector<CompRun> comp_runs(CompScenario scenario, double alpha_star_true, std::size_t runs,
                               std::size_t n, double eps1, double gamma, std::uint64_t seed,
                               const ExecPolicy& policy) {
    if (!(alpha_star_true >= 0.0 && alpha_star_true < 1.0))
        throw parameter_error("comp_runs: alpha_star_true must lie in [0,1)");
    const Distribution f0 = Distribution::uniform(0.0, 1.0);
    const std::size_t n_contam =
        static_cast<std::size_t>(std::lround(static_cast<double>(n) * alpha_star_true));

    std::vector<CompRun> out(runs);
    parallel_for_index(static_cast<std::int64_t>(runs), policy, [&](std::int64_t r) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(r));
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool contaminated = i >= n - n_contam;
            double v;
            switch (scenario) {
                case CompScenario::normal_shift:
                    v = contaminated ? special::normal_cdf(rng.normal() + 4.0)
                                     : special::normal_cdf(rng.normal());
                    break;
                case CompScenario::normal_spread:
                    v = contaminated ? special::normal_cdf(3.0 * rng.normal() + 4.0)
                                     : special::normal_cdf(rng.normal());
                    break;
                case CompScenario::uniform_beta:
                default:
                    v = contaminated ? std::pow(rng.uniform(), 1.0 / 5.0) : rng.uniform();
                    break;
            }
            x[i] = v;
        }
        CompRun run;
        run.alpha_star_n = tk_index(x, f0, eps1).alpha_star;
        run.kuiper_bound = kuiper_lower_bound_serial(x, f0, gamma);
        out[static_cast<std::size_t>(r)] = run;
    });
    return out;
}

}  // namespace trimkd::experiments
