#include "trimkd/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "trimkd/errors.hpp"
#include "trimkd/rng.hpp"
#include "trimkd/special.hpp"

namespace trimkd {

LimitLawSets gaussian_limit_sets(double mu, double sigma, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("gaussian_limit_sets: alpha must lie in [0,1)");
    if (!(sigma > 0.0)) throw parameter_error("gaussian_limit_sets: sigma must be positive");
    using special::normal_cdf;
    LimitLawSets sets;
    if (sigma == 1.0 && mu != 0.0) {
        const double m = std::fabs(mu);
        sets.t1.push_back(normal_cdf(-0.5 * m + std::log(1.0 - alpha) / m));
        return sets;
    }
    if (mu == 0.0 && sigma < 1.0) {
        const double delta = std::sqrt(8.0 * (sigma * sigma - 1.0) * std::log(sigma * (1.0 - alpha)));
        const double x_b = 0.5 * delta / (1.0 - sigma * sigma);
        sets.t1.push_back(normal_cdf(-x_b));
        sets.t2.push_back(normal_cdf(x_b));
        return sets;
    }
    if (mu == 0.0 && sigma > 1.0 / (1.0 - alpha)) {
        const double delta = std::sqrt(8.0 * (sigma * sigma - 1.0) * std::log(sigma * (1.0 - alpha)));
        const double x_b = 0.5 * delta / (sigma * sigma - 1.0);
        sets.t3.emplace_back(normal_cdf(-x_b), normal_cdf(x_b));
        return sets;
    }
    throw unsupported_case("gaussian_limit_sets: no closed form for these parameters");
}

LimitLawSets numeric_limit_sets(const TrimmedDistanceResult& env, double tol) {
    if (!(tol > 0.0)) throw parameter_error("numeric_limit_sets: tol must be positive");
    const double d = env.distance;
    if (d <= tol)
        throw numeric_error("numeric_limit_sets: distance is zero within tol; contact sets are not meaningful");
    const double alpha = env.alpha;
    const double floor_h = -alpha / (1.0 - alpha);
    const std::size_t m = env.grid.size();

    LimitLawSets sets;
    for (std::size_t i = 0; i < m; ++i) {
        const double g = env.g_values[i];
        const double mid = 0.5 * (env.upper_env[i] + env.lower_env[i]);
        if (std::fabs(g - d) <= tol && mid >= -tol) {
            sets.t1.push_back(env.grid[i]);
            if (std::fabs(mid) <= tol) sets.degenerate_t1 = true;
        }
        if (std::fabs((floor_h - g) - d) <= tol && mid <= floor_h + tol) {
            sets.t2.push_back(env.grid[i]);
            if (std::fabs(mid - floor_h) <= tol) sets.degenerate_t2 = true;
        }
    }

    // Pairs (s,t), s <= t, with (G(t)-G(s))/2 = d and midpoint sum inside
    // the band. Only indices whose forward range can still oscillate by
    // 2(d - tol) can open a pair.
    constexpr std::size_t kMaxPairs = 200000;
    for (std::size_t i = 0; i < m && sets.t3.size() < kMaxPairs; ++i) {
        const double gs = env.g_values[i];
        if (env.upper_env[i] - gs < 2.0 * (d - tol)) continue;
        for (std::size_t j = i; j < m && sets.t3.size() < kMaxPairs; ++j) {
            const double gt = env.g_values[j];
            if (std::fabs(0.5 * (gt - gs) - d) > tol) continue;
            const double half_sum = 0.5 * (gt + gs);
            if (half_sum < floor_h - tol || half_sum > tol) continue;
            sets.t3.emplace_back(env.grid[i], env.grid[j]);
            if (std::fabs(half_sum) <= tol || std::fabs(half_sum - floor_h) <= tol)
                sets.degenerate_t3 = true;
        }
    }

    if (sets.empty())
        throw numeric_error("numeric_limit_sets: no contact points within tol; increase tol");
    return sets;
}

std::vector<double> simulate_limit_law(const LimitLawSets& sets, double alpha, std::size_t replicates,
                                       std::size_t bridge_grid_size, std::uint64_t seed,
                                       const ExecPolicy& policy) {
    if (sets.empty()) throw parameter_error("simulate_limit_law: all contact sets are empty");
    if (replicates < 1) throw parameter_error("simulate_limit_law: need at least one replicate");
    if (bridge_grid_size < 3) throw parameter_error("simulate_limit_law: bridge grid too small");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("simulate_limit_law: alpha must lie in [0,1)");

    const std::size_t g = bridge_grid_size;
    const double dt = 1.0 / static_cast<double>(g - 1);
    const auto snap = [&](double t) {
        const auto k = static_cast<std::size_t>(std::lround(t / dt));
        return std::min(k, g - 1);
    };
    std::vector<std::size_t> idx1, idx2;
    std::vector<std::pair<std::size_t, std::size_t>> idx3;
    idx1.reserve(sets.t1.size());
    for (double t : sets.t1) idx1.push_back(snap(t));
    idx2.reserve(sets.t2.size());
    for (double t : sets.t2) idx2.push_back(snap(t));
    idx3.reserve(sets.t3.size());
    for (auto [s, t] : sets.t3) idx3.emplace_back(snap(s), snap(t));

    std::vector<double> out(replicates);
    parallel_for_index(static_cast<std::int64_t>(replicates), policy, [&](std::int64_t r) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(r));
        std::vector<double> w(g);
        w[0] = 0.0;
        const double sdt = std::sqrt(dt);
        for (std::size_t k = 1; k < g; ++k) w[k] = w[k - 1] + sdt * rng.normal();
        const double w1 = w[g - 1];
        // bridge: B(t_k) = W(t_k) - t_k W(1)
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k : idx1) best = std::max(best, w[k] - static_cast<double>(k) * dt * w1);
        for (std::size_t k : idx2) best = std::max(best, -(w[k] - static_cast<double>(k) * dt * w1));
        for (auto [ks, kt] : idx3) {
            const double bs = w[ks] - static_cast<double>(ks) * dt * w1;
            const double bt = w[kt] - static_cast<double>(kt) * dt * w1;
            best = std::max(best, 0.5 * (bt - bs));
        }
        out[static_cast<std::size_t>(r)] = best / (1.0 - alpha);
    });
    return out;
}

ConfidenceInterval confidence_bounds(double d_n, std::size_t n, double alpha, double beta) {
    if (!(beta > 0.0 && beta < 0.5)) throw parameter_error("confidence_bounds: beta must lie in (0, 1/2)");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("confidence_bounds: alpha must lie in [0,1)");
    if (n < 1) throw parameter_error("confidence_bounds: n must be >= 1");
    if (!(d_n >= 0.0 && d_n <= 1.0)) throw parameter_error("confidence_bounds: d_n must lie in [0,1]");
    const double root_n = std::sqrt(static_cast<double>(n));
    ConfidenceInterval ci;
    ci.level_beta = beta;
    ci.point_estimate = d_n;
    ci.upper = std::min(1.0, d_n + special::normal_quantile(1.0 - beta) / (2.0 * root_n * (1.0 - alpha)));
    ci.lower = std::max(0.0, d_n - special::kolmogorov_quantile(1.0 - beta) / (root_n * (1.0 - alpha)));
    return ci;
}

CredibilityBounds credibility_bounds(double d, double alpha, double lambda, double rho, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw parameter_error("credibility_bounds: delta must lie in (0,1)");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("credibility_bounds: alpha must lie in [0,1)");
    CredibilityBounds cb;
    cb.delta = delta;
    cb.lambda = lambda;
    cb.rho = rho;
    cb.d = d;
    if (!(d > 0.0)) {
        cb.index_infinite = true;
        return cb;
    }
    const double lr = lambda * rho;
    const double num_l = lr - special::kolmogorov_quantile(delta) / (1.0 - alpha);
    const double num_u = lr - special::normal_quantile(delta) / (2.0 * (1.0 - alpha));
    if (num_l > 0.0) {
        cb.l_defined = true;
        cb.l_delta = (num_l / d) * (num_l / d);
    }
    if (num_u > 0.0) {
        cb.u_defined = true;
        cb.u_delta = (num_u / d) * (num_u / d);
    }
    return cb;
}

namespace {

// Rejection frequency over M without-replacement subsamples of size m.
// Stream (seed_m, k) keys subsample k so a probe at m is reproducible
// regardless of the search path or the worker count.
double rejection_frequency(std::span<const double> y_all, double alpha, double lambda_rho,
                           std::size_t m, std::size_t M, std::uint64_t seed,
                           const ExecPolicy& policy) {
    const std::size_t n = y_all.size();
    const double threshold = lambda_rho / std::sqrt(static_cast<double>(m));
    const std::uint64_t seed_m = derive_seed(seed, m);
    std::vector<std::uint8_t> rejected(M, 0);
    parallel_for_index(static_cast<std::int64_t>(M), policy, [&](std::int64_t k) {
        Rng rng = stream_rng(seed_m, static_cast<std::uint64_t>(k));
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        std::vector<double> sub(m);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t pick = j + static_cast<std::size_t>(rng.below(n - j));
            std::swap(idx[j], idx[pick]);
            sub[j] = y_all[idx[j]];
        }
        std::sort(sub.begin(), sub.end());
        rejected[static_cast<std::size_t>(k)] = trimmed_kd_value_sorted(sub, alpha) > threshold;
    });
    std::size_t cnt = 0;
    for (auto v : rejected) cnt += v;
    return static_cast<double>(cnt) / static_cast<double>(M);
}

}  // namespace

SubsampleResult subsample_credibility(std::span<const double> sample, const Distribution& f0,
                                      double alpha, const TestPlan& plan_template, double delta,
                                      std::size_t M, std::uint64_t seed, const ExecPolicy& policy) {
    if (M < 100) throw parameter_error("subsample_credibility: need M >= 100 subsamples");
    if (sample.size() < 50) throw parameter_error("subsample_credibility: need a sample of size >= 50");
    if (!(delta > 0.0 && delta < 1.0)) throw parameter_error("subsample_credibility: delta must lie in (0,1)");

    const std::size_t n = sample.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = f0.cdf(sample[i]);

    const double lambda_rho = plan_template.lambda * plan_template.rho;
    const auto freq = [&](std::size_t m) {
        return rejection_frequency(y, alpha, lambda_rho, m, M, seed, policy);
    };

    std::size_t lo = std::min<std::size_t>(50, n);
    std::size_t m = lo;
    double f = freq(m);
    if (f >= delta) {
        SubsampleResult r;
        r.reached = true;
        r.m = m;
        r.frequency_at_m = f;
        return r;
    }
    // doubling
    while (m < n) {
        lo = m;
        m = std::min(n, 2 * m);
        f = freq(m);
        if (f >= delta) break;
    }
    if (f < delta) {
        SubsampleResult r;
        r.reached = false;
        r.m = n;
        r.frequency_at_m = f;
        return r;
    }
    // first-crossing bisection on the (noisy) monotone trend; ties resolve
    // toward the smaller size.
    std::size_t hi = m;
    double f_hi = f;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const double fm = freq(mid);
        if (fm >= delta) {
            hi = mid;
            f_hi = fm;
        } else {
            lo = mid;
        }
    }
    SubsampleResult r;
    r.reached = true;
    r.m = hi;
    r.frequency_at_m = f_hi;
    return r;
}

}  // namespace trimkd
