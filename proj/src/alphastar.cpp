#include "trimkd/alphastar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trimkd/errors.hpp"
#include "trimkd/special.hpp"
#include "trimkd/trimdist.hpp"

namespace trimkd {

AlphaStarResult tk_index(std::span<const double> sample, const Distribution& f0, double eps1) {
    if (sample.empty()) throw parameter_error("tk_index: sample must be nonempty");
    if (!(eps1 > 0.0 && eps1 < 1.0)) throw parameter_error("tk_index: eps1 must lie in (0,1)");
    if (!f0.is_continuous()) throw parameter_error("tk_index: f0 must be continuous");

    const std::size_t n = sample.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = f0.cdf(sample[i]);
    std::sort(y.begin(), y.end());

    AlphaStarResult out;
    out.threshold = std::sqrt(std::log(2.0 / eps1) / (2.0 * static_cast<double>(n)));
    out.d_untrimmed = trimmed_kd_value_sorted(y, 0.0);
    if (out.threshold >= out.d_untrimmed) {
        out.alpha_star = 0.0;
        out.bracket = {0.0, 0.0};
        return out;
    }

    // g(alpha) = (1-alpha) d_alpha - threshold is nonincreasing with
    // g(0) > 0; bisect for the first crossing.
    const auto g = [&](double a) { return (1.0 - a) * trimmed_kd_value_sorted(y, a) - out.threshold; };
    double lo = 0.0, hi = 1.0 - 1e-6;
    if (g(hi) > 0.0) throw numeric_error("tk_index: no bracket, g stays positive at alpha -> 1");
    while (hi - lo > 1e-5) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    out.alpha_star = lo;
    out.bracket = {lo, hi};
    return out;
}

namespace {

struct KuiperSetup {
    std::vector<double> w;  // 0, F0(X_(1)), ..., F0(X_(n)), 1
    std::vector<double> q;  // q[k-1] = beta_quantile(level; k, n+1-k)
    std::size_t kmax = 0;
};

KuiperSetup kuiper_setup(std::span<const double> sample, const Distribution& f0, double gamma,
                         bool restrict_pairs, const ExecPolicy& policy) {
    if (sample.empty()) throw parameter_error("kuiper_lower_bound: sample must be nonempty");
    if (!(gamma > 0.0 && gamma < 1.0)) throw parameter_error("kuiper_lower_bound: gamma must lie in (0,1)");
    const std::size_t n = sample.size();
    if (n > 200000) throw parameter_error("kuiper_lower_bound: sample too large for the O(n^2) scan");

    KuiperSetup s;
    s.w.resize(n + 2);
    s.w[0] = 0.0;
    s.w[n + 1] = 1.0;
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    for (std::size_t i = 0; i < n; ++i) s.w[i + 1] = f0.cdf(x[i]);

    const double dn = static_cast<double>(n);
    double m_pairs;
    if (restrict_pairs) {
        const double d = std::floor(dn / 2.0);
        s.kmax = static_cast<std::size_t>(d);
        m_pairs = ((2.0 * dn + 3.0) * d - d * d) / 2.0;
    } else {
        s.kmax = n;
        m_pairs = dn * (dn + 3.0) / 2.0;
    }
    const double level = 1.0 - gamma / m_pairs;

    s.q.resize(s.kmax);
    parallel_for_index(static_cast<std::int64_t>(s.kmax), policy, [&](std::int64_t k0) {
        const double k = static_cast<double>(k0 + 1);
        s.q[static_cast<std::size_t>(k0)] = special::beta_quantile(level, k, dn + 1.0 - k);
    });
    return s;
}

}  // namespace

double kuiper_lower_bound_serial(std::span<const double> sample, const Distribution& f0, double gamma,
                                 bool restrict_pairs) {
    const ExecPolicy serial{1};
    const KuiperSetup s = kuiper_setup(sample, f0, gamma, restrict_pairs, serial);
    const std::size_t len = s.w.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= s.kmax; ++k) {
        const double qk = s.q[k - 1];
        for (std::size_t i = 0; i + k < len; ++i) {
            const double p = s.w[i + k] - s.w[i];
            if (p < 1e-12) continue;
            best = std::min(best, qk / p);
        }
    }
    return std::max(0.0, 1.0 - best);
}

double kuiper_lower_bound(std::span<const double> sample, const Distribution& f0, double gamma,
                          bool restrict_pairs, const ExecPolicy& policy) {
    if (policy.workers == 1) return kuiper_lower_bound_serial(sample, f0, gamma, restrict_pairs);
    const KuiperSetup s = kuiper_setup(sample, f0, gamma, restrict_pairs, policy);
    const std::size_t len = s.w.size();
    std::vector<double> best_k(s.kmax, std::numeric_limits<double>::infinity());
    parallel_for_index(static_cast<std::int64_t>(s.kmax), policy, [&](std::int64_t k0) {
        const std::size_t k = static_cast<std::size_t>(k0) + 1;
        const double qk = s.q[k - 1];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + k < len; ++i) {
            const double p = s.w[i + k] - s.w[i];
            if (p < 1e-12) continue;
            best = std::min(best, qk / p);
        }
        best_k[static_cast<std::size_t>(k0)] = best;
    });
    double best = std::numeric_limits<double>::infinity();
    for (double v : best_k) best = std::min(best, v);
    return std::max(0.0, 1.0 - best);
}

ToleranceRegion normal_tolerance_region(double f0_mu, double f0_sigma, double alpha,
                                        std::span<const double> mu_grid,
                                        std::span<const double> sigma_grid, double tol,
                                        std::size_t grid_size, const ExecPolicy& policy) {
    if (mu_grid.empty() || sigma_grid.empty())
        throw parameter_error("normal_tolerance_region: grids must be nonempty");
    if (!(f0_sigma > 0.0)) throw parameter_error("normal_tolerance_region: f0_sigma must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("normal_tolerance_region: alpha must lie in [0,1)");
    for (double s : sigma_grid)
        if (!(s > 0.0)) throw parameter_error("normal_tolerance_region: sigma grid must be positive");

    ToleranceRegion region;
    region.alpha = alpha;
    region.f0_mu = f0_mu;
    region.f0_sigma = f0_sigma;
    region.tol = tol;
    region.mu_grid.assign(mu_grid.begin(), mu_grid.end());
    region.sigma_grid.assign(sigma_grid.begin(), sigma_grid.end());

    const std::size_t nm = mu_grid.size(), ns = sigma_grid.size();
    region.member.assign(nm * ns, 0);

    // Shared t grid; Gamma(t) = Phi(m + s Phi^{-1}(t)) after standardizing
    // the candidate by the null parameters.
    const std::size_t g = grid_size;
    const double clip = 1e-6;
    std::vector<double> t(g + 2), z(g + 2);
    t.front() = 0.0;
    t.back() = 1.0;
    z.front() = -std::numeric_limits<double>::infinity();
    z.back() = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g; ++i) {
        t[i + 1] = clip + (1.0 - 2.0 * clip) * static_cast<double>(i) / static_cast<double>(g - 1);
        z[i + 1] = special::normal_quantile(t[i + 1]);
    }

    parallel_for_index(static_cast<std::int64_t>(nm * ns), policy, [&](std::int64_t cell) {
        const std::size_t i_mu = static_cast<std::size_t>(cell) % nm;
        const std::size_t i_sigma = static_cast<std::size_t>(cell) / nm;
        const double m = (mu_grid[i_mu] - f0_mu) / f0_sigma;
        const double s = sigma_grid[i_sigma] / f0_sigma;
        std::vector<double> gamma(t.size());
        gamma.front() = 0.0;
        gamma.back() = 1.0;
        for (std::size_t i = 1; i + 1 < t.size(); ++i) gamma[i] = special::normal_cdf(m + s * z[i]);
        const auto env = optimal_trim_envelope(t, gamma, alpha);
        const double cut = tol > 0.0 ? tol : 2.0 * env.grid_resolution;
        region.member[static_cast<std::size_t>(cell)] = env.distance <= cut;
    });

    for (std::size_t j = 0; j < ns; ++j) {
        for (std::size_t i = 0; i < nm; ++i) {
            if (!region.is_member(i, j)) continue;
            const bool edge = (i > 0 && !region.is_member(i - 1, j)) ||
                              (i + 1 < nm && !region.is_member(i + 1, j)) ||
                              (j > 0 && !region.is_member(i, j - 1)) ||
                              (j + 1 < ns && !region.is_member(i, j + 1));
            if (edge) region.boundary.emplace_back(mu_grid[i], sigma_grid[j]);
        }
    }
    return region;
}

}  // namespace trimkd
