#include "trimkd/trimdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trimkd/errors.hpp"
#include "trimkd/special.hpp"

namespace trimkd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw parameter_error("trimming level must lie in [0,1)");
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double trimmed_kd_value_sorted(std::span<const double> y, double alpha) {
    check_alpha(alpha);
    const std::size_t n = y.size();
    if (n == 0) throw parameter_error("empirical trimmed distance: sample must be nonempty");
    const double c = 1.0 / (static_cast<double>(n) * (1.0 - alpha));
    const double floor_h = -alpha / (1.0 - alpha);

    // u[i] = max_{i <= j <= n-1} g_{j+}, g_{j+} = y[j] - j*c (0-based y).
    std::vector<double> u(n, -kInf);
    double run = -kInf;
    for (std::size_t i = n; i-- > 1;) {
        run = std::max(run, y[i] - static_cast<double>(i) * c);
        u[i] = run;
    }

    double d = -kInf;
    double lrun = kInf;
    double h_prev = 0.0;  // h_0
    for (std::size_t i = 1; i < n; ++i) {
        const double gm_i = y[i - 1] - static_cast<double>(i) * c;
        lrun = std::min(lrun, gm_i);
        const double mid = 0.5 * (u[i] + lrun);
        const double h_i = std::max(std::min(0.0, mid), floor_h);
        const double gp_prev = y[i - 1] - static_cast<double>(i - 1) * c;
        d = std::max(d, std::max(gp_prev - h_prev, h_i - gm_i));
        h_prev = h_i;
    }
    const double gp_last = y[n - 1] - static_cast<double>(n - 1) * c;
    const double gm_last = y[n - 1] - static_cast<double>(n) * c;
    d = std::max(d, std::max(gp_last - h_prev, floor_h - gm_last));
    return clamp01(d);
}

TrimmedDistanceResult empirical_trimmed_kd(std::span<const double> sample, const Distribution& f0,
                                           double alpha) {
    check_alpha(alpha);
    if (sample.empty()) throw parameter_error("empirical_trimmed_kd: sample must be nonempty");
    if (!f0.is_continuous()) throw parameter_error("empirical_trimmed_kd: f0 must have a continuous cdf");

    const std::size_t n = sample.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = f0.cdf(sample[i]);
    std::sort(y.begin(), y.end());

    const double c = 1.0 / (static_cast<double>(n) * (1.0 - alpha));
    const double floor_h = -alpha / (1.0 - alpha);

    TrimmedDistanceResult out;
    out.alpha = alpha;
    out.grid.resize(n + 1);
    out.h_tilde.assign(n + 1, 0.0);
    out.upper_env.assign(n + 1, 0.0);
    out.lower_env.assign(n + 1, 0.0);
    out.g_values.assign(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) out.grid[i] = static_cast<double>(i) / static_cast<double>(n);

    // Left-limit values of G at the step nodes; node 0 takes the right
    // limit G(0+) = Y_(1).
    out.g_values[0] = y[0];
    for (std::size_t i = 1; i <= n; ++i) out.g_values[i] = y[i - 1] - static_cast<double>(i) * c;

    double run = -kInf;
    out.upper_env[n] = out.g_values[n];
    for (std::size_t i = n; i-- > 0;) {
        run = std::max(run, y[i] - static_cast<double>(i) * c);  // g_{i+}
        out.upper_env[i] = run;
    }
    double lrun = kInf;
    out.lower_env[0] = y[0];
    for (std::size_t i = 1; i <= n; ++i) {
        lrun = std::min(lrun, out.g_values[i]);
        out.lower_env[i] = lrun;
    }

    out.h_tilde[0] = 0.0;
    out.h_tilde[n] = floor_h;
    for (std::size_t i = 1; i < n; ++i) {
        const double mid = 0.5 * (out.upper_env[i] + out.lower_env[i]);
        out.h_tilde[i] = std::max(std::min(0.0, mid), floor_h);
    }

    double d = -kInf;
    for (std::size_t i = 1; i <= n; ++i) {
        const double gp_prev = y[i - 1] - static_cast<double>(i - 1) * c;
        d = std::max(d, std::max(gp_prev - out.h_tilde[i - 1], out.h_tilde[i] - out.g_values[i]));
    }
    out.distance = clamp01(d);

    double res = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
        res = std::max(res, std::fabs(out.g_values[i] - out.g_values[i - 1]));
    out.grid_resolution = res;
    return out;
}

TrimmedDistanceResult optimal_trim_envelope(std::span<const double> t, std::span<const double> gamma,
                                            double alpha) {
    check_alpha(alpha);
    if (t.size() != gamma.size() || t.size() < 2)
        throw parameter_error("optimal_trim_envelope: need matching grids of size >= 2");
    if (t.front() != 0.0 || t.back() != 1.0)
        throw parameter_error("optimal_trim_envelope: t grid must span [0,1]");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] < t[i - 1]) throw parameter_error("optimal_trim_envelope: t grid must be nondecreasing");
        if (gamma[i] < gamma[i - 1] - 1e-12)
            throw parameter_error("optimal_trim_envelope: gamma must be nondecreasing");
    }

    const std::size_t m = t.size();
    const double floor_h = -alpha / (1.0 - alpha);

    TrimmedDistanceResult out;
    out.alpha = alpha;
    out.grid.assign(t.begin(), t.end());
    out.g_values.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.g_values[i] = gamma[i] - t[i] / (1.0 - alpha);

    out.upper_env.resize(m);
    double run = -kInf;
    for (std::size_t i = m; i-- > 0;) {
        run = std::max(run, out.g_values[i]);
        out.upper_env[i] = run;
    }
    out.lower_env.resize(m);
    double lrun = kInf;
    for (std::size_t i = 0; i < m; ++i) {
        lrun = std::min(lrun, out.g_values[i]);
        out.lower_env[i] = lrun;
    }
    out.h_tilde.resize(m);
    double d = 0.0;
    double res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double mid = 0.5 * (out.upper_env[i] + out.lower_env[i]);
        out.h_tilde[i] = std::max(std::min(0.0, mid), floor_h);
        d = std::max(d, std::fabs(out.h_tilde[i] - out.g_values[i]));
        if (i > 0) res = std::max(res, std::fabs(out.g_values[i] - out.g_values[i - 1]));
    }
    out.distance = clamp01(d);
    out.grid_resolution = res;
    return out;
}

double theoretical_trimmed_kd(const Distribution& f0, const Distribution& f, double alpha,
                              std::size_t grid_size, QuantileSpec clip) {
    check_alpha(alpha);
    if (!(clip.clip_epsilon > 0.0 && clip.clip_epsilon < 0.5))
        throw parameter_error("theoretical_trimmed_kd: clip_epsilon must lie in (0, 0.5)");
    if (grid_size < 2) throw parameter_error("theoretical_trimmed_kd: grid_size must be >= 2");
    if (!f0.is_continuous()) throw parameter_error("theoretical_trimmed_kd: f0 must be continuous");
    if (!f.is_continuous())
        throw parameter_error("theoretical_trimmed_kd: f must be continuous and strictly increasing");

    const std::size_t m = grid_size;
    std::vector<double> t(m + 2), gamma(m + 2);
    t.front() = 0.0;
    t.back() = 1.0;
    const double lo = clip.clip_epsilon, hi = 1.0 - clip.clip_epsilon;
    for (std::size_t i = 0; i < m; ++i)
        t[i + 1] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);

    std::size_t flat_spans = 0;
    double prev_q = -kInf;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double q = f.quantile(t[i]);
        if (i > 0 && i + 1 < t.size() && q == prev_q) ++flat_spans;
        prev_q = q;
        gamma[i] = f0.cdf(q);
    }
    if (flat_spans > m / 1000 + 1)
        throw parameter_error("theoretical_trimmed_kd: f is not strictly increasing (flat quantile spans)");

    // Quantile bisection noise can leave sub-1e-12 inversions; smooth them,
    // fail loudly on anything larger.
    for (std::size_t i = 1; i < gamma.size(); ++i) {
        if (gamma[i] < gamma[i - 1]) {
            if (gamma[i - 1] - gamma[i] > 1e-9)
                throw parameter_error("theoretical_trimmed_kd: transformed cdf is not monotone");
            gamma[i] = gamma[i - 1];
        }
    }
    return optimal_trim_envelope(t, gamma, alpha).distance;
}

double gaussian_trimmed_kd(double mu, double sigma, double alpha) {
    check_alpha(alpha);
    if (!(sigma > 0.0)) throw parameter_error("gaussian_trimmed_kd: sigma must be positive");
    using special::normal_cdf;
    if (sigma == 1.0) {
        if (mu == 0.0) return 0.0;
        const double m = std::fabs(mu);
        const double shift = std::log(1.0 - alpha) / m;
        return normal_cdf(0.5 * m + shift) - normal_cdf(-0.5 * m + shift) / (1.0 - alpha);
    }
    if (mu == 0.0) {
        if (sigma >= 1.0 && sigma <= 1.0 / (1.0 - alpha)) return 0.0;
        const double delta = std::sqrt(8.0 * (sigma * sigma - 1.0) * std::log(sigma * (1.0 - alpha)));
        if (sigma < 1.0) {
            const double s = 1.0 - sigma * sigma;
            return normal_cdf(-sigma * 0.5 * delta / s) - normal_cdf(-0.5 * delta / s) / (1.0 - alpha);
        }
        const double s = sigma * sigma - 1.0;
        return normal_cdf(sigma * 0.5 * delta / s) -
               (normal_cdf(0.5 * delta / s) - 0.5 * alpha) / (1.0 - alpha);
    }
    return theoretical_trimmed_kd(Distribution::normal(0.0, 1.0), Distribution::normal(mu, sigma), alpha);
}

double brute_force_trimmed_kd(std::span<const double> t, std::span<const double> gamma, double alpha,
                              double tol) {
    check_alpha(alpha);
    if (!(tol > 0.0)) throw parameter_error("brute_force_trimmed_kd: tol must be positive");
    if (t.size() != gamma.size() || t.size() < 2)
        throw parameter_error("brute_force_trimmed_kd: need matching grids of size >= 2");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] < t[i - 1]) throw parameter_error("brute_force_trimmed_kd: t grid must be nondecreasing");
        if (gamma[i] < gamma[i - 1] - 1e-12)
            throw parameter_error("brute_force_trimmed_kd: gamma must be nondecreasing");
    }

    const double max_slope = 1.0 / (1.0 - alpha);
    const std::size_t m = t.size();
    const auto feasible = [&](double d) {
        // Forward interval propagation of reachable h values.
        double lo = 0.0, hi = 0.0;  // h(t_0) = 0
        lo = std::max(lo, gamma[0] - d);
        hi = std::min(hi, gamma[0] + d);
        if (lo > hi + 1e-15) return false;
        for (std::size_t k = 1; k < m; ++k) {
            const double dt = t[k] - t[k - 1];
            double lo2 = lo;
            double hi2 = hi + max_slope * dt;
            lo2 = std::max(lo2, gamma[k] - d);
            hi2 = std::min(hi2, gamma[k] + d);
            if (lo2 > hi2 + 1e-15) return false;
            lo = lo2;
            hi = hi2;
        }
        return lo <= 1.0 + 1e-15 && 1.0 <= hi + 1e-15;
    };

    double lo_d = 0.0, hi_d = 1.0;
    if (feasible(0.0)) return 0.0;
    while (hi_d - lo_d > tol) {
        const double mid = 0.5 * (lo_d + hi_d);
        (feasible(mid) ? hi_d : lo_d) = mid;
    }
    return hi_d;
}

ExtremeCaseModel ExtremeCaseModel::piecewise_ab(double a, double b, double q, double alpha) {
    if (!(a >= 0.0 && a <= b && b <= 1.0)) throw parameter_error("piecewise_ab: need 0 <= a <= b <= 1");
    if (!(q > 0.0 && q < 1.0)) throw parameter_error("piecewise_ab: need q in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("piecewise_ab: need alpha in (0,1)");
    ExtremeCaseModel m;
    m.kind = Kind::piecewise_ab;
    m.a = a;
    m.b = b;
    m.q = q;
    m.alpha = alpha;
    m.d_alpha = (2.0 + q) * alpha / (2.0 * (1.0 - alpha));
    if (!(m.d_alpha < 1.0)) throw parameter_error("piecewise_ab: derived level d_alpha must be < 1");
    m.t0 = (1.0 - alpha) * (a - m.d_alpha);
    m.t1 = (1.0 - alpha) * a + (1.0 + q) * alpha;
    m.t2 = (1.0 - alpha) * b - q * alpha;
    m.t3 = (1.0 - alpha) * (b + m.d_alpha) + alpha;
    return m;
}

ExtremeCaseModel ExtremeCaseModel::beta_extreme(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.06148)) throw parameter_error("beta_extreme: requires alpha < 0.06148");
    // Solve beta0 * 2^{1-beta0} = 1/(1-alpha) on the decreasing branch
    // beta0 >= 1/log 2 (density at 1/2 equal to 1/(1-alpha)).
    const double target = 1.0 / (1.0 - alpha);
    const double peak = 1.0 / std::log(2.0);
    double lo = peak, hi = 40.0;
    const auto f = [](double b) { return b * std::exp2(1.0 - b); };
    if (f(peak) < target)
        throw numeric_error("beta_extreme: no admissible beta0 for this alpha (needs alpha <= 0.0579)");
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > target ? lo : hi) = mid;
    }
    ExtremeCaseModel m;
    m.kind = Kind::beta_extreme;
    m.alpha = alpha;
    m.beta0 = 0.5 * (lo + hi);
    return m;
}

ExtremeCaseModel ExtremeCaseModel::half_kink(double d_alpha, double alpha) {
    if (!(d_alpha > 0.0 && d_alpha < 1.0)) throw parameter_error("half_kink: need d_alpha in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("half_kink: need alpha in (0,1)");
    if (!(d_alpha <= (1.0 - 2.0 * alpha) / (2.0 * (1.0 - alpha))))
        throw parameter_error("half_kink: second segment slope would be negative");
    ExtremeCaseModel m;
    m.kind = Kind::half_kink;
    m.alpha = alpha;
    m.d_alpha = d_alpha;
    return m;
}

double ExtremeCaseModel::true_distance() const {
    switch (kind) {
        case Kind::piecewise_ab:
        case Kind::half_kink:
            return d_alpha;
        case Kind::beta_extreme:
            return (1.0 - std::exp2(-beta0)) - 0.5 / (1.0 - alpha);
    }
    return 0.0;
}

Distribution extreme_case_cdf(const ExtremeCaseModel& model) {
    const double al = model.alpha;
    switch (model.kind) {
        case ExtremeCaseModel::Kind::beta_extreme:
            return Distribution::beta(1.0, model.beta0);
        case ExtremeCaseModel::Kind::half_kink: {
            const double mid = 0.5 * (1.0 / (1.0 - al) + 2.0 * model.d_alpha);
            return Distribution::piecewise_linear_cdf({0.0, 0.5, 1.0}, {0.0, mid, 1.0});
        }
        case ExtremeCaseModel::Kind::piecewise_ab: {
            // The target cdf jumps at (a+b)/2; a 1e-9-wide ramp keeps the
            // knot sequence strictly increasing without observable effect.
            const double da = model.d_alpha;
            const double left_end = -(1.0 - al) * da;
            const double right_end = 1.0 + (1.0 - al) * da;
            const double mid = 0.5 * (model.a + model.b);
            const double jump_lo = (mid - (1.0 + model.q) * al) / (1.0 - al);
            const double jump_hi = (mid + model.q * al) / (1.0 - al);
            const double ramp = 1e-9;
            std::vector<double> xs = {left_end, model.t0,  model.t1, mid - ramp,
                                      mid,      model.t2, model.t3, right_end};
            std::vector<double> ys = {0.0,     model.a,  model.a,  jump_lo,
                                      jump_hi, model.b,  model.b,  1.0};
            return Distribution::piecewise_linear_cdf(std::move(xs), std::move(ys));
        }
    }
    throw parameter_error("extreme_case_cdf: unknown kind");
}

}  // namespace trimkd
