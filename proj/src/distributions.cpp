#include "trimkd/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trimkd/errors.hpp"
#include "trimkd/special.hpp"

namespace trimkd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

struct Uniform {
    double a, b;
};
struct Normal {
    double mu, sigma;
};
struct Logistic {
    double location, scale;
};
struct Beta {
    double p, q;
};
struct Mixture {
    double w;
    std::shared_ptr<const Distribution::Impl> left, right;
};
struct Empirical {
    std::vector<double> sorted;
};
struct Piecewise {
    std::vector<double> xs, ys;
};

struct Distribution::Impl {
    std::variant<Uniform, Normal, Logistic, Beta, Mixture, Empirical, Piecewise> v;
};

namespace {

using Impl = Distribution::Impl;

double impl_cdf(const Impl& im, double x);
double impl_quantile(const Impl& im, double p);
double impl_density(const Impl& im, double x);
bool impl_continuous(const Impl& im);

double impl_cdf(const Impl& im, double x) {
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= d.a) return 0.0;
                if (x >= d.b) return 1.0;
                return (x - d.a) / (d.b - d.a);
            } else if constexpr (std::is_same_v<T, Normal>) {
                if (x == -kInf) return 0.0;
                if (x == kInf) return 1.0;
                return special::normal_cdf((x - d.mu) / d.sigma);
            } else if constexpr (std::is_same_v<T, Logistic>) {
                if (x == -kInf) return 0.0;
                if (x == kInf) return 1.0;
                return 1.0 / (1.0 + std::exp(-(x - d.location) / d.scale));
            } else if constexpr (std::is_same_v<T, Beta>) {
                if (x <= 0.0) return 0.0;
                if (x >= 1.0) return 1.0;
                return special::reg_inc_beta(x, d.p, d.q);
            } else if constexpr (std::is_same_v<T, Mixture>) {
                return d.w * impl_cdf(*d.left, x) + (1.0 - d.w) * impl_cdf(*d.right, x);
            } else if constexpr (std::is_same_v<T, Empirical>) {
                const auto& s = d.sorted;
                const auto it = std::upper_bound(s.begin(), s.end(), x);
                return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
            } else {  // Piecewise
                const auto& xs = d.xs;
                const auto& ys = d.ys;
                if (x <= xs.front()) return x < xs.front() ? 0.0 : ys.front();
                if (x >= xs.back()) return 1.0;
                const auto it = std::upper_bound(xs.begin(), xs.end(), x);
                const std::size_t k = static_cast<std::size_t>(it - xs.begin());
                const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
                return ys[k - 1] + t * (ys[k] - ys[k - 1]);
            }
        },
        im.v);
}

double impl_quantile(const Impl& im, double p) {
    return std::visit(
        [p, &im](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return d.a + p * (d.b - d.a);
            } else if constexpr (std::is_same_v<T, Normal>) {
                if (p == 0.0) return -kInf;
                if (p == 1.0) return kInf;
                return d.mu + d.sigma * special::normal_quantile(p);
            } else if constexpr (std::is_same_v<T, Logistic>) {
                if (p == 0.0) return -kInf;
                if (p == 1.0) return kInf;
                return d.location + d.scale * std::log(p / (1.0 - p));
            } else if constexpr (std::is_same_v<T, Beta>) {
                return special::beta_quantile(p, d.p, d.q);
            } else if constexpr (std::is_same_v<T, Mixture>) {
                double lo = std::min(impl_quantile(*d.left, p), impl_quantile(*d.right, p));
                double hi = std::max(impl_quantile(*d.left, p), impl_quantile(*d.right, p));
                if (p == 0.0 || p == 1.0 || lo == hi) return p == 0.0 ? lo : (p == 1.0 ? hi : lo);
                for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(lo)); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (impl_cdf(im, mid) < p ? lo : hi) = mid;
                }
                return hi;
            } else if constexpr (std::is_same_v<T, Empirical>) {
                const auto& s = d.sorted;
                const double n = static_cast<double>(s.size());
                std::size_t k = static_cast<std::size_t>(std::ceil(n * p));
                if (k < 1) k = 1;
                if (k > s.size()) k = s.size();
                return s[k - 1];
            } else {  // Piecewise
                const auto& xs = d.xs;
                const auto& ys = d.ys;
                if (p <= ys.front()) return xs.front();
                if (p >= ys.back()) {
                    // first x attaining 1
                    for (std::size_t k = 0; k < ys.size(); ++k)
                        if (ys[k] >= ys.back()) return xs[k];
                    return xs.back();
                }
                const auto it = std::lower_bound(ys.begin(), ys.end(), p);
                const std::size_t k = static_cast<std::size_t>(it - ys.begin());
                if (ys[k] == p) return xs[k];
                const double t = (p - ys[k - 1]) / (ys[k] - ys[k - 1]);
                return xs[k - 1] + t * (xs[k] - xs[k - 1]);
            }
        },
        im.v);
}

double impl_density(const Impl& im, double x) {
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return (x >= d.a && x <= d.b) ? 1.0 / (d.b - d.a) : 0.0;
            } else if constexpr (std::is_same_v<T, Normal>) {
                return special::normal_pdf((x - d.mu) / d.sigma) / d.sigma;
            } else if constexpr (std::is_same_v<T, Logistic>) {
                const double e = std::exp(-std::fabs(x - d.location) / d.scale);
                return e / (d.scale * (1.0 + e) * (1.0 + e));
            } else if constexpr (std::is_same_v<T, Beta>) {
                if (x <= 0.0 || x >= 1.0) return 0.0;
                const double lnb = std::lgamma(d.p) + std::lgamma(d.q) - std::lgamma(d.p + d.q);
                return std::exp((d.p - 1.0) * std::log(x) + (d.q - 1.0) * std::log1p(-x) - lnb);
            } else if constexpr (std::is_same_v<T, Mixture>) {
                return d.w * impl_density(*d.left, x) + (1.0 - d.w) * impl_density(*d.right, x);
            } else if constexpr (std::is_same_v<T, Empirical>) {
                throw parameter_error("density: empirical law has no density");
            } else {  // Piecewise: piecewise-constant derivative
                const auto& xs = d.xs;
                const auto& ys = d.ys;
                if (x < xs.front() || x > xs.back()) return 0.0;
                const auto it = std::upper_bound(xs.begin(), xs.end(), x);
                std::size_t k = static_cast<std::size_t>(it - xs.begin());
                if (k == 0) k = 1;
                if (k == xs.size()) k = xs.size() - 1;
                return (ys[k] - ys[k - 1]) / (xs[k] - xs[k - 1]);
            }
        },
        im.v);
}

bool impl_continuous(const Impl& im) {
    return std::visit(
        [](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Mixture>)
                return impl_continuous(*d.left) && impl_continuous(*d.right);
            else if constexpr (std::is_same_v<T, Empirical>)
                return false;
            else
                return true;
        },
        im.v);
}

template <class D>
std::shared_ptr<const Impl> make_impl(D d) {
    auto im = std::make_shared<Impl>();
    im->v = std::move(d);
    return im;
}

}  // namespace

Distribution Distribution::uniform(double a, double b) {
    if (!(b > a)) throw parameter_error("uniform: requires b > a");
    return Distribution(make_impl(Uniform{a, b}));
}

Distribution Distribution::normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw parameter_error("normal: requires sigma > 0");
    return Distribution(make_impl(Normal{mu, sigma}));
}

Distribution Distribution::logistic(double location, double scale) {
    if (!(scale > 0.0)) throw parameter_error("logistic: requires scale > 0");
    return Distribution(make_impl(Logistic{location, scale}));
}

Distribution Distribution::beta(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw parameter_error("beta: requires p > 0 and q > 0");
    return Distribution(make_impl(Beta{p, q}));
}

Distribution Distribution::mixture(double w, Distribution left, Distribution right) {
    if (!(w >= 0.0 && w <= 1.0)) throw parameter_error("mixture: weight must lie in [0,1]");
    return Distribution(make_impl(Mixture{w, left.impl_, right.impl_}));
}

Distribution Distribution::empirical(std::vector<double> sample) {
    if (sample.empty()) throw parameter_error("empirical: sample must be nonempty");
    std::sort(sample.begin(), sample.end());
    return Distribution(make_impl(Empirical{std::move(sample)}));
}

Distribution Distribution::piecewise_linear_cdf(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw parameter_error("piecewise_linear_cdf: need matching knot vectors of size >= 2");
    for (std::size_t k = 1; k < xs.size(); ++k) {
        if (!(xs[k] > xs[k - 1])) throw parameter_error("piecewise_linear_cdf: x knots must increase strictly");
        if (ys[k] < ys[k - 1] - 1e-12) throw parameter_error("piecewise_linear_cdf: cdf values must be nondecreasing");
    }
    if (std::fabs(ys.front()) > 1e-9 || std::fabs(ys.back() - 1.0) > 1e-9)
        throw parameter_error("piecewise_linear_cdf: cdf must run from 0 to 1");
    ys.front() = 0.0;
    ys.back() = 1.0;
    for (std::size_t k = 1; k < ys.size(); ++k) ys[k] = std::max(ys[k], ys[k - 1]);
    return Distribution(make_impl(Piecewise{std::move(xs), std::move(ys)}));
}

Distribution::Kind Distribution::kind() const {
    return static_cast<Kind>(impl_->v.index());
}

double Distribution::cdf(double x) const { return impl_cdf(*impl_, x); }
double Distribution::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw parameter_error("quantile: p must lie in [0,1]");
    return impl_quantile(*impl_, p);
}
double Distribution::density(double x) const { return impl_density(*impl_, x); }
bool Distribution::is_continuous() const { return impl_continuous(*impl_); }

std::optional<std::tuple<double, Distribution, Distribution>> Distribution::as_mixture() const {
    if (const auto* m = std::get_if<Mixture>(&impl_->v))
        return std::make_tuple(m->w, Distribution(m->left), Distribution(m->right));
    return std::nullopt;
}

}  // namespace trimkd
