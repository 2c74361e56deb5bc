#pragma once

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace trimkd {

// A law on the real line exposing cdf, quantile (left-continuous inverse)
// and, where available, a density. Two-component mixtures nest arbitrarily.
// Instances are immutable values and safe to share across threads.
class Distribution {
public:
    enum class Kind { uniform, normal, logistic, beta, mixture, empirical, piecewise_linear_cdf };

    static Distribution uniform(double a, double b);
    static Distribution normal(double mu, double sigma);
    static Distribution logistic(double location, double scale);
    static Distribution beta(double p, double q);
    // w * left + (1-w) * right
    static Distribution mixture(double w, Distribution left, Distribution right);
    static Distribution empirical(std::vector<double> sample);
    // Continuous piecewise linear cdf through (x_k, y_k); x strictly
    // increasing, y nondecreasing from 0 to 1.
    static Distribution piecewise_linear_cdf(std::vector<double> xs, std::vector<double> ys);

    Kind kind() const;

    double cdf(double x) const;
    // inf{x : p <= F(x)}. For p=0/1 on unbounded support returns -inf/+inf.
    double quantile(double p) const;
    double density(double x) const;

    // True when the cdf has no atoms.
    bool is_continuous() const;

    // (w, left, right) when this law is a mixture.
    std::optional<std::tuple<double, Distribution, Distribution>> as_mixture() const;

    struct Impl;  // opaque; defined in the implementation file

private:
    explicit Distribution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace trimkd
