#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "trimkd/distributions.hpp"

namespace trimkd::test_util {

// Step-function grid induced by a transformed sample: node 0 carries the
// right limit, interior nodes both one-sided values (duplicated t), node 1
// the left value. Exact encoding of the empirical objective for the
// band-feasibility oracle.
inline std::pair<std::vector<double>, std::vector<double>> step_grid(std::vector<double> y_sorted) {
    const std::size_t n = y_sorted.size();
    std::vector<double> t, g;
    t.reserve(2 * n);
    g.reserve(2 * n);
    t.push_back(0.0);
    g.push_back(y_sorted[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const double ti = static_cast<double>(i) / static_cast<double>(n);
        t.push_back(ti);
        g.push_back(y_sorted[i - 1]);
        t.push_back(ti);
        g.push_back(y_sorted[i]);
    }
    t.push_back(1.0);
    g.push_back(y_sorted[n - 1]);
    return {std::move(t), std::move(g)};
}

inline std::vector<double> transformed_sorted(const std::vector<double>& sample,
                                              const Distribution& f0) {
    std::vector<double> y(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) y[i] = f0.cdf(sample[i]);
    std::sort(y.begin(), y.end());
    return y;
}

}  // namespace trimkd::test_util
