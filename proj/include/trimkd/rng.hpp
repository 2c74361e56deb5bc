#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "trimkd/distributions.hpp"

namespace trimkd {

// Deterministic random stream. Replicate streams are derived from
// (seed, index) so Monte Carlo results do not depend on worker count or
// scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on (0,1), never exactly 0 or 1.
    double uniform() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    // Standard normal by quantile inversion.
    double normal();

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

private:
    std::mt19937_64 gen_;
};

// Stream for replicate `index` of experiment `seed`.
Rng stream_rng(std::uint64_t seed, std::uint64_t index);

// Derives a fresh 64-bit seed; used to split seeds hierarchically.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// One draw from `model` (inversion; mixtures pick a component first).
double sample(const Distribution& model, Rng& rng);

std::vector<double> sample_vector(const Distribution& model, std::size_t n, Rng& rng);

}  // namespace trimkd
