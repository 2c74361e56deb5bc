#include "trimkd/rng.hpp"

#include <cmath>

#include "trimkd/errors.hpp"
#include "trimkd/special.hpp"

namespace trimkd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

double Rng::normal() { return special::normal_quantile(uniform()); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0xD1B54A32D192ED03ull + 1));
}

Rng stream_rng(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

double sample(const Distribution& model, Rng& rng) {
    // Mixtures draw a component first; the generic route would bisect the
    // mixture cdf on every draw.
    if (auto mix = model.as_mixture()) {
        const auto& [w, left, right] = *mix;
        return rng.uniform() < w ? sample(left, rng) : sample(right, rng);
    }
    return model.quantile(rng.uniform());
}

std::vector<double> sample_vector(const Distribution& model, std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sample(model, rng);
    return out;
}

}  // namespace trimkd
