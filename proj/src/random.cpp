#include "bcdc/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcdc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double sample_uniform(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

double sample_normal(Rng& rng, double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(rng);
}

double sample_gamma(Rng& rng, double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(rng);
}

double sample_beta(Rng& rng, double a, double b) {
    constexpr double lo = std::numeric_limits<double>::min();
    constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
    double x = sample_gamma(rng, a);
    double y = sample_gamma(rng, b);
    double v = (x + y > 0) ? x / (x + y) : 0.5;
    return std::clamp(v, lo, hi);
}

std::vector<double> sample_dirichlet(Rng& rng, std::span<const double> conc) {
    std::vector<double> out(conc.size());
    double total = 0;
    for (std::size_t c = 0; c < conc.size(); ++c) total += out[c] = sample_gamma(rng, conc[c]);
    if (total <= 0) {
        // All gammas underflowed (tiny concentrations); fall back to one-hot on the max concentration.
        std::fill(out.begin(), out.end(), 0.0);
        out[std::max_element(conc.begin(), conc.end()) - conc.begin()] = 1.0;
        return out;
    }
    for (double& v : out) v /= total;
    return out;
}

void normalize_log_weights(std::span<double> log_weights) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double w : log_weights) mx = std::max(mx, w);
    if (!std::isfinite(mx)) throw std::domain_error("no finite log weight");
    double total = 0;
    for (double& w : log_weights) total += (w = std::exp(w - mx));
    for (double& w : log_weights) w /= total;
}

int sample_log_categorical(Rng& rng, std::span<const double> log_weights) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double w : log_weights) mx = std::max(mx, w);
    if (!std::isfinite(mx)) throw std::domain_error("no finite log weight");
    double total = 0;
    for (double w : log_weights) total += std::exp(w - mx);
    double u = sample_uniform(rng) * total;
    const int k = static_cast<int>(log_weights.size());
    int last = 0;
    for (int j = 0; j < k; ++j) {
        double p = std::exp(log_weights[j] - mx);
        if (p <= 0) continue;
        last = j;
        if (u < p) return j;
        u -= p;
    }
    return last;
}

}  // namespace bcdc
