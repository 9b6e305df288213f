#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace bcdc {

using Rng = std::mt19937_64;

/// Counter-based seed splitting: splitmix64 applied to seed + golden * (index + 1).
/// Used for replicate, chain, and sub-stream seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

double sample_uniform(Rng& rng);
double sample_normal(Rng& rng, double mean, double sd);
double sample_gamma(Rng& rng, double shape);
/// Beta(a, b) via two gammas, clamped into the open interval (0, 1).
double sample_beta(Rng& rng, double a, double b);
std::vector<double> sample_dirichlet(Rng& rng, std::span<const double> conc);

/// Index drawn with probability proportional to exp(log_weights[k]).
/// Entries may be -inf; at least one must be finite.
int sample_log_categorical(Rng& rng, std::span<const double> log_weights);

/// exp-normalizes in place with max subtraction.
void normalize_log_weights(std::span<double> log_weights);

}  // namespace bcdc
