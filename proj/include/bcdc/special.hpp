#pragma once

#include <cmath>

namespace bcdc {

/// log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b).
inline double log_beta_fn(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace bcdc
