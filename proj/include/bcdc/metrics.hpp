#pragma once

#include <cstdint>
#include <vector>

#include "bcdc/sbm_core.hpp"

namespace bcdc {

/// Co-occurrence counts between two labelings of the same nodes.
struct Confusion {
    std::vector<std::vector<std::int64_t>> table;
    std::int64_t n = 0;
};

Confusion confusion(const Partition& a, const Partition& b);

/// Symmetric uncertainty 2 I(X, Y) / (H(X) + H(Y)), natural logs.
/// Two single-cluster labelings score 1. Throws std::invalid_argument on a
/// length mismatch or empty input.
double nmi(const Partition& a, const Partition& b);

/// -2 log of the SBM likelihood integrated over uniform priors on the
/// connectivities and the label proportions.
double bic_exact(const Network& net, const Partition& z);

/// -2 log p(A | eta_hat, pi_hat, z) + c(K) log C(n, 2), c(K) = K(K+1)/2 + K - 1.
double bic_approx(const Network& net, const Partition& z);

/// Degrees of freedom c(K) used by bic_approx.
inline int bic_degrees_of_freedom(int K) { return K * (K + 1) / 2 + (K - 1); }

}  // namespace bcdc
