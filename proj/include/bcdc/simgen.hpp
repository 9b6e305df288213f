#pragma once

// Synthetic networks with covariates: planted-partition SBMs plus the
// continuous, categorical, mixed, sparse high-dimensional, and homophily
// covariate designs used for benchmarking.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bcdc/sbm_core.hpp"

namespace bcdc {

using Connectivity = SquareMatrix<double>;

/// eta_kl = p on the diagonal, r * p off it.
Connectivity planted_connectivity(int K, double p, double r);

/// Splits n by `ratios` with floor-then-largest-remainder rounding.
std::vector<int> block_sizes_by_ratio(int n, std::span<const double> ratios);

/// Contiguous labels: the first sizes[0] nodes in block 0, and so on.
Partition planted_labels(std::span<const int> sizes);

/// Independent Bernoulli(eta_{z_i z_j}) dyads for i < j.
Network sample_sbm(const Partition& z, const Connectivity& eta, std::uint64_t seed);

/// Expected mean degree (1/n) sum_i sum_{j != i} eta_{z_i z_j}.
double expected_average_degree(std::span<const int> sizes, const Connectivity& eta);

/// Two features: N(mu * sign_k, 1) signal (sign +1 for block 1, -1 for block 2)
/// and N(0, 1) noise. Requires exactly 2 blocks.
CovariateSet gen_continuous(const Partition& z, double mu, std::uint64_t seed);

/// Feature 1 = block label, feature 2 uniform on 3 codes. Requires 3 blocks.
CovariateSet gen_categorical_design1(const Partition& z, std::uint64_t seed);

/// Feature 1 ~ theta_block with theta_1, theta_2 ~ Dir(1_4); feature 2 uniform
/// on 4 codes. Requires 2 blocks.
CovariateSet gen_categorical_design2(const Partition& z, std::uint64_t seed);

/// Continuous N(+1, 1) for even 1-based blocks and N(-1, 1) for odd ones;
/// binary feature splitting blocks into first and second half. Requires even K.
CovariateSet gen_mixed(const Partition& z, std::uint64_t seed);

struct SimulatedData {
    Network net;
    CovariateSet x;
    Partition truth;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// Connectivity of the 3-block sparse design.
Connectivity sparse_connectivity();
/// Block sizes of the sparse design for n nodes (3:4:5).
std::vector<int> sparse_block_sizes(int n);

/// Sparse 3-block SBM on round(800 * scale) nodes with 100-dimensional
/// Gaussian covariates, only the first two dimensions informative.
SimulatedData gen_sparse_highdim(std::uint64_t seed, double scale = 1.0);

/// Edge probability P_{z_i z_j} + beta * 1{x_i = x_j}, clamped to [0, 1], with
/// a two-level covariate x drawn uniformly and independently of z. The truth
/// is the refined labeling by (z_i, x_i).
SimulatedData gen_homophily(const Partition& z, double beta, std::uint64_t seed, double p = 0.3,
                            double r = 0.7);

enum class Design { Continuous, Categorical1, Categorical2, Mixed, SparseHighDim, Homophily };

std::string design_name(Design d);
/// Throws std::invalid_argument for unknown names.
Design parse_design(const std::string& name);

/// Parameters of a full simulation; -1 / NaN entries take the design default.
struct DesignParams {
    Design design = Design::Continuous;
    int n = -1;
    double p = -1;
    double r = -1;
    double mu = 1.0;
    double homophily = 0.2;
    double scale = 1.0;

    /// Fills design defaults and validates ranges; throws std::invalid_argument.
    DesignParams resolved() const;
};

/// Generates network, covariates, and ground truth for one replicate.
SimulatedData simulate(const DesignParams& params, std::uint64_t seed);

}  // namespace bcdc
