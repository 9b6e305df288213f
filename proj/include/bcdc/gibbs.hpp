#pragma once

// Posterior Gibbs sampler over (z, xi, eta) given the network and covariates.
//
// One iteration is a systematic scan of z (node order 0..n-1, or a random
// permutation when random_scan is set), followed by the conjugate center
// refresh and the Beta connectivity refresh. New communities are born in
// update_z and empty ones are removed on the spot, so the state always has
// dense labels 0..L-1; canonical (first-appearance) order is restored after
// every scan.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bcdc/partition_prior.hpp"
#include "bcdc/random.hpp"
#include "bcdc/sbm_core.hpp"

namespace bcdc {

struct SamplerState {
    std::vector<int> z;
    std::vector<int> sizes;
    std::vector<ClusterCenter> centers;
    SquareMatrix<double> eta;
    BlockCounts counts;

    // log(eta) and log(1 - eta), kept in sync with eta.
    SquareMatrix<double> log_eta;
    SquareMatrix<double> log1m_eta;

    int num_clusters() const { return static_cast<int>(sizes.size()); }
    Partition partition() const { return Partition(z); }
};

/// Builds a state from a partition: counts from scratch, then centers and
/// connectivities drawn from their full conditionals.
SamplerState make_state(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                        const Partition& z, Rng& rng);

/// CRP(alpha) draw of the initial labels.
Partition init_crp(int n, double alpha, std::uint64_t seed);

/// Log weight of placing node i into a cluster with prior weight psi, center
/// `center`, and connectivity row (log eta_k., log(1 - eta_k.)).
double z_log_weight(double log_psi, const CovariateSet& x, int i, const ClusterCenter& center,
                    std::span<const double> log_eta_row, std::span<const double> log1m_eta_row,
                    const NodeCounts& nc, const Hyperparams& hp);

/// Resamples z_i, with community birth and death. Counts are updated
/// incrementally.
void update_z(int i, SamplerState& state, const Network& net, const CovariateSet& x,
              const Hyperparams& hp, Rng& rng);

/// Restores first-appearance label order, permuting all per-cluster state.
void canonicalize_state(SamplerState& state);

void update_xi(SamplerState& state, const CovariateSet& x, const Hyperparams& hp, Rng& rng);
void update_eta(SamplerState& state, const Hyperparams& hp, Rng& rng);

/// Additive pieces of the unnormalized log joint density.
struct LogJointParts {
    double likelihood = 0;    // log p(A | eta, z) over observed dyads
    double cohesion = 0;      // sum_l log c(S_l)
    double kernel = 0;        // sum_j log q(x_j | xi_{z_j})
    double center_prior = 0;  // sum_l log nu(xi_l)
    double eta_prior = 0;     // sum_{k<=l} log Beta(eta_kl; beta, beta)

    double total() const { return likelihood + cohesion + kernel + center_prior + eta_prior; }
};

LogJointParts log_joint_parts(const SamplerState& state, const Network& net, const CovariateSet& x,
                              const Hyperparams& hp);
double log_joint(const SamplerState& state, const Network& net, const CovariateSet& x,
                 const Hyperparams& hp);

/// log p(z | A, x) up to a constant, with xi and eta integrated out:
/// sum_l [log g(S_l) + log c(S_l)] + sum_{k<=l} log B(M + beta, N - M + beta) / B(beta, beta).
double log_collapsed_posterior(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                               const Partition& z);

/// Empty string when the cached counts, dimensions, and eta range are valid;
/// otherwise a description of the first problem found.
std::string check_state(const SamplerState& state, const Network& net);

struct ChainConfig {
    int iters = 1000;
    int burn_in = -1;  // negative: iters / 2
    int thin = 1;
    std::uint64_t seed = 1;
    bool random_scan = false;

    int effective_burn_in() const { return burn_in < 0 ? iters / 2 : burn_in; }
    /// Throws std::invalid_argument on iters <= burn_in or thin < 1.
    void validate() const;
};

struct TraceSample {
    int iter;  // 1-based iteration index
    Partition z;
    double log_joint;

    int num_clusters() const { return z.num_clusters(); }
};

struct ChainTrace {
    std::vector<TraceSample> samples;
    ChainConfig config;
};

struct FitResult {
    Partition point_estimate;
    double point_log_joint = 0;
    std::map<int, int> num_clusters_posterior;  // L -> count over retained samples
    ChainTrace trace;

    /// Most frequent L (smallest on ties).
    int mode_num_clusters() const;
};

/// Runs one chain. The point estimate is the retained sample with the
/// largest log joint.
FitResult run_chain(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                    const ChainConfig& config);

/// All set partitions of [n] in canonical form (restricted growth strings).
std::vector<Partition> enumerate_partitions(int n);

struct PartitionProbability {
    Partition z;
    double prob;
};

/// Exact posterior over partitions by enumeration; n <= 8.
std::vector<PartitionProbability> exact_posterior(const Network& net, const CovariateSet& x,
                                                  const Hyperparams& hp);

}  // namespace bcdc
