#pragma once

// Covariate-dependent random partition prior
//
//   p(z | x) ∝ prod_l g(S_l | x) c(S_l),   c(S) = alpha * (|S| - 1)!,
//   g(S | x) = ∫ prod_{i in S} q(x_i | xi) nu(xi) dxi.
//
// Continuous covariates use q = N(xi, s2 I) with nu = N(0, tau2 I); each
// categorical feature r uses a categorical q with a Dir(gamma 1_{a_r}) prior.
// Mixed covariate sets multiply the two kernels. All quantities are logs.

#include <span>
#include <vector>

#include "bcdc/random.hpp"
#include "bcdc/sbm_core.hpp"

namespace bcdc {

/// Per-cluster covariate center: a Gaussian mean (length p) and one
/// probability vector per categorical feature.
struct ClusterCenter {
    std::vector<double> mean;
    std::vector<std::vector<double>> probs;
};

/// Floor applied to categorical probabilities before taking logs.
inline constexpr double kProbFloor = 1e-300;

/// log c(S) for |S| = size; 0 for the empty set.
double log_cohesion(int size, double alpha);

/// log q(x_i | center).
double log_q(const CovariateSet& x, int i, const ClusterCenter& center, const Hyperparams& hp);

/// log nu(center), the normalized prior density of a center.
double log_nu(const CovariateSet& x, const ClusterCenter& center, const Hyperparams& hp);

/// log g(S | x) in closed form (normal evidence times Dirichlet-multinomial).
double log_g(std::span<const int> members, const CovariateSet& x, const Hyperparams& hp);

/// Sufficient statistics of one cluster's covariates; gives the posterior
/// predictive log density log g(S ∪ {i}) - log g(S) in O(p + R).
class CovariateStats {
public:
    CovariateStats() = default;
    explicit CovariateStats(const CovariateSet& x);

    void add(const CovariateSet& x, int i);
    void remove(const CovariateSet& x, int i);
    int count() const { return count_; }

    double log_predictive(const CovariateSet& x, int i, const Hyperparams& hp) const;

private:
    int count_ = 0;
    std::vector<double> sum_;
    std::vector<std::vector<int>> cat_counts_;
};

/// Parameters of H_S, the conjugate posterior of a center given members S.
struct CenterPosterior {
    std::vector<double> mean;                       // Gaussian mean
    double var = 0;                                 // per-coordinate variance
    std::vector<std::vector<double>> concentration;  // Dirichlet parameters per feature
};

CenterPosterior center_posterior(std::span<const int> members, const CovariateSet& x,
                                 const Hyperparams& hp);

/// Draw from nu.
ClusterCenter draw_center_prior(const CovariateSet& x, const Hyperparams& hp, Rng& rng);
/// Draw from H_S.
ClusterCenter draw_center(const CenterPosterior& post, Rng& rng);

/// psi_k = |S_k| for k < L and alpha for the new-cluster slot k = L.
std::vector<double> prior_weights(std::span<const int> sizes, double alpha);

/// Probabilities p(z_i = k | z_{-i}, x), k in [0, L], via g-ratios.
/// `labels` holds z_{-i} in 0..L-1 with labels[i] == kExcluded.
std::vector<double> collapsed_prior_probabilities(int i, std::span<const int> labels,
                                                  int num_clusters, const CovariateSet& x,
                                                  const Hyperparams& hp);

int prior_gibbs_collapsed_step(int i, std::span<const int> labels, int num_clusters,
                               const CovariateSet& x, const Hyperparams& hp, Rng& rng);

struct AuxStepResult {
    int label;
    ClusterCenter fresh;  // the center drawn for the new-cluster slot
};

/// Auxiliary-variable step: draws xi_{L+1} ~ nu, then z_i ∝ psi_k q(x_i | xi_k).
AuxStepResult prior_gibbs_aux_step(int i, std::span<const int> labels, int num_clusters,
                                   std::span<const ClusterCenter> centers, const CovariateSet& x,
                                   const Hyperparams& hp, Rng& rng);

/// Sequential Chinese restaurant process draw, canonical labels.
Partition sample_crp(int n, double alpha, Rng& rng);

/// Systematic-scan collapsed Gibbs sampler on p(z | x), started from CRP(alpha).
/// Returns the partition after each of `iters` sweeps.
std::vector<Partition> sample_prior(int n, const CovariateSet& x, const Hyperparams& hp,
                                    int iters, std::uint64_t seed);

/// Same target, using the auxiliary-variable z-step plus conjugate center
/// refreshes after each sweep.
std::vector<Partition> sample_prior_aux(int n, const CovariateSet& x, const Hyperparams& hp,
                                        int iters, std::uint64_t seed);

}  // namespace bcdc
