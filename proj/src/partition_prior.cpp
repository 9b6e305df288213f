#include "bcdc/partition_prior.hpp"

#include <algorithm>
#include <cmath>

namespace bcdc {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)

double log_normal_pdf(double x, double mean, double var) {
    double d = x - mean;
    return -0.5 * (kLog2Pi + std::log(var)) - 0.5 * d * d / var;
}

// Removes cluster `c` from a 0-based label vector by shifting later labels down.
void drop_label(std::vector<int>& labels, int c) {
    for (int& l : labels)
        if (l > c) --l;
}

}  // namespace

double log_cohesion(int size, double alpha) {
    if (size <= 0) return 0.0;
    return std::log(alpha) + std::lgamma(static_cast<double>(size));
}

double log_q(const CovariateSet& x, int i, const ClusterCenter& center, const Hyperparams& hp) {
    double out = 0;
    const int p = x.num_continuous();
    if (p > 0) {
        auto xi = x.continuous(i);
        double sq = 0;
        for (int d = 0; d < p; ++d) {
            double diff = xi[d] - center.mean[d];
            sq += diff * diff;
        }
        out += -0.5 * p * (kLog2Pi + std::log(hp.s2)) - 0.5 * sq / hp.s2;
    }
    auto codes = x.categorical(i);
    for (std::size_t r = 0; r < codes.size(); ++r)
        out += std::log(std::max(center.probs[r][codes[r]], kProbFloor));
    return out;
}

double log_nu(const CovariateSet& x, const ClusterCenter& center, const Hyperparams& hp) {
    double out = 0;
    for (int d = 0; d < x.num_continuous(); ++d) out += log_normal_pdf(center.mean[d], 0.0, hp.tau2);
    const auto& arity = x.arity();
    for (std::size_t r = 0; r < arity.size(); ++r) {
        const double a = arity[r];
        out += std::lgamma(a * hp.gamma) - a * std::lgamma(hp.gamma);
        for (double v : center.probs[r]) out += (hp.gamma - 1.0) * std::log(std::max(v, kProbFloor));
    }
    return out;
}

double log_g(std::span<const int> members, const CovariateSet& x, const Hyperparams& hp) {
    const double m = static_cast<double>(members.size());
    if (members.empty()) return 0.0;
    double out = 0;

    // Each coordinate: (v_j) ~ N(0, s2 I + tau2 11^T).
    const int p = x.num_continuous();
    if (p > 0) {
        const double denom = hp.s2 + m * hp.tau2;
        const double log_det = (m - 1) * std::log(hp.s2) + std::log(denom);
        for (int d = 0; d < p; ++d) {
            double sum = 0, sumsq = 0;
            for (int i : members) {
                double v = x.continuous(i)[d];
                sum += v;
                sumsq += v * v;
            }
            double quad = (sumsq - hp.tau2 * sum * sum / denom) / hp.s2;
            out += -0.5 * m * kLog2Pi - 0.5 * log_det - 0.5 * quad;
        }
    }

    // Dirichlet-multinomial probability of the observed code sequence.
    const auto& arity = x.arity();
    std::vector<int> counts;
    for (std::size_t r = 0; r < arity.size(); ++r) {
        counts.assign(arity[r], 0);
        for (int i : members) ++counts[x.categorical(i)[r]];
        const double a = arity[r];
        out += std::lgamma(a * hp.gamma) - std::lgamma(a * hp.gamma + m);
        for (int c : counts)
            if (c > 0) out += std::lgamma(hp.gamma + c) - std::lgamma(hp.gamma);
    }
    return out;
}

CovariateStats::CovariateStats(const CovariateSet& x)
    : sum_(x.num_continuous(), 0.0), cat_counts_(x.num_categorical()) {
    for (int r = 0; r < x.num_categorical(); ++r) cat_counts_[r].assign(x.arity()[r], 0);
}

void CovariateStats::add(const CovariateSet& x, int i) {
    ++count_;
    auto v = x.continuous(i);
    for (std::size_t d = 0; d < sum_.size(); ++d) sum_[d] += v[d];
    auto codes = x.categorical(i);
    for (std::size_t r = 0; r < codes.size(); ++r) ++cat_counts_[r][codes[r]];
}

void CovariateStats::remove(const CovariateSet& x, int i) {
    --count_;
    auto v = x.continuous(i);
    for (std::size_t d = 0; d < sum_.size(); ++d) sum_[d] -= v[d];
    auto codes = x.categorical(i);
    for (std::size_t r = 0; r < codes.size(); ++r) --cat_counts_[r][codes[r]];
}

double CovariateStats::log_predictive(const CovariateSet& x, int i, const Hyperparams& hp) const {
    double out = 0;
    const double m = count_;
    if (!sum_.empty()) {
        const double denom = m * hp.tau2 + hp.s2;
        const double post_var = hp.s2 * hp.tau2 / denom;
        auto v = x.continuous(i);
        for (std::size_t d = 0; d < sum_.size(); ++d)
            out += log_normal_pdf(v[d], hp.tau2 * sum_[d] / denom, hp.s2 + post_var);
    }
    auto codes = x.categorical(i);
    for (std::size_t r = 0; r < codes.size(); ++r) {
        const double a = static_cast<double>(cat_counts_[r].size());
        out += std::log((hp.gamma + cat_counts_[r][codes[r]]) / (a * hp.gamma + m));
    }
    return out;
}

CenterPosterior center_posterior(std::span<const int> members, const CovariateSet& x,
                                 const Hyperparams& hp) {
    CenterPosterior post;
    const double m = static_cast<double>(members.size());
    const int p = x.num_continuous();
    const double denom = m * hp.tau2 + hp.s2;
    post.mean.assign(p, 0.0);
    for (int i : members) {
        auto v = x.continuous(i);
        for (int d = 0; d < p; ++d) post.mean[d] += v[d];
    }
    for (double& v : post.mean) v *= hp.tau2 / denom;
    post.var = hp.s2 * hp.tau2 / denom;

    const auto& arity = x.arity();
    post.concentration.resize(arity.size());
    for (std::size_t r = 0; r < arity.size(); ++r) {
        post.concentration[r].assign(arity[r], hp.gamma);
        for (int i : members) post.concentration[r][x.categorical(i)[r]] += 1.0;
    }
    return post;
}

ClusterCenter draw_center(const CenterPosterior& post, Rng& rng) {
    ClusterCenter c;
    c.mean.resize(post.mean.size());
    const double sd = std::sqrt(post.var);
    for (std::size_t d = 0; d < post.mean.size(); ++d) c.mean[d] = sample_normal(rng, post.mean[d], sd);
    c.probs.reserve(post.concentration.size());
    for (const auto& conc : post.concentration) c.probs.push_back(sample_dirichlet(rng, conc));
    return c;
}

ClusterCenter draw_center_prior(const CovariateSet& x, const Hyperparams& hp, Rng& rng) {
    ClusterCenter c;
    const double sd = std::sqrt(hp.tau2);
    c.mean.resize(x.num_continuous());
    for (double& v : c.mean) v = sample_normal(rng, 0.0, sd);
    for (int a : x.arity()) {
        std::vector<double> conc(a, hp.gamma);
        c.probs.push_back(sample_dirichlet(rng, conc));
    }
    return c;
}

std::vector<double> prior_weights(std::span<const int> sizes, double alpha) {
    std::vector<double> psi(sizes.begin(), sizes.end());
    psi.push_back(alpha);
    return psi;
}

namespace {

std::vector<CovariateStats> cluster_stats(std::span<const int> labels, int num_clusters,
                                          const CovariateSet& x) {
    std::vector<CovariateStats> stats(num_clusters, CovariateStats(x));
    for (int j = 0; j < static_cast<int>(labels.size()); ++j)
        if (labels[j] >= 0) stats[labels[j]].add(x, j);
    return stats;
}

std::vector<double> collapsed_log_weights(int i, std::span<const CovariateStats> stats,
                                          const CovariateStats& empty, const CovariateSet& x,
                                          const Hyperparams& hp) {
    const int L = static_cast<int>(stats.size());
    std::vector<double> logw(L + 1);
    for (int k = 0; k < L; ++k)
        logw[k] = std::log(static_cast<double>(stats[k].count())) + stats[k].log_predictive(x, i, hp);
    logw[L] = std::log(hp.alpha) + empty.log_predictive(x, i, hp);
    return logw;
}

}  // namespace

std::vector<double> collapsed_prior_probabilities(int i, std::span<const int> labels,
                                                  int num_clusters, const CovariateSet& x,
                                                  const Hyperparams& hp) {
    auto stats = cluster_stats(labels, num_clusters, x);
    auto w = collapsed_log_weights(i, stats, CovariateStats(x), x, hp);
    normalize_log_weights(w);
    return w;
}

int prior_gibbs_collapsed_step(int i, std::span<const int> labels, int num_clusters,
                               const CovariateSet& x, const Hyperparams& hp, Rng& rng) {
    auto stats = cluster_stats(labels, num_clusters, x);
    return sample_log_categorical(rng, collapsed_log_weights(i, stats, CovariateStats(x), x, hp));
}

AuxStepResult prior_gibbs_aux_step(int i, std::span<const int> labels, int num_clusters,
                                   std::span<const ClusterCenter> centers, const CovariateSet& x,
                                   const Hyperparams& hp, Rng& rng) {
    std::vector<int> sizes(num_clusters, 0);
    for (int l : labels)
        if (l >= 0) ++sizes[l];
    AuxStepResult res{0, draw_center_prior(x, hp, rng)};
    std::vector<double> logw(num_clusters + 1);
    for (int k = 0; k < num_clusters; ++k)
        logw[k] = std::log(static_cast<double>(sizes[k])) + log_q(x, i, centers[k], hp);
    logw[num_clusters] = std::log(hp.alpha) + log_q(x, i, res.fresh, hp);
    res.label = sample_log_categorical(rng, logw);
    return res;
}

Partition sample_crp(int n, double alpha, Rng& rng) {
    std::vector<int> labels(n);
    std::vector<int> sizes;
    std::vector<double> logw;
    for (int i = 0; i < n; ++i) {
        logw.resize(sizes.size() + 1);
        for (std::size_t k = 0; k < sizes.size(); ++k) logw[k] = std::log(static_cast<double>(sizes[k]));
        logw.back() = std::log(alpha);
        int k = sample_log_categorical(rng, logw);
        if (k == static_cast<int>(sizes.size())) sizes.push_back(0);
        ++sizes[k];
        labels[i] = k;
    }
    return Partition(labels);
}

std::vector<Partition> sample_prior(int n, const CovariateSet& x, const Hyperparams& hp, int iters,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> labels = sample_crp(n, hp.alpha, rng).labels();
    int L = n > 0 ? *std::max_element(labels.begin(), labels.end()) + 1 : 0;
    auto stats = cluster_stats(labels, L, x);
    const CovariateStats empty(x);

    std::vector<Partition> out;
    out.reserve(iters);
    for (int t = 0; t < iters; ++t) {
        for (int i = 0; i < n; ++i) {
            int c = labels[i];
            stats[c].remove(x, i);
            labels[i] = kExcluded;
            if (stats[c].count() == 0) {
                stats.erase(stats.begin() + c);
                drop_label(labels, c);
            }
            auto logw = collapsed_log_weights(i, stats, empty, x, hp);
            int k = sample_log_categorical(rng, logw);
            if (k == static_cast<int>(stats.size())) stats.push_back(empty);
            stats[k].add(x, i);
            labels[i] = k;
        }
        Partition canon(labels);
        // Reorder the cluster stats to match the canonical labels.
        std::vector<CovariateStats> reordered(stats.size());
        for (int i = 0; i < n; ++i) reordered[canon[i]] = stats[labels[i]];
        stats = std::move(reordered);
        labels = canon.labels();
        out.push_back(std::move(canon));
    }
    return out;
}

std::vector<Partition> sample_prior_aux(int n, const CovariateSet& x, const Hyperparams& hp,
                                        int iters, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> labels = sample_crp(n, hp.alpha, rng).labels();
    int L = n > 0 ? *std::max_element(labels.begin(), labels.end()) + 1 : 0;
    std::vector<int> sizes(L, 0);
    for (int l : labels) ++sizes[l];

    auto refresh = [&](std::vector<ClusterCenter>& centers) {
        const int clusters = static_cast<int>(sizes.size());
        std::vector<std::vector<int>> members(clusters);
        for (int j = 0; j < n; ++j) members[labels[j]].push_back(j);
        centers.clear();
        for (int k = 0; k < clusters; ++k)
            centers.push_back(draw_center(center_posterior(members[k], x, hp), rng));
    };
    std::vector<ClusterCenter> centers;
    refresh(centers);

    std::vector<Partition> out;
    out.reserve(iters);
    std::vector<double> logw;
    for (int t = 0; t < iters; ++t) {
        for (int i = 0; i < n; ++i) {
            const int c = labels[i];
            --sizes[c];
            const bool singleton = sizes[c] == 0;
            const int clusters = static_cast<int>(sizes.size());
            // A singleton keeps its own center as the new-cluster candidate;
            // otherwise a fresh center is drawn from nu.
            ClusterCenter fresh;
            if (!singleton) fresh = draw_center_prior(x, hp, rng);
            logw.assign(clusters + (singleton ? 0 : 1), 0.0);
            for (int k = 0; k < clusters; ++k) {
                double psi = sizes[k] > 0 ? static_cast<double>(sizes[k]) : hp.alpha;
                logw[k] = std::log(psi) + log_q(x, i, centers[k], hp);
            }
            if (!singleton) logw[clusters] = std::log(hp.alpha) + log_q(x, i, fresh, hp);
            int k = sample_log_categorical(rng, logw);
            if (k == clusters) {
                sizes.push_back(0);
                centers.push_back(std::move(fresh));
            }
            ++sizes[k];
            labels[i] = k;
            if (singleton && k != c) {
                sizes.erase(sizes.begin() + c);
                centers.erase(centers.begin() + c);
                drop_label(labels, c);
            }
        }
        Partition canon(labels);
        labels = canon.labels();
        sizes = canon.cluster_sizes();
        refresh(centers);
        out.push_back(std::move(canon));
    }
    return out;
}

}  // namespace bcdc
