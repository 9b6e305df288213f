#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "bcdc/gibbs.hpp"
#include "bcdc/partition_prior.hpp"
#include "bcdc/random.hpp"
#include "bcdc/sbm_core.hpp"

namespace bcdc::testing {

using Law = std::map<Partition, double>;

inline double tv_distance(const Law& a, const Law& b) {
    double tv = 0;
    for (const auto& [z, p] : a) {
        auto it = b.find(z);
        tv += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [z, p] : b)
        if (!a.contains(z)) tv += p;
    return tv / 2;
}

template <class Range>
Law empirical_law(const Range& partitions) {
    Law law;
    double total = 0;
    for (const auto& z : partitions) {
        law[z] += 1;
        total += 1;
    }
    for (auto& [z, p] : law) p /= total;
    return law;
}

inline Law empirical_law(const ChainTrace& trace) {
    std::vector<Partition> zs;
    zs.reserve(trace.samples.size());
    for (const auto& s : trace.samples) zs.push_back(s.z);
    return empirical_law(zs);
}

inline Law exact_law(const std::vector<PartitionProbability>& probs) {
    Law law;
    for (const auto& pp : probs) law[pp.z] = pp.prob;
    return law;
}

/// Exact CRP(alpha) probability of a partition.
inline double crp_probability(const Partition& z, double alpha) {
    double lp = 0;
    for (int s : z.cluster_sizes()) lp += std::log(alpha) + std::lgamma(s);
    for (int i = 0; i < z.size(); ++i) lp -= std::log(alpha + i);
    return std::exp(lp);
}

inline Law crp_law(int n, double alpha) {
    Law law;
    for (const auto& z : enumerate_partitions(n)) law[z] = crp_probability(z, alpha);
    return law;
}

inline double crp_expected_clusters(int n, double alpha) {
    double e = 0;
    for (int i = 0; i < n; ++i) e += alpha / (alpha + i);
    return e;
}

/// Random small instance: SBM-ish network plus one continuous and one
/// categorical covariate.
struct Instance {
    Network net;
    CovariateSet x;
};

inline Instance random_mixed_instance(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    const double p = 0.2 + 0.6 * sample_uniform(rng);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sample_uniform(rng) < p) edges.emplace_back(i, j);
    std::vector<double> cont(n);
    std::vector<int> cat(n);
    const int arity = 2 + static_cast<int>(sample_uniform(rng) * 2);
    for (int i = 0; i < n; ++i) {
        cont[i] = sample_normal(rng, 0, 1.5);
        cat[i] = std::min(arity - 1, static_cast<int>(sample_uniform(rng) * arity));
    }
    return {Network::from_edges(n, edges), CovariateSet(n, 1, cont, {arity}, cat)};
}

/// Trapezoid-rule value of the Gaussian evidence
///   ∫ prod_{i in S} N(x_i; xi, s2 I) N(xi; 0, tau2 I) dxi
/// over a box of +-12 prior sd, for one or two continuous dimensions.
inline double gaussian_evidence_quadrature(std::span<const int> members, const CovariateSet& x,
                                           const Hyperparams& hp, int steps = 4000) {
    const int p = x.num_continuous();
    const double lim = 12 * std::sqrt(hp.tau2);
    const double h = 2 * lim / steps;
    auto log_norm = [](double v, double var) { return -0.5 * std::log(2 * M_PI * var) - v * v / (2 * var); };
    auto integrand = [&](double a, double b) {
        double lf = log_norm(a, hp.tau2) + (p == 2 ? log_norm(b, hp.tau2) : 0.0);
        for (int i : members) {
            lf += log_norm(x.continuous(i)[0] - a, hp.s2);
            if (p == 2) lf += log_norm(x.continuous(i)[1] - b, hp.s2);
        }
        return std::exp(lf);
    };
    auto weight = [&](int k) { return k == 0 || k == steps ? 0.5 : 1.0; };
    long double total = 0;
    if (p == 1) {
        for (int k = 0; k <= steps; ++k) total += weight(k) * integrand(-lim + k * h, 0);
        return static_cast<double>(total * h);
    }
    for (int k = 0; k <= steps; ++k)
        for (int l = 0; l <= steps; ++l)
            total += weight(k) * weight(l) * integrand(-lim + k * h, -lim + l * h);
    return static_cast<double>(total * h * h);
}

/// Dirichlet-multinomial probability of the members' categorical codes, as a
/// product of sequential predictive ratios.
inline double dirichlet_multinomial_exact(std::span<const int> members, const CovariateSet& x,
                                          const Hyperparams& hp) {
    long double prob = 1;
    for (int r = 0; r < x.num_categorical(); ++r) {
        const int a = x.arity()[r];
        std::vector<int> counts(a, 0);
        int seen = 0;
        for (int i : members) {
            const int c = x.categorical(i)[r];
            prob *= (hp.gamma + counts[c]) / (static_cast<long double>(a) * hp.gamma + seen);
            ++counts[c];
            ++seen;
        }
    }
    return static_cast<double>(prob);
}

/// All subsets of {0..n-1} with 1..max_size members.
inline std::vector<std::vector<int>> small_subsets(int n, int max_size) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        if (static_cast<int>(s.size()) <= max_size) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace bcdc::testing
