#include "bcdc/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bcdc/special.hpp"

namespace bcdc {

namespace {

void set_eta(SamplerState& s, int k, int l, double v) {
    s.eta(k, l) = s.eta(l, k) = v;
    s.log_eta(k, l) = s.log_eta(l, k) = std::log(v);
    s.log1m_eta(k, l) = s.log1m_eta(l, k) = std::log1p(-v);
}

// Adds (sign = +1) or removes (sign = -1) node counts `nc` for cluster k.
void apply_node_counts(BlockCounts& bc, int k, const NodeCounts& nc, int sign) {
    const int L = bc.edges.dim();
    for (int l = 0; l < L; ++l) {
        bc.edges(k, l) += sign * nc.edges[l];
        bc.dyads(k, l) += sign * nc.dyads[l];
        if (l != k) {
            bc.edges(l, k) += sign * nc.edges[l];
            bc.dyads(l, k) += sign * nc.dyads[l];
        }
    }
}

void erase_cluster(SamplerState& s, int c) {
    s.sizes.erase(s.sizes.begin() + c);
    s.centers.erase(s.centers.begin() + c);
    s.eta.erase(c);
    s.log_eta.erase(c);
    s.log1m_eta.erase(c);
    s.counts.edges.erase(c);
    s.counts.dyads.erase(c);
    for (int& l : s.z)
        if (l > c) --l;
}

std::vector<std::vector<int>> members_of(const SamplerState& s) {
    std::vector<std::vector<int>> members(s.num_clusters());
    for (int j = 0; j < static_cast<int>(s.z.size()); ++j) members[s.z[j]].push_back(j);
    return members;
}

}  // namespace

SamplerState make_state(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                        const Partition& z, Rng& rng) {
    if (z.size() != net.num_nodes() || x.num_nodes() != net.num_nodes())
        throw std::invalid_argument("make_state: node counts of network, covariates, and partition differ");
    SamplerState s;
    s.z = z.labels();
    s.sizes = z.cluster_sizes();
    const int L = z.num_clusters();
    s.centers.resize(L);
    s.eta = SquareMatrix<double>(L, 0.5);
    s.log_eta = SquareMatrix<double>(L, std::log(0.5));
    s.log1m_eta = SquareMatrix<double>(L, std::log(0.5));
    s.counts = block_counts(net, z);
    update_xi(s, x, hp, rng);
    update_eta(s, hp, rng);
    return s;
}

Partition init_crp(int n, double alpha, std::uint64_t seed) {
    Rng rng(seed);
    return sample_crp(n, alpha, rng);
}

double z_log_weight(double log_psi, const CovariateSet& x, int i, const ClusterCenter& center,
                    std::span<const double> log_eta_row, std::span<const double> log1m_eta_row,
                    const NodeCounts& nc, const Hyperparams& hp) {
    if (log_psi == -std::numeric_limits<double>::infinity()) return log_psi;
    double w = log_psi;
    if (!x.empty()) w += log_q(x, i, center, hp);
    const std::size_t L = nc.edges.size();
    for (std::size_t l = 0; l < L; ++l) {
        const auto e = static_cast<double>(nc.edges[l]);
        const auto d = static_cast<double>(nc.dyads[l]);
        if (d == 0) continue;
        w += e * log_eta_row[l] + (d - e) * log1m_eta_row[l];
    }
    return w;
}

void update_z(int i, SamplerState& s, const Network& net, const CovariateSet& x,
              const Hyperparams& hp, Rng& rng) {
    const int c = s.z[i];
    const int L = s.num_clusters();

    // Counts from i into the clusters of z_{-i}.
    --s.sizes[c];
    NodeCounts nc{std::vector<std::int64_t>(L, 0), std::vector<std::int64_t>(s.sizes.begin(), s.sizes.end())};
    for (int j : net.neighbors(i)) ++nc.edges[s.z[j]];
    for (int j : net.unobserved(i)) --nc.dyads[s.z[j]];
    apply_node_counts(s.counts, c, nc, -1);

    // A singleton's own cluster plays the role of the new-cluster candidate,
    // keeping its center and connectivities; otherwise a fresh candidate is
    // drawn from the priors.
    const bool singleton = s.sizes[c] == 0;
    const double log_alpha = std::log(hp.alpha);
    std::vector<double> logw(L + (singleton ? 0 : 1));
    for (int k = 0; k < L; ++k) {
        const double log_psi = s.sizes[k] > 0 ? std::log(static_cast<double>(s.sizes[k])) : log_alpha;
        logw[k] = z_log_weight(log_psi, x, i, s.centers[k], s.log_eta.row(k), s.log1m_eta.row(k), nc, hp);
    }

    ClusterCenter fresh;
    std::vector<double> fresh_eta, fresh_log, fresh_log1m;
    if (!singleton) {
        fresh = draw_center_prior(x, hp, rng);
        fresh_eta.resize(L);
        fresh_log.resize(L);
        fresh_log1m.resize(L);
        for (int l = 0; l < L; ++l) {
            fresh_eta[l] = sample_beta(rng, hp.beta, hp.beta);
            fresh_log[l] = std::log(fresh_eta[l]);
            fresh_log1m[l] = std::log1p(-fresh_eta[l]);
        }
        logw[L] = z_log_weight(log_alpha, x, i, fresh, fresh_log, fresh_log1m, nc, hp);
    }

    const int k = sample_log_categorical(rng, logw);
    if (k == L) {
        // Birth. The diagonal connectivity of the new block is drawn now that
        // the block exists.
        s.sizes.push_back(0);
        s.centers.push_back(std::move(fresh));
        s.eta.append(0.5);
        s.log_eta.append();
        s.log1m_eta.append();
        s.counts.edges.append(0);
        s.counts.dyads.append(0);
        for (int l = 0; l < L; ++l) set_eta(s, L, l, fresh_eta[l]);
        set_eta(s, L, L, sample_beta(rng, hp.beta, hp.beta));
        nc.edges.push_back(0);
        nc.dyads.push_back(0);
    }
    s.z[i] = k;
    ++s.sizes[k];
    apply_node_counts(s.counts, k, nc, +1);
    if (singleton && k != c) erase_cluster(s, c);
}

void canonicalize_state(SamplerState& s) {
    const int L = s.num_clusters();
    std::vector<int> order;  // new label -> old label
    std::vector<int> relabel(L, -1);
    order.reserve(L);
    for (int l : s.z)
        if (relabel[l] < 0) {
            relabel[l] = static_cast<int>(order.size());
            order.push_back(l);
        }
    bool identity = true;
    for (int k = 0; k < L; ++k) identity = identity && order[k] == k;
    if (identity) return;

    for (int& l : s.z) l = relabel[l];
    std::vector<int> sizes(L);
    std::vector<ClusterCenter> centers(L);
    for (int k = 0; k < L; ++k) {
        sizes[k] = s.sizes[order[k]];
        centers[k] = std::move(s.centers[order[k]]);
    }
    s.sizes = std::move(sizes);
    s.centers = std::move(centers);
    s.eta.permute(order);
    s.log_eta.permute(order);
    s.log1m_eta.permute(order);
    s.counts.edges.permute(order);
    s.counts.dyads.permute(order);
}

void update_xi(SamplerState& s, const CovariateSet& x, const Hyperparams& hp, Rng& rng) {
    if (x.empty()) {
        s.centers.assign(s.num_clusters(), ClusterCenter{});
        return;
    }
    auto members = members_of(s);
    for (int k = 0; k < s.num_clusters(); ++k)
        s.centers[k] = draw_center(center_posterior(members[k], x, hp), rng);
}

void update_eta(SamplerState& s, const Hyperparams& hp, Rng& rng) {
    const int L = s.num_clusters();
    for (int k = 0; k < L; ++k)
        for (int l = k; l < L; ++l) {
            const auto m = static_cast<double>(s.counts.edges(k, l));
            const auto d = static_cast<double>(s.counts.dyads(k, l));
            set_eta(s, k, l, sample_beta(rng, m + hp.beta, d - m + hp.beta));
        }
}

LogJointParts log_joint_parts(const SamplerState& s, const Network& net, const CovariateSet& x,
                              const Hyperparams& hp) {
    (void)net;
    LogJointParts parts;
    const int L = s.num_clusters();
    const double log_b0 = log_beta_fn(hp.beta, hp.beta);
    for (int k = 0; k < L; ++k) {
        parts.cohesion += log_cohesion(s.sizes[k], hp.alpha);
        if (!x.empty()) parts.center_prior += log_nu(x, s.centers[k], hp);
        for (int l = k; l < L; ++l) {
            const auto m = static_cast<double>(s.counts.edges(k, l));
            const auto d = static_cast<double>(s.counts.dyads(k, l));
            parts.likelihood += m * s.log_eta(k, l) + (d - m) * s.log1m_eta(k, l);
            parts.eta_prior += (hp.beta - 1.0) * (s.log_eta(k, l) + s.log1m_eta(k, l)) - log_b0;
        }
    }
    if (!x.empty())
        for (int j = 0; j < static_cast<int>(s.z.size()); ++j)
            parts.kernel += log_q(x, j, s.centers[s.z[j]], hp);
    return parts;
}

double log_joint(const SamplerState& s, const Network& net, const CovariateSet& x,
                 const Hyperparams& hp) {
    return log_joint_parts(s, net, x, hp).total();
}

double log_collapsed_posterior(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                               const Partition& z) {
    const int L = z.num_clusters();
    std::vector<std::vector<int>> members(L);
    for (int j = 0; j < z.size(); ++j) members[z[j]].push_back(j);
    double out = 0;
    for (const auto& m : members)
        out += log_g(m, x, hp) + log_cohesion(static_cast<int>(m.size()), hp.alpha);
    const BlockCounts bc = block_counts(net, z);
    const double log_b0 = log_beta_fn(hp.beta, hp.beta);
    for (int k = 0; k < L; ++k)
        for (int l = k; l < L; ++l) {
            const auto e = static_cast<double>(bc.edges(k, l));
            const auto d = static_cast<double>(bc.dyads(k, l));
            out += log_beta_fn(e + hp.beta, d - e + hp.beta) - log_b0;
        }
    return out;
}

std::string check_state(const SamplerState& s, const Network& net) {
    const int L = s.num_clusters();
    if (static_cast<int>(s.centers.size()) != L) return "centers size differs from L";
    if (s.eta.dim() != L || s.log_eta.dim() != L || s.log1m_eta.dim() != L) return "eta dimension differs from L";
    std::vector<int> sizes(L, 0);
    for (int l : s.z) {
        if (l < 0 || l >= L) return "label out of range";
        ++sizes[l];
    }
    if (sizes != s.sizes) return "cached cluster sizes are stale";
    for (int k = 0; k < L; ++k)
        if (sizes[k] == 0) return "empty cluster";
    if (!(block_counts(net, s.z, L) == s.counts)) return "cached block counts are stale";
    for (int k = 0; k < L; ++k)
        for (int l = 0; l < L; ++l) {
            double v = s.eta(k, l);
            if (!(v > 0 && v < 1)) return "eta outside (0, 1)";
            if (v != s.eta(l, k)) return "eta not symmetric";
            if (s.log_eta(k, l) != std::log(v)) return "log eta cache is stale";
        }
    return {};
}

void ChainConfig::validate() const {
    if (iters < 1) throw std::invalid_argument("iters must be >= 1");
    if (thin < 1) throw std::invalid_argument("thin must be >= 1");
    if (effective_burn_in() >= iters) throw std::invalid_argument("iters must exceed burn_in");
}

int FitResult::mode_num_clusters() const {
    int best = 0, count = -1;
    for (auto [L, c] : num_clusters_posterior)
        if (c > count) {
            best = L;
            count = c;
        }
    return best;
}

FitResult run_chain(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                    const ChainConfig& config) {
    config.validate();
    const int n = net.num_nodes();
    if (n < 1) throw std::invalid_argument("run_chain: empty network");
    Rng rng(config.seed);
    SamplerState s = make_state(net, x, hp, sample_crp(n, hp.alpha, rng), rng);

    FitResult res;
    res.trace.config = config;
    const int burn_in = config.effective_burn_in();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int t = 1; t <= config.iters; ++t) {
        if (config.random_scan) std::shuffle(order.begin(), order.end(), rng);
        for (int i : order) update_z(i, s, net, x, hp, rng);
        canonicalize_state(s);
        update_xi(s, x, hp, rng);
        update_eta(s, hp, rng);
        if (t > burn_in && (t - burn_in - 1) % config.thin == 0)
            res.trace.samples.push_back({t, s.partition(), log_joint(s, net, x, hp)});
    }

    std::size_t best = 0;
    for (std::size_t k = 0; k < res.trace.samples.size(); ++k) {
        const auto& smp = res.trace.samples[k];
        ++res.num_clusters_posterior[smp.num_clusters()];
        if (smp.log_joint > res.trace.samples[best].log_joint) best = k;
    }
    res.point_estimate = res.trace.samples[best].z;
    res.point_log_joint = res.trace.samples[best].log_joint;
    return res;
}

std::vector<Partition> enumerate_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int max_label) {
        if (pos == n) {
            out.emplace_back(rgs);
            return;
        }
        for (int l = 0; l <= max_label + 1; ++l) {
            rgs[pos] = l;
            rec(pos + 1, std::max(max_label, l));
        }
    };
    if (n == 0) return out;
    rgs[0] = 0;
    rec(1, 0);
    return out;
}

std::vector<PartitionProbability> exact_posterior(const Network& net, const CovariateSet& x,
                                                  const Hyperparams& hp) {
    const int n = net.num_nodes();
    if (n < 1 || n > 8) throw std::invalid_argument("exact_posterior: requires 1 <= n <= 8");
    auto parts = enumerate_partitions(n);
    std::vector<double> logp(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) logp[k] = log_collapsed_posterior(net, x, hp, parts[k]);
    normalize_log_weights(logp);
    std::vector<PartitionProbability> out;
    out.reserve(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) out.push_back({std::move(parts[k]), logp[k]});
    return out;
}

}  // namespace bcdc
