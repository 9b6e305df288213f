#include "bcdc/sbm_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bcdc {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

void check_pair(int n, int u, int v, const char* what) {
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw DataError(std::string(what) + ": node id out of range (" + std::to_string(u + 1) +
                        ", " + std::to_string(v + 1) + ")");
    if (u == v)
        throw DataError(std::string(what) + ": self-loop at node " + std::to_string(u + 1));
}

}  // namespace

Network Network::from_edges(int n, std::span<const std::pair<int, int>> edges,
                            std::span<const std::pair<int, int>> unobserved) {
    if (n < 0) throw DataError("negative node count");
    Network net;
    net.n_ = n;
    net.adj_.assign(n, {});
    net.hidden_.assign(n, {});

    std::vector<std::pair<int, int>> hidden;
    hidden.reserve(unobserved.size());
    for (auto [u, v] : unobserved) {
        check_pair(n, u, v, "mask");
        hidden.push_back(ordered(u, v));
    }
    std::sort(hidden.begin(), hidden.end());
    if (std::adjacent_find(hidden.begin(), hidden.end()) != hidden.end())
        throw DataError("mask: duplicate dyad");
    net.has_mask_ = !unobserved.empty();

    std::vector<std::pair<int, int>> all;
    all.reserve(edges.size());
    for (auto [u, v] : edges) {
        check_pair(n, u, v, "edge list");
        all.push_back(ordered(u, v));
    }
    std::sort(all.begin(), all.end());
    if (auto dup = std::adjacent_find(all.begin(), all.end()); dup != all.end())
        throw DataError("edge list: duplicate edge (" + std::to_string(dup->first + 1) + ", " +
                        std::to_string(dup->second + 1) + ")");

    for (auto e : all) {
        // Edge status is ignored where the dyad is unobserved.
        if (std::binary_search(hidden.begin(), hidden.end(), e)) continue;
        net.edges_.push_back(e);
        net.adj_[e.first].push_back(e.second);
        net.adj_[e.second].push_back(e.first);
    }
    for (auto [u, v] : hidden) {
        net.hidden_[u].push_back(v);
        net.hidden_[v].push_back(u);
    }
    for (auto& a : net.adj_) std::sort(a.begin(), a.end());
    for (auto& h : net.hidden_) std::sort(h.begin(), h.end());
    return net;
}

Network Network::fully_masked(int n) {
    std::vector<std::pair<int, int>> hidden;
    hidden.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) hidden.emplace_back(i, j);
    Network net = from_edges(n, {}, hidden);
    net.has_mask_ = true;
    return net;
}

bool Network::has_edge(int i, int j) const {
    const auto& a = adj_[i];
    return std::binary_search(a.begin(), a.end(), j);
}

bool Network::observed(int i, int j) const {
    if (i == j) return false;
    const auto& h = hidden_[i];
    return !std::binary_search(h.begin(), h.end(), j);
}

CovariateSet::CovariateSet(int n, int p, std::vector<double> continuous, std::vector<int> arity,
                           std::vector<int> categorical)
    : n_(n), p_(p), cont_(std::move(continuous)), arity_(std::move(arity)),
      cat_(std::move(categorical)) {
    if (n < 0 || p < 0) throw DataError("covariates: negative dimension");
    if (cont_.size() != static_cast<std::size_t>(n) * p)
        throw DataError("covariates: continuous block has wrong size");
    if (cat_.size() != static_cast<std::size_t>(n) * arity_.size())
        throw DataError("covariates: categorical block has wrong size");
    for (int a : arity_)
        if (a < 1) throw DataError("covariates: categorical arity must be >= 1");
    for (double v : cont_)
        if (!std::isfinite(v)) throw DataError("covariates: non-finite continuous value");
    const int r = num_categorical();
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < r; ++f) {
            int code = cat_[static_cast<std::size_t>(i) * r + f];
            if (code < 0 || code >= arity_[f])
                throw DataError("covariates: categorical code out of range for feature " +
                                std::to_string(f + 1) + " at node " + std::to_string(i + 1));
        }
}

std::vector<int> canonical_labels(std::span<const int> labels) {
    std::vector<int> out(labels.size());
    std::vector<std::pair<int, int>> seen;  // (old label, new label), small
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = std::find_if(seen.begin(), seen.end(),
                               [&](const auto& s) { return s.first == labels[i]; });
        if (it == seen.end()) {
            seen.emplace_back(labels[i], static_cast<int>(seen.size()));
            out[i] = static_cast<int>(seen.size()) - 1;
        } else {
            out[i] = it->second;
        }
    }
    return out;
}

Partition::Partition(std::span<const int> labels) : z_(canonical_labels(labels)) {
    num_clusters_ = z_.empty() ? 0 : *std::max_element(z_.begin(), z_.end()) + 1;
}

std::vector<int> Partition::cluster_sizes() const {
    std::vector<int> sizes(num_clusters_, 0);
    for (int l : z_) ++sizes[l];
    return sizes;
}

std::vector<int> Partition::one_based() const {
    std::vector<int> out(z_);
    for (int& l : out) ++l;
    return out;
}

Partition canonicalize(std::span<const int> labels) { return Partition(labels); }

void Hyperparams::validate() const {
    auto check = [](double v, const char* name) {
        if (!(std::isfinite(v) && v > 0))
            throw std::invalid_argument(std::string(name) + " must be finite and > 0");
    };
    check(alpha, "alpha");
    check(beta, "beta");
    check(s2, "s2");
    check(tau2, "tau2");
    check(gamma, "gamma");
}

BlockCounts block_counts(const Network& net, const Partition& z) {
    return block_counts(net, z.labels(), z.num_clusters());
}

BlockCounts block_counts(const Network& net, std::span<const int> labels, int num_clusters) {
    const int n = net.num_nodes();
    BlockCounts bc{SquareMatrix<std::int64_t>(num_clusters), SquareMatrix<std::int64_t>(num_clusters)};
    std::vector<std::int64_t> sizes(num_clusters, 0);
    for (int i = 0; i < n; ++i) ++sizes[labels[i]];

    for (int k = 0; k < num_clusters; ++k) {
        bc.dyads(k, k) = sizes[k] * (sizes[k] - 1) / 2;
        for (int l = k + 1; l < num_clusters; ++l) bc.dyads(k, l) = bc.dyads(l, k) = sizes[k] * sizes[l];
    }
    for (int i = 0; i < n; ++i)
        for (int j : net.unobserved(i)) {
            if (j < i) continue;
            int a = labels[i], b = labels[j];
            --bc.dyads(a, b);
            if (a != b) --bc.dyads(b, a);
        }
    for (auto [i, j] : net.edges()) {
        int a = labels[i], b = labels[j];
        ++bc.edges(a, b);
        if (a != b) ++bc.edges(b, a);
    }
    return bc;
}

NodeCounts node_counts(const Network& net, std::span<const int> labels, int num_clusters, int i) {
    NodeCounts nc{std::vector<std::int64_t>(num_clusters, 0), std::vector<std::int64_t>(num_clusters, 0)};
    const int n = net.num_nodes();
    for (int j = 0; j < n; ++j)
        if (j != i && labels[j] >= 0) ++nc.dyads[labels[j]];
    for (int j : net.unobserved(i))
        if (labels[j] >= 0) --nc.dyads[labels[j]];
    for (int j : net.neighbors(i))
        if (labels[j] >= 0) ++nc.edges[labels[j]];
    return nc;
}

}  // namespace bcdc
