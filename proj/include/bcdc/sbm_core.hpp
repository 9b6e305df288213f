#pragma once

// Core data model: networks with an optional observation mask, node
// covariates, partitions, hyperparameters, and the block/node count
// machinery shared by the prior and the sampler.
//
// Labels and categorical codes are 0-based in memory. Files and the CLI use
// 1-based ids; conversion happens in io.cpp.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bcdc {

/// Thrown for malformed input data (bad files, inconsistent dimensions).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense square matrix with cheap append/erase/permute of a row+column pair.
/// Used for the connectivity matrix and block counts, whose dimension follows
/// the number of clusters.
template <class T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int dim, T fill = T{})
        : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, fill) {}

    int dim() const { return dim_; }

    T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
    const T& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * dim_ + c];
    }

    std::span<const T> row(int r) const {
        return {data_.data() + static_cast<std::size_t>(r) * dim_, static_cast<std::size_t>(dim_)};
    }

    /// Grows by one row and column filled with `fill`.
    void append(T fill = T{}) {
        std::vector<T> next(static_cast<std::size_t>(dim_ + 1) * (dim_ + 1), fill);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c)
                next[static_cast<std::size_t>(r) * (dim_ + 1) + c] = (*this)(r, c);
        data_ = std::move(next);
        ++dim_;
    }

    /// Removes row and column `idx`, shifting later indices down by one.
    void erase(int idx) {
        std::vector<T> next(static_cast<std::size_t>(dim_ - 1) * (dim_ - 1));
        int rr = 0;
        for (int r = 0; r < dim_; ++r) {
            if (r == idx) continue;
            int cc = 0;
            for (int c = 0; c < dim_; ++c) {
                if (c == idx) continue;
                next[static_cast<std::size_t>(rr) * (dim_ - 1) + cc] = (*this)(r, c);
                ++cc;
            }
            ++rr;
        }
        data_ = std::move(next);
        --dim_;
    }

    /// Reorders so that new index k holds old index order[k].
    void permute(std::span<const int> order) {
        std::vector<T> next(data_.size());
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c)
                next[static_cast<std::size_t>(r) * dim_ + c] = (*this)(order[r], order[c]);
        data_ = std::move(next);
    }

    bool operator==(const SquareMatrix&) const = default;

private:
    int dim_ = 0;
    std::vector<T> data_;
};

/// Undirected simple graph. Only observed edges are stored; dyads hidden by the
/// mask are kept as per-node "unobserved partner" lists so that the masked and
/// unmasked paths share all count code (no mask == empty lists).
class Network {
public:
    Network() = default;

    /// `edges` are 0-based pairs; `unobserved` lists dyads with m_ij = 0.
    /// Throws DataError on out-of-range ids, self-loops, or duplicates.
    static Network from_edges(int n, std::span<const std::pair<int, int>> edges,
                              std::span<const std::pair<int, int>> unobserved = {});

    /// Network with no edges and every dyad hidden.
    static Network fully_masked(int n);

    int num_nodes() const { return n_; }
    /// Number of observed edges.
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
    bool has_mask() const { return has_mask_; }

    const std::vector<int>& neighbors(int i) const { return adj_[i]; }
    const std::vector<int>& unobserved(int i) const { return hidden_[i]; }
    /// Observed edges as (i, j) with i < j, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int i, int j) const;
    bool observed(int i, int j) const;

private:
    int n_ = 0;
    bool has_mask_ = false;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> hidden_;
    std::vector<std::pair<int, int>> edges_;
};

/// Node covariates: a continuous n x p block (row-major) and a categorical
/// n x R block of 0-based codes with per-feature arities.
class CovariateSet {
public:
    CovariateSet() = default;
    /// Pure-network case: no covariates for n nodes.
    explicit CovariateSet(int n) : n_(n) {}
    CovariateSet(int n, int p, std::vector<double> continuous, std::vector<int> arity,
                 std::vector<int> categorical);

    int num_nodes() const { return n_; }
    int num_continuous() const { return p_; }
    int num_categorical() const { return static_cast<int>(arity_.size()); }
    bool empty() const { return p_ == 0 && arity_.empty(); }

    std::span<const double> continuous(int i) const {
        return {cont_.data() + static_cast<std::size_t>(i) * p_, static_cast<std::size_t>(p_)};
    }
    std::span<const int> categorical(int i) const {
        const auto r = arity_.size();
        return {cat_.data() + static_cast<std::size_t>(i) * r, r};
    }
    const std::vector<int>& arity() const { return arity_; }

private:
    int n_ = 0;
    int p_ = 0;
    std::vector<double> cont_;
    std::vector<int> arity_;
    std::vector<int> cat_;
};

/// Cluster labels in canonical form: 0..L-1, ordered by first appearance.
class Partition {
public:
    Partition() = default;
    /// Canonicalizes arbitrary integer labels.
    explicit Partition(std::span<const int> labels);
    Partition(std::initializer_list<int> labels)
        : Partition(std::span<const int>(labels.begin(), labels.size())) {}

    int size() const { return static_cast<int>(z_.size()); }
    int num_clusters() const { return num_clusters_; }
    int operator[](int i) const { return z_[i]; }
    const std::vector<int>& labels() const { return z_; }
    std::vector<int> cluster_sizes() const;
    /// Labels as 1..L for output.
    std::vector<int> one_based() const;

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition& o) const { return z_ <=> o.z_; }

private:
    std::vector<int> z_;
    int num_clusters_ = 0;
};

/// Relabels by first appearance. Any integers are accepted as labels.
std::vector<int> canonical_labels(std::span<const int> labels);
Partition canonicalize(std::span<const int> labels);

struct Hyperparams {
    double alpha = 10.0;  // CRP concentration
    double beta = 1.0;    // symmetric Beta prior on connectivities
    double s2 = 1.0;      // Gaussian kernel variance
    double tau2 = 1.0;    // Gaussian prior variance on centers
    double gamma = 1.0;   // Dirichlet concentration for categorical centers

    /// Throws std::invalid_argument unless every entry is finite and positive.
    void validate() const;
};

/// Edge (M) and dyad (N) counts between blocks; symmetric.
struct BlockCounts {
    SquareMatrix<std::int64_t> edges;
    SquareMatrix<std::int64_t> dyads;

    bool operator==(const BlockCounts&) const = default;
};

/// Counts from a node into each cluster of z_{-i}.
struct NodeCounts {
    std::vector<std::int64_t> edges;  // O_i
    std::vector<std::int64_t> dyads;  // observed dyads (cluster sizes when unmasked)
};

/// Marker for the excluded node in a z_{-i} label vector.
inline constexpr int kExcluded = -1;

/// Full recount of block edges/dyads over observed dyads.
BlockCounts block_counts(const Network& net, const Partition& z);
BlockCounts block_counts(const Network& net, std::span<const int> labels, int num_clusters);

/// Counts from node i into each of `num_clusters` clusters of `labels`, where
/// labels[i] is ignored (treated as excluded).
NodeCounts node_counts(const Network& net, std::span<const int> labels, int num_clusters, int i);

}  // namespace bcdc
