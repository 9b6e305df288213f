#include "bcdc/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bcdc/random.hpp"

namespace bcdc {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_blocks(const Partition& z, int K, const char* who) {
    if (z.num_clusters() != K)
        throw std::invalid_argument(std::string(who) + ": requires exactly " + std::to_string(K) +
                                    " blocks, got " + std::to_string(z.num_clusters()));
}

}  // namespace

Connectivity planted_connectivity(int K, double p, double r) {
    if (!(p >= 0 && p <= 1) || !(r >= 0 && r <= 1))
        throw std::invalid_argument("planted_connectivity: need p in [0,1] and r in [0,1]");
    Connectivity eta(K, r * p);
    for (int k = 0; k < K; ++k) eta(k, k) = p;
    return eta;
}

std::vector<int> block_sizes_by_ratio(int n, std::span<const double> ratios) {
    const double total = std::accumulate(ratios.begin(), ratios.end(), 0.0);
    if (ratios.empty() || !(total > 0)) throw std::invalid_argument("block_sizes_by_ratio: bad ratios");
    const std::size_t K = ratios.size();
    std::vector<int> sizes(K);
    std::vector<std::pair<double, std::size_t>> rem(K);
    int assigned = 0;
    for (std::size_t k = 0; k < K; ++k) {
        const double exact = n * ratios[k] / total;
        sizes[k] = static_cast<int>(std::floor(exact));
        rem[k] = {exact - sizes[k], k};
        assigned += sizes[k];
    }
    // Largest fractional part first; ties go to the earlier block.
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int j = 0; assigned < n; ++j, ++assigned) ++sizes[rem[j % K].second];
    return sizes;
}

Partition planted_labels(std::span<const int> sizes) {
    std::vector<int> z;
    for (std::size_t k = 0; k < sizes.size(); ++k) z.insert(z.end(), sizes[k], static_cast<int>(k));
    return Partition(z);
}

Network sample_sbm(const Partition& z, const Connectivity& eta, std::uint64_t seed) {
    const int n = z.size();
    if (eta.dim() < z.num_clusters()) throw std::invalid_argument("sample_sbm: connectivity too small");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sample_uniform(rng) < eta(z[i], z[j])) edges.emplace_back(i, j);
    return Network::from_edges(n, edges);
}

double expected_average_degree(std::span<const int> sizes, const Connectivity& eta) {
    double total = 0, n = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        n += sizes[k];
        for (std::size_t l = 0; l < sizes.size(); ++l) {
            const double pairs = (k == l) ? double(sizes[k]) * (sizes[k] - 1) : double(sizes[k]) * sizes[l];
            total += pairs * eta(static_cast<int>(k), static_cast<int>(l));
        }
    }
    return n > 0 ? total / n : 0.0;
}

CovariateSet gen_continuous(const Partition& z, double mu, std::uint64_t seed) {
    require_blocks(z, 2, "gen_continuous");
    if (!(mu >= 0)) throw std::invalid_argument("gen_continuous: mu must be >= 0");
    Rng rng(seed);
    const int n = z.size();
    std::vector<double> v(static_cast<std::size_t>(n) * 2);
    for (int i = 0; i < n; ++i) {
        const double sign = z[i] == 0 ? 1.0 : -1.0;
        v[2 * i] = sample_normal(rng, mu * sign, 1.0);
        v[2 * i + 1] = sample_normal(rng, 0.0, 1.0);
    }
    return CovariateSet(n, 2, std::move(v), {}, {});
}

CovariateSet gen_categorical_design1(const Partition& z, std::uint64_t seed) {
    require_blocks(z, 3, "gen_categorical_design1");
    Rng rng(seed);
    std::uniform_int_distribution<int> noise(0, 2);
    const int n = z.size();
    std::vector<int> codes(static_cast<std::size_t>(n) * 2);
    for (int i = 0; i < n; ++i) {
        codes[2 * i] = z[i];
        codes[2 * i + 1] = noise(rng);
    }
    return CovariateSet(n, 0, {}, {3, 3}, std::move(codes));
}

CovariateSet gen_categorical_design2(const Partition& z, std::uint64_t seed) {
    require_blocks(z, 2, "gen_categorical_design2");
    Rng rng(seed);
    const std::vector<double> ones(4, 1.0);
    const std::vector<std::vector<double>> theta{sample_dirichlet(rng, ones), sample_dirichlet(rng, ones)};
    std::uniform_int_distribution<int> noise(0, 3);
    const int n = z.size();
    std::vector<int> codes(static_cast<std::size_t>(n) * 2);
    for (int i = 0; i < n; ++i) {
        const auto& th = theta[z[i]];
        codes[2 * i] = std::discrete_distribution<int>(th.begin(), th.end())(rng);
        codes[2 * i + 1] = noise(rng);
    }
    return CovariateSet(n, 0, {}, {4, 4}, std::move(codes));
}

CovariateSet gen_mixed(const Partition& z, std::uint64_t seed) {
    const int K = z.num_clusters();
    if (K % 2 != 0) throw std::invalid_argument("gen_mixed: requires an even number of blocks");
    Rng rng(seed);
    const int n = z.size();
    std::vector<double> cont(n);
    std::vector<int> codes(n);
    for (int i = 0; i < n; ++i) {
        const int block = z[i] + 1;  // 1-based block id
        cont[i] = sample_normal(rng, 2.0 * (block % 2) - 1.0, 1.0);
        codes[i] = block <= K / 2 ? 0 : 1;
    }
    return CovariateSet(n, 1, std::move(cont), {2}, std::move(codes));
}

Connectivity sparse_connectivity() {
    const double b[3][3] = {{1.6, 1.2, 0.16}, {1.2, 1.6, 0.02}, {0.16, 0.02, 1.2}};
    Connectivity eta(3);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) eta(k, l) = 0.01 * b[k][l];
    return eta;
}

std::vector<int> sparse_block_sizes(int n) {
    const double ratios[] = {3, 4, 5};
    return block_sizes_by_ratio(n, ratios);
}

SimulatedData gen_sparse_highdim(std::uint64_t seed, double scale) {
    if (!(scale > 0)) throw std::invalid_argument("gen_sparse_highdim: scale must be > 0");
    const int n = static_cast<int>(std::lround(800 * scale));
    const auto sizes = sparse_block_sizes(n);
    SimulatedData data;
    data.truth = planted_labels(sizes);
    data.net = sample_sbm(data.truth, sparse_connectivity(), derive_seed(seed, 1));

    constexpr int p = 100;
    const double centers[3][2] = {{0.0, 2.0}, {-1.0, -0.8}, {1.0, -0.8}};
    Rng rng(derive_seed(seed, 2));
    std::vector<double> v(static_cast<std::size_t>(n) * p);
    for (int i = 0; i < n; ++i)
        for (int d = 0; d < p; ++d) {
            const double mean = d < 2 ? centers[data.truth[i]][d] : 0.0;
            v[static_cast<std::size_t>(i) * p + d] = sample_normal(rng, mean, 1.0);
        }
    data.x = CovariateSet(n, p, std::move(v), {}, {});
    data.metadata = {{"design", "sparse"}, {"n", std::to_string(n)}, {"K", "3"}, {"scale", fmt(scale)}};
    return data;
}

SimulatedData gen_homophily(const Partition& z, double beta, std::uint64_t seed, double p, double r) {
    if (!(beta >= -0.2 && beta <= 0.2)) throw std::invalid_argument("gen_homophily: beta must lie in [-0.2, 0.2]");
    const int n = z.size();
    const Connectivity eta = planted_connectivity(z.num_clusters(), p, r);

    Rng xrng(derive_seed(seed, 2));
    std::vector<int> level(n);
    for (int& l : level) l = sample_uniform(xrng) < 0.5 ? 0 : 1;

    Rng rng(derive_seed(seed, 1));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double prob = std::clamp(eta(z[i], z[j]) + (level[i] == level[j] ? beta : 0.0), 0.0, 1.0);
            if (sample_uniform(rng) < prob) edges.emplace_back(i, j);
        }

    SimulatedData data;
    data.net = Network::from_edges(n, edges);
    std::vector<int> refined(n);
    for (int i = 0; i < n; ++i) refined[i] = 2 * z[i] + level[i];
    data.truth = Partition(refined);
    data.x = CovariateSet(n, 0, {}, {2}, level);
    data.metadata = {{"design", "homophily"}, {"n", std::to_string(n)},
                     {"K", std::to_string(z.num_clusters())}, {"p", fmt(p)}, {"r", fmt(r)},
                     {"homophily", fmt(beta)}};
    return data;
}

std::string design_name(Design d) {
    switch (d) {
        case Design::Continuous: return "continuous";
        case Design::Categorical1: return "categorical1";
        case Design::Categorical2: return "categorical2";
        case Design::Mixed: return "mixed";
        case Design::SparseHighDim: return "sparse";
        case Design::Homophily: return "homophily";
    }
    return "unknown";
}

Design parse_design(const std::string& name) {
    for (Design d : {Design::Continuous, Design::Categorical1, Design::Categorical2, Design::Mixed,
                     Design::SparseHighDim, Design::Homophily})
        if (design_name(d) == name) return d;
    throw std::invalid_argument("unknown design '" + name + "'");
}

DesignParams DesignParams::resolved() const {
    DesignParams out = *this;
    auto def = [](auto& field, auto value) {
        if (field < 0) field = value;
    };
    switch (design) {
        case Design::Continuous:
        case Design::Categorical1:
        case Design::Categorical2:
            def(out.n, 150);
            def(out.p, 0.1);
            def(out.r, 0.3);
            break;
        case Design::Mixed:
            def(out.n, 300);
            def(out.p, 0.3);
            def(out.r, 0.35);
            if (out.n % 100 != 0) throw std::invalid_argument("mixed design: n must be a multiple of 100");
            break;
        case Design::SparseHighDim:
            out.n = static_cast<int>(std::lround(800 * out.scale));
            break;
        case Design::Homophily:
            def(out.n, 600);
            def(out.p, 0.3);
            def(out.r, 0.7);
            if (!(out.homophily >= -0.2 && out.homophily <= 0.2))
                throw std::invalid_argument("homophily must lie in [-0.2, 0.2]");
            break;
    }
    if (out.n < 3) throw std::invalid_argument("n must be >= 3");
    if (design != Design::SparseHighDim && (!(out.p >= 0 && out.p <= 1) || !(out.r >= 0 && out.r <= 1)))
        throw std::invalid_argument("p and r must lie in [0, 1]");
    if (!(out.mu >= 0)) throw std::invalid_argument("mu must be >= 0");
    if (!(out.scale > 0)) throw std::invalid_argument("scale must be > 0");
    return out;
}

SimulatedData simulate(const DesignParams& params, std::uint64_t seed) {
    const DesignParams dp = params.resolved();
    if (dp.design == Design::SparseHighDim) {
        auto data = gen_sparse_highdim(seed, dp.scale);
        data.metadata.emplace_back("seed", std::to_string(seed));
        return data;
    }
    if (dp.design == Design::Homophily) {
        const double ones[] = {1, 1, 1};
        const auto z = planted_labels(block_sizes_by_ratio(dp.n, ones));
        auto data = gen_homophily(z, dp.homophily, seed, dp.p, dp.r);
        data.metadata.emplace_back("seed", std::to_string(seed));
        return data;
    }

    std::vector<double> ratios;
    switch (dp.design) {
        case Design::Continuous:
        case Design::Categorical2: ratios = {2, 1}; break;
        case Design::Categorical1: ratios = {1, 1, 1}; break;
        default: ratios.assign(dp.n / 50, 1.0); break;  // mixed: K = n / 50
    }
    SimulatedData data;
    data.truth = planted_labels(block_sizes_by_ratio(dp.n, ratios));
    const int K = data.truth.num_clusters();
    data.net = sample_sbm(data.truth, planted_connectivity(K, dp.p, dp.r), derive_seed(seed, 1));
    const auto cov_seed = derive_seed(seed, 2);
    switch (dp.design) {
        case Design::Continuous: data.x = gen_continuous(data.truth, dp.mu, cov_seed); break;
        case Design::Categorical1: data.x = gen_categorical_design1(data.truth, cov_seed); break;
        case Design::Categorical2: data.x = gen_categorical_design2(data.truth, cov_seed); break;
        default: data.x = gen_mixed(data.truth, cov_seed); break;
    }
    data.metadata = {{"design", design_name(dp.design)}, {"n", std::to_string(dp.n)},
                     {"K", std::to_string(K)}, {"p", fmt(dp.p)}, {"r", fmt(dp.r)}};
    if (dp.design == Design::Continuous) data.metadata.emplace_back("mu", fmt(dp.mu));
    data.metadata.emplace_back("seed", std::to_string(seed));
    return data;
}

}  // namespace bcdc
