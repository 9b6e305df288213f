#include "bcdc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcdc/special.hpp"

namespace bcdc {

namespace {

double xlogx(double p) { return p > 0 ? p * std::log(p) : 0.0; }

}  // namespace

Confusion confusion(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw std::invalid_argument("confusion: labelings differ in length");
    Confusion c;
    c.n = a.size();
    c.table.assign(a.num_clusters(), std::vector<std::int64_t>(b.num_clusters(), 0));
    for (int i = 0; i < a.size(); ++i) ++c.table[a[i]][b[i]];
    return c;
}

double nmi(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw std::invalid_argument("nmi: labelings differ in length");
    if (a.size() == 0) throw std::invalid_argument("nmi: empty labelings");
    const Confusion c = confusion(a, b);
    const double n = static_cast<double>(c.n);
    std::vector<double> row(a.num_clusters(), 0.0), col(b.num_clusters(), 0.0);
    double hxy = 0;
    for (std::size_t r = 0; r < c.table.size(); ++r)
        for (std::size_t k = 0; k < c.table[r].size(); ++k) {
            const double p = c.table[r][k] / n;
            row[r] += p;
            col[k] += p;
            hxy -= xlogx(p);
        }
    double hx = 0, hy = 0;
    for (double p : row) hx -= xlogx(p);
    for (double p : col) hy -= xlogx(p);
    if (hx + hy <= 0) return 1.0;
    const double mi = hx + hy - hxy;
    return std::clamp(2.0 * mi / (hx + hy), 0.0, 1.0);
}

double bic_exact(const Network& net, const Partition& z) {
    const BlockCounts bc = block_counts(net, z);
    const int K = z.num_clusters();
    double log_marginal = 0;
    for (int k = 0; k < K; ++k)
        for (int l = k; l < K; ++l) {
            const auto m = static_cast<double>(bc.edges(k, l));
            const auto d = static_cast<double>(bc.dyads(k, l));
            log_marginal += log_beta_fn(m + 1, d - m + 1);
        }
    // Multivariate Beta B(n_1 + 1, ..., n_K + 1).
    double log_mbeta = -std::lgamma(static_cast<double>(z.size() + K));
    for (int nk : z.cluster_sizes()) log_mbeta += std::lgamma(nk + 1.0);
    return -2.0 * (log_marginal + log_mbeta);
}

double bic_approx(const Network& net, const Partition& z) {
    const BlockCounts bc = block_counts(net, z);
    const int K = z.num_clusters();
    const double n = z.size();
    double loglik = 0;
    for (int k = 0; k < K; ++k)
        for (int l = k; l < K; ++l) {
            const auto m = static_cast<double>(bc.edges(k, l));
            const auto d = static_cast<double>(bc.dyads(k, l));
            if (d == 0) continue;
            const double eta = m / d;
            loglik += (eta > 0 ? m * std::log(eta) : 0.0) + (eta < 1 ? (d - m) * std::log1p(-eta) : 0.0);
        }
    for (int nk : z.cluster_sizes()) loglik += nk * std::log(nk / n);
    const double pairs = n * (n - 1) / 2;
    return -2.0 * loglik + (pairs > 0 ? bic_degrees_of_freedom(K) * std::log(pairs) : 0.0);
}

}  // namespace bcdc
