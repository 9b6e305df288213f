#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "bcdc/metrics.hpp"
#include "bcdc/simgen.hpp"

using namespace bcdc;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= t) ++i;
        while (j < b.size() && b[j] <= t) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

double chi2_independence(const std::vector<std::vector<double>>& table) {
    double total = 0;
    std::vector<double> rows(table.size(), 0), cols(table[0].size(), 0);
    for (std::size_t r = 0; r < table.size(); ++r)
        for (std::size_t c = 0; c < table[r].size(); ++c) {
            rows[r] += table[r][c];
            cols[c] += table[r][c];
            total += table[r][c];
        }
    double chi2 = 0;
    for (std::size_t r = 0; r < table.size(); ++r)
        for (std::size_t c = 0; c < table[r].size(); ++c) {
            const double e = rows[r] * cols[c] / total;
            chi2 += (table[r][c] - e) * (table[r][c] - e) / e;
        }
    return chi2;
}

}  // namespace

TEST_CASE("planted connectivity and block sizes") {
    auto eta = planted_connectivity(3, 0.2, 0.5);
    std::set<double> values;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) values.insert(eta(k, l));
    CHECK(values == std::set<double>{0.1, 0.2});

    const double r345[] = {3, 4, 5};
    CHECK(block_sizes_by_ratio(800, r345) == std::vector<int>{200, 267, 333});
    CHECK(sparse_block_sizes(800) == std::vector<int>{200, 267, 333});
    const double r21[] = {2, 1};
    CHECK(block_sizes_by_ratio(150, r21) == std::vector<int>{100, 50});
    CHECK(planted_labels(std::vector<int>{2, 1}) == Partition{0, 0, 1});
}

TEST_CASE("degenerate connectivities") {
    auto z = planted_labels(std::vector<int>{4, 4});
    CHECK(sample_sbm(z, Connectivity(2, 0.0), 1).num_edges() == 0);
    CHECK(sample_sbm(z, Connectivity(2, 1.0), 1).num_edges() == 28);
    CHECK(sample_sbm(z, Connectivity(2, 0.5), 3).edges() == sample_sbm(z, Connectivity(2, 0.5), 3).edges());
}

TEST_CASE("sparse design degree") {
    const double expected = expected_average_degree(sparse_block_sizes(800), sparse_connectivity());
    CHECK(expected == doctest::Approx(5.787638).epsilon(1e-6));
    CHECK(expected >= 5.5);
    CHECK(expected <= 6.1);

    auto data = gen_sparse_highdim(4);
    CHECK(data.net.num_nodes() == 800);
    CHECK(data.x.num_continuous() == 100);
    CHECK(data.truth.cluster_sizes() == std::vector<int>{200, 267, 333});
    // non-informative dimensions have zero class means
    for (int k = 0; k < 3; ++k) {
        const int size = data.truth.cluster_sizes()[k];
        int worst = 0;
        for (int d = 2; d < 100; ++d) {
            double m = 0;
            for (int i = 0; i < 800; ++i)
                if (data.truth[i] == k) m += data.x.continuous(i)[d] / size;
            worst += std::abs(m) > 4 / std::sqrt(size);
        }
        CHECK(worst == 0);
    }
}

TEST_CASE("continuous design") {
    auto z = planted_labels(std::vector<int>{2000, 2000});
    SUBCASE("pure noise at mu = 0") {
        auto x = gen_continuous(z, 0, 5);
        for (int d = 0; d < 2; ++d) {
            std::vector<double> a, b;
            for (int i = 0; i < 4000; ++i) (z[i] == 0 ? a : b).push_back(x.continuous(i)[d]);
            // 1% critical value of the two-sample KS test
            CHECK(ks_statistic(a, b) < 1.628 * std::sqrt(2.0 / 2000));
        }
    }
    SUBCASE("mu = 5 separates the class means by 10") {
        auto x = gen_continuous(z, 5, 6);
        double m0 = 0, m1 = 0;
        std::vector<double> a, b;
        for (int i = 0; i < 4000; ++i) {
            if (z[i] == 0) m0 += x.continuous(i)[0] / 2000;
            else m1 += x.continuous(i)[0] / 2000;
            (z[i] == 0 ? a : b).push_back(x.continuous(i)[1]);
        }
        CHECK(std::abs(m0 - m1 - 10) < 4 * std::sqrt(2.0 / 2000));
        CHECK(ks_statistic(a, b) < 1.628 * std::sqrt(2.0 / 2000));
    }
}

TEST_CASE("categorical designs") {
    SUBCASE("design 1") {
        auto z = planted_labels(std::vector<int>{600, 600, 600});
        auto x = gen_categorical_design1(z, 3);
        std::vector<int> f1(1800);
        std::vector<double> freq(3, 0);
        for (int i = 0; i < 1800; ++i) {
            f1[i] = x.categorical(i)[0];
            freq[x.categorical(i)[1]] += 1;
        }
        CHECK(nmi(Partition(f1), z) == doctest::Approx(1.0));
        double chi2 = 0;
        for (double f : freq) chi2 += (f - 600) * (f - 600) / 600;
        CHECK(chi2 < 9.21);
    }
    SUBCASE("design 2") {
        auto z = planted_labels(std::vector<int>{1000, 1000});
        auto x = gen_categorical_design2(z, 8);
        std::vector<std::vector<double>> table(2, std::vector<double>(4, 0));
        for (int i = 0; i < 2000; ++i) table[z[i]][x.categorical(i)[1]] += 1;
        CHECK(chi2_independence(table) < 11.34);
    }
}

TEST_CASE("mixed design") {
    SUBCASE("two blocks") {
        auto z = planted_labels(std::vector<int>{3000, 3000});
        auto x = gen_mixed(z, 2);
        double m[2] = {0, 0}, v[2] = {0, 0};
        for (int i = 0; i < 6000; ++i) {
            CHECK(x.categorical(i)[0] == z[i]);
            m[z[i]] += x.continuous(i)[0] / 3000;
        }
        for (int i = 0; i < 6000; ++i) v[z[i]] += std::pow(x.continuous(i)[0] - m[z[i]], 2) / 2999;
        CHECK(m[0] == doctest::Approx(1.0).epsilon(0.1));
        CHECK(m[1] == doctest::Approx(-1.0).epsilon(0.1));
        CHECK(v[0] == doctest::Approx(1.0).epsilon(0.1));
        CHECK(v[1] == doctest::Approx(1.0).epsilon(0.1));
    }
    SUBCASE("four blocks give four combinations") {
        auto z = planted_labels(std::vector<int>{500, 500, 500, 500});
        auto x = gen_mixed(z, 9);
        std::set<std::pair<int, int>> combos;
        for (int k = 0; k < 4; ++k) {
            double m = 0;
            int code = -1;
            for (int i = 0; i < 2000; ++i)
                if (z[i] == k) {
                    m += x.continuous(i)[0] / 500;
                    code = x.categorical(i)[0];
                }
            combos.emplace(m > 0 ? 1 : -1, code);
        }
        CHECK(combos.size() == 4);
    }
    CHECK_THROWS_AS(gen_mixed(planted_labels(std::vector<int>{3, 3, 3}), 1), std::invalid_argument);
}

TEST_CASE("homophily design") {
    auto z = planted_labels(std::vector<int>{200, 200, 200});
    SUBCASE("beta = 0 is a planted SBM") {
        auto data = gen_homophily(z, 0.0, 4);
        double same = 0, same_n = 0;
        for (int i = 0; i < 600; ++i)
            for (int j = i + 1; j < 600; ++j)
                if (z[i] == z[j] && data.x.categorical(i)[0] == data.x.categorical(j)[0]) {
                    same_n += 1;
                    same += data.net.has_edge(i, j);
                }
        CHECK(std::abs(same / same_n - 0.3) < 3 * std::sqrt(0.21 / same_n));
    }
    SUBCASE("beta = 0.2 raises the same-level rate") {
        auto data = gen_homophily(z, 0.2, 5);
        CHECK(data.truth.num_clusters() == 6);
        double e[2] = {0, 0}, n[2] = {0, 0};
        for (int i = 0; i < 600; ++i)
            for (int j = i + 1; j < 600; ++j) {
                if (z[i] == z[j]) continue;
                const int same = data.x.categorical(i)[0] == data.x.categorical(j)[0];
                n[same] += 1;
                e[same] += data.net.has_edge(i, j);
            }
        const double p_same = 0.21 + 0.2, p_diff = 0.21;
        CHECK(std::abs(e[1] / n[1] - p_same) < 3 * std::sqrt(p_same * (1 - p_same) / n[1]));
        CHECK(std::abs(e[0] / n[0] - p_diff) < 3 * std::sqrt(p_diff * (1 - p_diff) / n[0]));
    }
    CHECK_THROWS_AS(gen_homophily(z, 0.3, 1), std::invalid_argument);
}

TEST_CASE("design parameters and simulate") {
    CHECK(parse_design("mixed") == Design::Mixed);
    CHECK(design_name(Design::SparseHighDim) == "sparse");
    CHECK_THROWS_AS(parse_design("bogus"), std::invalid_argument);

    DesignParams dp;
    auto r = dp.resolved();
    CHECK(r.n == 150);
    CHECK(r.p == doctest::Approx(0.1));
    CHECK(r.r == doctest::Approx(0.3));
    dp.p = 1.5;
    CHECK_THROWS_AS(dp.resolved(), std::invalid_argument);

    DesignParams mixed{Design::Mixed};
    mixed.n = 300;
    auto a = simulate(mixed, 42);
    CHECK(a.truth.num_clusters() == 6);
    auto b = simulate(mixed, 42);
    CHECK(a.net.edges() == b.net.edges());
    CHECK(a.truth == b.truth);
    auto c = simulate(mixed, 43);
    CHECK(a.net.edges() != c.net.edges());

    auto cont = simulate(DesignParams{}, 1);
    CHECK(cont.truth.cluster_sizes() == std::vector<int>{100, 50});
}
