#include <doctest.h>

#include <cmath>

#include "bcdc/sbm_core.hpp"

using namespace bcdc;

namespace {

std::vector<int> one_based(std::initializer_list<int> z) {
    return Partition(z).one_based();
}

}  // namespace

TEST_CASE("canonical relabeling by first appearance") {
    CHECK(one_based({2, 2, 1, 3}) == std::vector<int>{1, 1, 2, 3});
    CHECK(one_based({1, 1, 1}) == std::vector<int>{1, 1, 1});
    CHECK(one_based({5, 5, 9}) == std::vector<int>{1, 1, 2});
    CHECK(canonical_labels(std::vector<int>{-4, 7, -4}) == std::vector<int>{0, 1, 0});

    Partition z{3, 0, 3, 8, 0};
    CHECK(z.num_clusters() == 3);
    CHECK(z.cluster_sizes() == std::vector<int>{2, 2, 1});
    CHECK(Partition{} .num_clusters() == 0);
}

TEST_CASE("network construction rejects bad edges") {
    std::vector<std::pair<int, int>> loop{{1, 1}}, dup{{0, 1}, {1, 0}}, range{{0, 3}};
    CHECK_THROWS_AS(Network::from_edges(3, loop), DataError);
    CHECK_THROWS_AS(Network::from_edges(3, dup), DataError);
    CHECK_THROWS_AS(Network::from_edges(3, range), DataError);

    std::vector<std::pair<int, int>> e{{2, 0}, {0, 1}};
    auto net = Network::from_edges(3, e);
    CHECK(net.num_edges() == 2);
    CHECK(net.has_edge(0, 2));
    CHECK(net.has_edge(2, 0));
    CHECK_FALSE(net.has_edge(1, 2));
    CHECK(net.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
    CHECK_FALSE(net.has_mask());
}

TEST_CASE("an edge on a hidden dyad is ignored") {
    std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}}, hidden{{1, 0}};
    auto net = Network::from_edges(3, e, hidden);
    CHECK_FALSE(net.has_edge(0, 1));
    CHECK(net.num_edges() == 1);
    std::vector<std::pair<int, int>> dup{{0, 2}, {2, 0}};
    CHECK_THROWS_AS(Network::from_edges(3, e, dup), DataError);
}

TEST_CASE("block counts on a path") {
    // 1-2-3 with z = (1,1,2)
    std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}};
    auto net = Network::from_edges(3, e);
    auto c = block_counts(net, Partition{1, 1, 2});
    CHECK(c.edges(0, 0) == 1);
    CHECK(c.edges(0, 1) == 1);
    CHECK(c.edges(1, 0) == 1);
    CHECK(c.edges(1, 1) == 0);
    CHECK(c.dyads(0, 0) == 1);
    CHECK(c.dyads(0, 1) == 2);
    CHECK(c.dyads(1, 1) == 0);
}

TEST_CASE("block counts of an empty graph have no edges") {
    auto net = Network::from_edges(5, {});
    auto c = block_counts(net, Partition{1, 2, 1, 3, 2});
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) CHECK(c.edges(k, l) == 0);
    CHECK(c.dyads(0, 0) == 1);
    CHECK(c.dyads(0, 1) == 4);
    CHECK(c.dyads(0, 2) == 2);
}

TEST_CASE("masked triangle observing one dyad") {
    std::vector<std::pair<int, int>> e{{0, 1}}, hidden{{0, 2}, {1, 2}};
    auto net = Network::from_edges(3, e, hidden);
    CHECK(net.has_mask());
    CHECK_FALSE(net.observed(0, 2));
    auto c = block_counts(net, Partition{1, 1, 1});
    CHECK(c.edges(0, 0) == 1);
    CHECK(c.dyads(0, 0) == 1);
}

TEST_CASE("node counts") {
    SUBCASE("star center") {
        std::vector<std::pair<int, int>> e{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
        auto net = Network::from_edges(5, e);
        std::vector<int> labels{kExcluded, 0, 0, 0, 0};
        auto nc = node_counts(net, labels, 1, 0);
        CHECK(nc.edges == std::vector<std::int64_t>{4});
        CHECK(nc.dyads == std::vector<std::int64_t>{4});
    }
    SUBCASE("isolated node") {
        std::vector<std::pair<int, int>> e{{1, 2}};
        auto net = Network::from_edges(4, e);
        std::vector<int> labels{kExcluded, 0, 1, 1};
        auto nc = node_counts(net, labels, 2, 0);
        CHECK(nc.edges == std::vector<std::int64_t>{0, 0});
        CHECK(nc.dyads == std::vector<std::int64_t>{1, 2});
    }
    SUBCASE("all dyads at the node hidden") {
        std::vector<std::pair<int, int>> e{{1, 2}}, hidden{{0, 1}, {0, 2}, {0, 3}};
        auto net = Network::from_edges(4, e, hidden);
        std::vector<int> labels{kExcluded, 0, 1, 1};
        auto nc = node_counts(net, labels, 2, 0);
        CHECK(nc.edges == std::vector<std::int64_t>{0, 0});
        CHECK(nc.dyads == std::vector<std::int64_t>{0, 0});
    }
    SUBCASE("fully masked") {
        auto net = Network::fully_masked(4);
        std::vector<int> labels{0, kExcluded, 0, 1};
        auto nc = node_counts(net, labels, 2, 1);
        CHECK(nc.dyads == std::vector<std::int64_t>{0, 0});
        auto bc = block_counts(net, Partition{1, 1, 1, 2});
        CHECK(bc.dyads(0, 0) == 0);
        CHECK(bc.dyads(0, 1) == 0);
    }
}

TEST_CASE("square matrix append, erase, permute") {
    SquareMatrix<int> m(2);
    m(0, 0) = 1;
    m(0, 1) = m(1, 0) = 2;
    m(1, 1) = 3;
    m.append(9);
    CHECK(m.dim() == 3);
    CHECK(m(2, 2) == 9);
    CHECK(m(1, 1) == 3);
    std::vector<int> order{2, 0, 1};
    m.permute(order);
    CHECK(m(1, 1) == 1);
    CHECK(m(2, 2) == 3);
    CHECK(m(0, 0) == 9);
    m.erase(0);
    CHECK(m.dim() == 2);
    CHECK(m(0, 1) == 2);
}

TEST_CASE("covariate set validation") {
    CHECK_THROWS(CovariateSet(2, 1, {0.0}, {}, {}));
    CHECK_THROWS(CovariateSet(2, 0, {}, {2}, {0, 2}));
    CovariateSet x(2, 1, {0.5, -1.0}, {3}, {0, 2});
    CHECK(x.continuous(1)[0] == -1.0);
    CHECK(x.categorical(1)[0] == 2);
    CHECK_FALSE(x.empty());
    CHECK(CovariateSet(4).empty());
}

TEST_CASE("hyperparameter validation") {
    Hyperparams hp;
    CHECK_NOTHROW(hp.validate());
    hp.alpha = 0;
    CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
    hp = {};
    hp.s2 = std::nan("");
    CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
}
