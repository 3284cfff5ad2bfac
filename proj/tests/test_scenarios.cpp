#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "infmax/fixtures.hpp"
#include "infmax/scenarios.hpp"
#include "oracle.hpp"

using namespace infmax;

namespace {

std::shared_ptr<const DirectedGraph> fig1() { return std::make_shared<const DirectedGraph>(fixtures::fig1_network()); }

}  // namespace

TEST_CASE("exhaustive IC on fig1") {
    const auto set = enumerate_ic(fig1(), 0.3);
    CHECK(set.size() == 1024);
    CHECK(set.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    // The empty subset comes first, the full one last.
    CHECK(set[0].num_live_arcs() == 0);
    CHECK(set[0].weight() == doctest::Approx(std::pow(0.7, 10)));
    CHECK(set[1023].num_live_arcs() == 10);
    CHECK(set[1023].weight() == doctest::Approx(std::pow(0.3, 10)));
    const auto ones = enumerate_ic(fig1(), 1.0);
    std::size_t positive = 0;
    for (const auto& s : ones.scenarios()) positive += s.weight() > 0.0;
    CHECK(positive == 1);
    CHECK_THROWS_AS(enumerate_ic(fig1(), 1.5), std::invalid_argument);
}

TEST_CASE("exhaustive refuses large arc counts") {
    std::vector<Arc> arcs;
    for (NodeId v = 1; v <= 25; ++v) arcs.push_back({0, v});
    auto g = std::make_shared<const DirectedGraph>(DirectedGraph::from_arcs(26, arcs));
    CHECK_THROWS_AS(enumerate_ic(g, 0.5), std::length_error);
}

TEST_CASE("all live") {
    const auto set = all_live(fig1());
    REQUIRE(set.size() == 1);
    CHECK(set[0].num_live_arcs() == 10);
    CHECK(set[0].weight() == 1.0);
}

TEST_CASE("sampling is deterministic and independent of worker count") {
    std::mt19937_64 rng(3);
    const auto g = oracle::random_graph(rng, 40, 160);
    const std::vector<double> probs(g->num_arcs(), 0.3);
    const auto a = sample_ic(g, probs, 50, 99, 1);
    const auto b = sample_ic(g, probs, 50, 99, 4);
    const auto c = sample_ic(g, probs, 50, 100, 1);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    const auto w = lt_default_weights(*g);
    CHECK(sample_lt(g, w, 50, 5, 1) == sample_lt(g, w, 50, 5, 3));
    // Prefix stability: the first scenarios do not depend on the count.
    const auto shorter = sample_ic(g, probs, 10, 99, 1);
    for (std::size_t i = 0; i < 10; ++i) CHECK(shorter[i].live_arcs().size() == a[i].live_arcs().size());
}

TEST_CASE("IC sampling frequency") {
    auto g = std::make_shared<const DirectedGraph>(DirectedGraph::from_arcs(2, {{0, 1}}));
    const std::vector<double> probs{0.25};
    const auto set = sample_ic(g, probs, 20000, 1);
    std::size_t live = 0;
    for (const auto& s : set.scenarios()) live += s.num_live_arcs();
    CHECK(static_cast<double>(live) / 20000.0 == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("LT scenarios have at most one live in-arc per node") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::random_graph(rng, 2 + rng() % 20, rng() % 60);
        const auto set = sample_lt(g, lt_default_weights(*g), 8, rng());
        for (const auto& s : set.scenarios()) {
            for (auto d : s.live_indegrees()) CHECK(d <= 1);
        }
    }
}

TEST_CASE("LT weights are validated") {
    auto g = std::make_shared<const DirectedGraph>(DirectedGraph::from_arcs(3, {{0, 2}, {1, 2}}));
    const std::vector<double> heavy{0.7, 0.7};
    CHECK_THROWS_AS(sample_lt(g, heavy, 1, 0), std::invalid_argument);
    const std::vector<double> ok{0.5, 0.5};
    const auto set = sample_lt(g, ok, 100, 0);
    for (const auto& s : set.scenarios()) CHECK(s.num_live_arcs() == 1);
}

TEST_CASE("scenario file round trip") {
    std::mt19937_64 rng(5);
    const auto g = oracle::random_graph(rng, 12, 30);
    const std::vector<double> probs(g->num_arcs(), 0.4);
    const auto set = sample_ic(g, probs, 20, 17);
    std::stringstream buf;
    write_scenarios(buf, set);
    const auto back = read_scenarios(buf, g);
    CHECK(back == set);
}
