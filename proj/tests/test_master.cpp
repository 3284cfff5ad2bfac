#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "infmax/fixtures.hpp"
#include "infmax/master.hpp"
#include "oracle.hpp"
#include "simplex.hpp"

using namespace infmax;

namespace {

std::shared_ptr<const DirectedGraph> fig1() { return std::make_shared<const DirectedGraph>(fixtures::fig1_network()); }

SeedSet labels(std::initializer_list<NodeId> l) {
    std::vector<NodeId> ids;
    for (auto v : l) ids.push_back(v - 1);
    return SeedSet(ids);
}

Cut cut_at(const Scenario& s, const SeedSet& seeds) { return submodular_cut(reach_profile(s, seeds), 0, seeds); }

// max over |x| <= k of the model objective, by enumeration.
double enumerate_master(const CutModel& model) {
    const std::size_t n = model.num_nodes();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(oracle::popcount(mask)) > model.k()) continue;
        const auto x = SeedSet(oracle::members_of(mask)).indicator(n);
        best = std::max(best, model.evaluate(x).objective);
    }
    return best;
}

}  // namespace

TEST_CASE("dense simplex") {
    detail::DenseLp lp;
    lp.rows = 2;
    lp.cols = 2;
    lp.a = {1, 2, 3, 1};
    lp.b = {4, 6};
    lp.c = {1, 1};
    lp.lo = {0, 0};
    lp.hi = {10, 10};
    auto r = detail::solve_bounded_simplex(lp);
    REQUIRE(r.optimal);
    CHECK(r.value == doctest::Approx(2.8));
    CHECK(r.y[0] == doctest::Approx(1.6));
    CHECK(r.y[1] == doctest::Approx(1.2));
    // Upper bounds bind before the rows do.
    lp.hi = {1, 1};
    r = detail::solve_bounded_simplex(lp);
    CHECK(r.value == doctest::Approx(2.0));
    lp.lo = {5, 5};
    lp.hi = {6, 6};
    CHECK_THROWS(detail::solve_bounded_simplex(lp));
}

TEST_CASE("warm re-solves agree with fresh solves") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t cols = 2 + rng() % 8;
        std::vector<double> c(cols), lo(cols, 0.0), hi(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            c[j] = unit(rng) - 0.2;
            hi[j] = 1.0 + 4.0 * unit(rng);
        }
        detail::WarmSimplex warm(c, lo, hi);
        std::vector<std::pair<detail::WarmSimplex::SparseRow, double>> rows;
        std::vector<std::size_t> ids;
        std::vector<double> cur_lo = lo, cur_hi = hi;
        for (int step = 0; step < 12; ++step) {
            const auto action = rng() % 3;
            if (action == 0 || rows.empty()) {
                detail::WarmSimplex::SparseRow row;
                for (std::size_t j = 0; j < cols; ++j) {
                    if (rng() % 2) row.emplace_back(j, unit(rng) * 2.0 - 0.5);
                }
                const double b = 0.5 + 3.0 * unit(rng);
                ids.push_back(warm.add_row(row, b));
                rows.emplace_back(std::move(row), b);
            } else if (action == 1) {
                const std::size_t j = rng() % cols;
                cur_hi[j] = rng() % 2 ? 0.0 : hi[j];
                warm.set_bounds(j, cur_lo[j], cur_hi[j]);
            } else {
                const std::size_t r = rng() % rows.size();
                if (warm.remove_row(ids[r])) {
                    rows.erase(rows.begin() + static_cast<long>(r));
                    ids.erase(ids.begin() + static_cast<long>(r));
                }
            }
            const auto a = warm.solve();
            detail::WarmSimplex fresh(c, cur_lo, cur_hi);
            for (const auto& [row, b] : rows) fresh.add_row(row, b);
            const auto f = fresh.solve();
            REQUIRE(a.optimal);
            REQUIRE(f.optimal);
            CHECK(a.value == doctest::Approx(f.value).epsilon(1e-9));
        }
    }
}

TEST_CASE("empty-set cut alone") {
    const auto set = all_live(fig1());
    for (std::size_t k : {1u, 2u}) {
        CutModel model(9, k, {1.0}, 9.0);
        CHECK(model.add_cut(cut_at(set[0], SeedSet{})));
        CHECK_FALSE(model.add_cut(cut_at(set[0], SeedSet{})));
        MasterOptions opt;
        opt.rel_gap = 0.0;
        const auto sol = solve_master(model, opt);
        CHECK(sol.optimal);
        if (k == 1) {
            CHECK(SeedSet::from_indicator(sol.x) == labels({1}));
            CHECK(sol.objective == doctest::Approx(5.0));
        } else {
            CHECK(SeedSet::from_indicator(sol.x) == labels({1, 2}));
            CHECK(sol.objective == doctest::Approx(9.0));
        }
    }
}

TEST_CASE("LP relaxation over the three single-seed cuts") {
    const auto set = all_live(fig1());
    CutModel model(9, 2, {1.0}, 9.0);
    for (auto s : {labels({1}), labels({2}), labels({3})}) model.add_cut(cut_at(set[0], s));
    const auto lp = solve_lp_relaxation(model);
    CHECK(lp.value == doctest::Approx(25.0 / 3.0));
    for (std::size_t limit : {std::size_t{0}, std::size_t{5000}}) {
        MasterOptions opt;
        opt.rel_gap = 0.0;
        opt.enumeration_limit = limit;
        const auto sol = solve_master(model, opt);
        CHECK(sol.objective == doctest::Approx(enumerate_master(model)));
        CHECK(sol.bound >= sol.objective - 1e-9);
    }
}

TEST_CASE("fixings restrict the relaxation") {
    const auto set = all_live(fig1());
    CutModel model(9, 2, {1.0}, 9.0);
    model.add_cut(cut_at(set[0], SeedSet{}));
    Fixing fix(9, -1);
    fix[0] = 0;
    const auto lp = solve_lp_relaxation(model, fix);
    CHECK(lp.x[0] == doctest::Approx(0.0));
    CHECK(lp.value == doctest::Approx(8.0));
}

TEST_CASE("master matches enumeration on random cut models") {
    std::mt19937_64 rng(4242);
    // limit 0 forces branch-and-bound
    for (std::size_t limit : {std::size_t{0}, std::size_t{5000}})
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng() % 8;
        const std::size_t k = 1 + rng() % 3;
        const std::size_t blocks = 1 + rng() % 4;
        const auto g = oracle::random_graph(rng, n, rng() % 20);
        const auto set = sample_ic(g, std::vector<double>(g->num_arcs(), 0.5), blocks, rng());
        std::vector<double> weights(blocks, 1.0 / static_cast<double>(blocks));
        CutModel model(n, k, weights, static_cast<double>(n));
        const std::size_t cuts = 1 + rng() % 10;
        for (std::size_t c = 0; c < cuts; ++c) {
            const std::size_t w = rng() % blocks;
            const SeedSet s(oracle::members_of(rng() & rng() & ((std::uint64_t{1} << n) - 1)));
            const auto profile = reach_profile(set[w], s);
            model.add_cut(rng() % 2 ? submodular_cut(profile, w, s) : strengthened_lshaped_cut(profile, w, s));
        }
        MasterOptions opt;
        opt.rel_gap = 0.0;
        opt.enumeration_limit = limit;
        const auto sol = solve_master(model, opt);
        const double truth = enumerate_master(model);
        CHECK(sol.optimal);
        CHECK(sol.objective == doctest::Approx(truth).epsilon(1e-9));
        CHECK(model.evaluate(sol.x).objective == doctest::Approx(sol.objective).epsilon(1e-9));
        CHECK(std::count(sol.x.begin(), sol.x.end(), 1) <= static_cast<long>(k));
        const auto lp = solve_lp_relaxation(model);
        CHECK(lp.value >= truth - 1e-7);
        // A loose gap still returns a bound that covers the optimum.
        opt.rel_gap = 0.05;
        const auto loose = solve_master(model, opt);
        CHECK(loose.bound >= truth - 1e-7);
        CHECK(loose.objective >= truth / 1.05 - 1e-7);
    }
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(CutModel(3, 1, {-1.0}, 3.0), std::invalid_argument);
    CutModel model(3, 1, {1.0}, 3.0);
    Cut bad;
    bad.block = 2;
    CHECK_THROWS_AS(model.add_cut(bad), std::out_of_range);
    Cut neg;
    neg.coeffs = {{0, -1.0}};
    CHECK_THROWS_AS(model.add_cut(neg), std::invalid_argument);
}
