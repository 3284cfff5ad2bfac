#include "infmax/dcg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "infmax/parallel.hpp"

namespace infmax {

namespace {

// theta_w above sigma_w(x) by more than this counts as violated.
constexpr double kViolationTol = 1e-6;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Cut family_cut(CutFamily family, const ReachProfile& profile, std::size_t block, const SeedSet& s) {
    switch (family) {
        case CutFamily::submodular:
        case CutFamily::empty_set: return submodular_cut(profile, block, s);
        case CutFamily::combinatorial: return combinatorial_cut(profile, block, s);
        case CutFamily::lshaped_strengthened: return strengthened_lshaped_cut(profile, block, s);
        case CutFamily::lshaped: return lshaped_cut(profile, block, s);
    }
    throw std::invalid_argument("unsupported cut family");
}

// sum_w p_w cut_w as one row on the aggregate value variable (block 0).
Cut aggregate(const std::vector<Cut>& cuts, const std::vector<double>& weights, std::size_t n, CutFamily family) {
    std::vector<long double> coeff(n, 0.0L);
    long double constant = 0.0L;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const auto p = static_cast<long double>(weights[i]);
        constant += p * cuts[i].constant;
        for (const auto& [j, c] : cuts[i].coeffs) coeff[j] += p * c;
    }
    Cut out;
    out.block = 0;
    out.constant = static_cast<double>(constant);
    out.family = family;
    if (!cuts.empty()) out.generator = cuts.front().generator;
    for (NodeId j = 0; j < n; ++j) {
        if (coeff[j] > 0.0L) out.coeffs.emplace_back(j, static_cast<double>(coeff[j]));
    }
    return out;
}

void check_k(std::size_t k, std::size_t n) {
    if (k < 1 || k >= n) throw std::invalid_argument("need 1 <= k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

}  // namespace

SolveReport run_dcg(const ScenarioSet& set, std::size_t k, const DcgOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = set.graph().num_nodes();
    check_k(k, n);
    if (!(options.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
    if (options.cut_family != CutFamily::submodular && options.cut_family != CutFamily::combinatorial &&
        options.cut_family != CutFamily::lshaped_strengthened) {
        throw std::invalid_argument("DCG cut family must be submodular, combinatorial or lshaped_strengthened");
    }

    // Zero-probability scenarios never affect the objective and get no cuts.
    std::vector<std::size_t> active;
    std::vector<double> weights;
    for (std::size_t s = 0; s < set.size(); ++s) {
        if (set[s].weight() > 0.0) {
            active.push_back(s);
            weights.push_back(set[s].weight());
        }
    }
    const bool multicut = options.aggregation == Aggregation::multicut;
    CutModel model(n, k, multicut ? weights : std::vector<double>{1.0}, static_cast<double>(n));

    SolveReport report;
    auto commit = [&](Cut cut) {
        const CutFamily family = cut.family;
        if (model.add_cut(std::move(cut))) {
            ++report.cuts_total;
            ++report.cuts_by_family[family];
        }
    };

    std::vector<Cut> scenario_cuts(active.size());
    std::vector<std::size_t> sigma(active.size());
    auto generate = [&](const SeedSet& s, CutFamily family) {
        parallel_for(active.size(), options.workers, [&](std::size_t i) {
            const auto profile = reach_profile(set[active[i]], s, options.backend);
            sigma[i] = profile.sigma;
            scenario_cuts[i] = family_cut(family, profile, multicut ? i : 0, s);
        });
    };

    if (options.warm_start_empty_set) {
        generate(SeedSet{}, CutFamily::submodular);
        if (multicut) {
            for (auto& cut : scenario_cuts) commit(std::move(cut));
        } else {
            commit(aggregate(scenario_cuts, weights, n, CutFamily::empty_set));
        }
    }

    double lower = 0.0;
    double upper = static_cast<double>(n);
    std::vector<std::uint8_t> incumbent;
    report.termination = Termination::limit;

    while (report.iterations < options.max_iterations) {
        if (options.time_limit_seconds > 0.0 && elapsed_ms(start) > options.time_limit_seconds * 1e3) break;
        ++report.iterations;

        MasterOptions mopt;
        mopt.rel_gap = options.master_rel_gap;
        if (!incumbent.empty()) mopt.incumbent_hint = incumbent;
        if (options.time_limit_seconds > 0.0) {
            mopt.time_limit_seconds = std::max(1e-3, options.time_limit_seconds - elapsed_ms(start) * 1e-3);
        }
        const MasterSolution master = solve_master(model, mopt);
        upper = std::min(upper, master.bound);

        const SeedSet candidate = SeedSet::from_indicator(master.x, k);
        generate(candidate, options.cut_family);
        long double value = 0.0L;
        for (std::size_t i = 0; i < active.size(); ++i) value += static_cast<long double>(weights[i]) * sigma[i];
        const auto sigma_x = static_cast<double>(value);

        bool added = false;
        if (multicut) {
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (master.theta[i] > static_cast<double>(sigma[i]) + kViolationTol) {
                    const auto before = report.cuts_total;
                    commit(std::move(scenario_cuts[i]));
                    added |= report.cuts_total > before;
                }
            }
        } else if (master.theta[0] > sigma_x + kViolationTol) {
            const auto before = report.cuts_total;
            commit(aggregate(scenario_cuts, weights, n, options.cut_family));
            added = report.cuts_total > before;
        }

        if (lower < sigma_x || incumbent.empty()) {
            lower = std::max(lower, sigma_x);
            incumbent = master.x;
        }
        const double tol = 1e-9 * std::max(1.0, std::abs(lower));
        if (upper - lower <= options.epsilon + tol || (!added && master.optimal)) {
            report.termination = Termination::optimal;
            break;
        }
        if (!added) break;  // master hit its own limit without yielding a new cut
    }

    report.seeds = SeedSet::from_indicator(incumbent.empty() ? std::vector<std::uint8_t>(n, 0) : incumbent, k);
    report.objective = expected_spread(set, report.seeds, options.workers);
    report.bound = std::max(upper, report.objective);
    report.gap = (report.bound - report.objective) / std::max(report.objective, 1e-12);
    report.wall_ms = elapsed_ms(start);
    return report;
}

SolveReport k1_exact(const ScenarioSet& set, std::size_t workers) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = set.graph().num_nodes();
    if (n == 0) throw std::invalid_argument("empty graph");
    std::vector<std::vector<std::uint32_t>> gains(set.size());
    parallel_for(set.size(), workers, [&](std::size_t s) { gains[s] = all_singleton_gains(set[s]); });
    std::vector<long double> total(n, 0.0L);
    std::size_t positive = 0;
    for (std::size_t s = 0; s < set.size(); ++s) {
        if (set[s].weight() > 0.0) ++positive;
        const auto p = static_cast<long double>(set[s].weight());
        for (NodeId j = 0; j < n; ++j) total[j] += p * gains[s][j];
    }
    NodeId best = 0;
    for (NodeId j = 1; j < n; ++j) {
        if (total[j] > total[best] + 1e-12L * std::max(1.0L, total[best])) best = j;
    }
    SolveReport report;
    report.seeds = SeedSet({best}, 1);
    report.objective = expected_spread(set, report.seeds, workers);
    report.bound = report.objective;
    report.cuts_total = positive;
    report.cuts_by_family[CutFamily::empty_set] = positive;
    report.iterations = 1;
    report.wall_ms = elapsed_ms(start);
    return report;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

SolveReport brute_force_opt(const ScenarioSet& set, std::size_t k, std::size_t max_subsets, std::size_t workers) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = set.graph().num_nodes();
    k = std::min(k, n);
    double total = 0.0;
    for (std::size_t s = 0; s <= k; ++s) total += binomial(n, s);
    if (total > static_cast<double>(max_subsets)) {
        throw std::length_error("brute force refused: " + std::to_string(static_cast<unsigned long long>(total)) +
                                " seed sets exceed the limit of " + std::to_string(max_subsets));
    }

    // All subsets of size <= k in lexicographic order of their sorted member lists.
    std::vector<std::vector<NodeId>> subsets{{}};
    std::vector<NodeId> current;
    auto extend = [&](auto&& self, NodeId from) -> void {
        for (NodeId v = from; v < n; ++v) {
            current.push_back(v);
            subsets.push_back(current);
            if (current.size() < k) self(self, v + 1);
            current.pop_back();
        }
    };
    if (k > 0) extend(extend, 0);

    std::vector<double> values(subsets.size());
    parallel_for(subsets.size(), workers, [&](std::size_t i) { values[i] = expected_spread(set, SeedSet(subsets[i])); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < subsets.size(); ++i) {
        if (values[i] > values[best] + 1e-12 * std::max(1.0, std::abs(values[best]))) best = i;
    }

    SolveReport report;
    report.seeds = SeedSet(subsets[best], k);
    report.objective = values[best];
    report.bound = values[best];
    report.iterations = subsets.size();
    report.wall_ms = elapsed_ms(start);
    return report;
}

}  // namespace infmax
