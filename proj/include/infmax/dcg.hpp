#pragma once

#include "infmax/master.hpp"
#include "infmax/solve_report.hpp"

namespace infmax {

enum class Aggregation { multicut, singlecut };

struct DcgOptions {
    /// submodular, combinatorial or lshaped_strengthened.
    CutFamily cut_family = CutFamily::submodular;
    /// Add the S = empty submodular cut of every scenario before the first master solve.
    bool warm_start_empty_set = false;
    Aggregation aggregation = Aggregation::multicut;
    /// Stop once UB - LB <= epsilon.
    double epsilon = 0.0;
    double master_rel_gap = 0.01;
    std::size_t max_iterations = 1'000'000;
    double time_limit_seconds = 0.0;  // 0 = none
    std::size_t workers = 1;
    ReachBackend backend = ReachBackend::automatic;
};

/// Delayed constraint generation: alternate master solves and per-scenario
/// optimality cuts at S = the master's seed set until the bounds meet.
SolveReport run_dcg(const ScenarioSet& set, std::size_t k, const DcgOptions& options = {});

/// k = 1 answer from the S = empty cuts alone: argmax_j sum_w p_w r_j(empty).
SolveReport k1_exact(const ScenarioSet& set, std::size_t workers = 1);

/// Exhaustive search over all seed sets of size <= k (lexicographically
/// smallest among ties). Refuses when C(n, k) > max_subsets.
SolveReport brute_force_opt(const ScenarioSet& set, std::size_t k, std::size_t max_subsets = 10'000'000,
                            std::size_t workers = 1);

}  // namespace infmax
