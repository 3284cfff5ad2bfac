#pragma once

#include "infmax/solve_report.hpp"

namespace infmax {

/// Greedy hill climbing: k rounds, each adding the node with the largest
/// expected spread sigma(X + {i}) over the scenario set (ties to the lowest id).
/// The reported bound is the (1 - 1/e) guarantee, capped at n.
SolveReport run_greedy(const ScenarioSet& set, std::size_t k, std::size_t workers = 1);

}  // namespace infmax
