#pragma once

#include <map>
#include <string>

#include "infmax/cuts.hpp"

namespace infmax {

enum class Termination { optimal, limit, error };

std::string to_string(Termination t);

/// Outcome of one algorithm run.
struct SolveReport {
    SeedSet seeds;
    /// sigma(seeds), re-evaluated over the scenario set (the lower bound).
    double objective = 0.0;
    /// Proven upper bound, except for greedy where it is objective / (1 - 1/e).
    double bound = 0.0;
    double gap = 0.0;
    bool bound_from_guarantee = false;
    std::size_t cuts_total = 0;
    std::map<CutFamily, std::size_t> cuts_by_family;
    std::size_t iterations = 0;
    double wall_ms = 0.0;
    Termination termination = Termination::optimal;
};

/// "family:count;family:count" in family order, or "-" when no cuts.
std::string format_cut_counts(const std::map<CutFamily, std::size_t>& counts);

}  // namespace infmax
