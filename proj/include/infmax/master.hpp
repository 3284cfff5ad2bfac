#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "infmax/cuts.hpp"

namespace infmax {

/// Master problem: max sum_b w_b theta_b  s.t.  sum_j x_j <= k, x binary,
/// 0 <= theta_b <= cap, and every accumulated cut on theta_b.
///
/// A block is one scenario in the multicut model, or the single aggregated
/// value variable in the single-cut model.
class CutModel {
public:
    CutModel(std::size_t num_nodes, std::size_t k, std::vector<double> block_weights, double value_cap);

    std::size_t num_nodes() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t num_blocks() const noexcept { return weights_.size(); }
    double weight(std::size_t block) const { return weights_[block]; }
    double value_cap() const noexcept { return cap_; }

    /// Adds a cut unless an identical one is present; returns whether it was added.
    bool add_cut(Cut cut);

    std::span<const Cut> cuts() const noexcept { return cuts_; }
    std::span<const std::size_t> block_cuts(std::size_t block) const { return by_block_[block]; }

    /// Right-hand side of every cut at x, in cut order.
    std::vector<double> all_rhs(std::span<const double> x) const;
    /// block_value from all_rhs output.
    double block_value_from_rhs(std::size_t block, std::span<const double> rhs) const;

    /// theta_b = min(cap, min over the block's cuts of rhs(x)), clipped at 0.
    double block_value(std::size_t block, std::span<const double> x) const;
    double block_value(std::size_t block, std::span<const std::uint8_t> x) const;

    struct Evaluation {
        std::vector<double> theta;
        double objective = 0.0;
    };
    Evaluation evaluate(std::span<const std::uint8_t> x) const;

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<double> weights_;
    double cap_;
    std::vector<Cut> cuts_;
    std::vector<std::vector<std::size_t>> by_block_;
    std::unordered_multimap<std::size_t, std::size_t> index_;
    std::vector<std::vector<std::pair<std::size_t, double>>> columns_;  // per node: (cut, coefficient)
};

struct MasterOptions {
    /// Stop once (bound - objective) / max(objective, 1e-12) <= rel_gap.
    double rel_gap = 0.01;
    std::size_t node_limit = 5'000'000;
    double time_limit_seconds = 0.0;  // 0 = none
    /// Known feasible point evaluated before the search starts.
    std::optional<std::vector<std::uint8_t>> incumbent_hint;
    /// Masters with at most this many size-k seed sets are solved exactly by
    /// enumeration instead of branch-and-bound (0 = never).
    std::size_t enumeration_limit = 5000;
};

struct MasterSolution {
    std::vector<std::uint8_t> x;
    std::vector<double> theta;
    double objective = 0.0;
    double bound = 0.0;
    double rel_gap = 0.0;
    /// False when a node or time limit stopped the search.
    bool optimal = false;
    std::size_t nodes = 0;
    std::size_t lp_solves = 0;
};

struct LpRelaxation {
    std::vector<double> x;
    std::vector<double> theta;
    double value = 0.0;
};

/// Variable fixing for a relaxation: -1 free, 0 or 1 fixed.
using Fixing = std::vector<std::int8_t>;

/// LP relaxation over the node's fixings (empty = all free). Fixings must
/// leave at most k variables at one.
LpRelaxation solve_lp_relaxation(const CutModel& model, const Fixing& fixing = {});

/// Best-first branch-and-bound with LP bounds and top-k rounding incumbents;
/// branches on the most fractional x_j (lowest id on ties). Small masters
/// are enumerated, see MasterOptions::enumeration_limit.
MasterSolution solve_master(const CutModel& model, const MasterOptions& options = {});

}  // namespace infmax
