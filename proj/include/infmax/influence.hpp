#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "infmax/scenarios.hpp"

namespace infmax {

/// A seed set X, |X| <= k_bound, stored sorted and duplicate-free.
class SeedSet {
public:
    static constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

    SeedSet() = default;
    SeedSet(std::vector<NodeId> members, std::size_t k_bound = unbounded);
    SeedSet(std::initializer_list<NodeId> members) : SeedSet(std::vector<NodeId>(members)) {}

    static SeedSet from_indicator(std::span<const std::uint8_t> x, std::size_t k_bound = unbounded);

    std::span<const NodeId> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(NodeId v) const;
    std::size_t k_bound() const noexcept { return k_bound_; }

    /// Characteristic vector over n nodes.
    std::vector<std::uint8_t> indicator(std::size_t n) const;

    friend bool operator==(const SeedSet& a, const SeedSet& b) { return a.members_ == b.members_; }

private:
    std::vector<NodeId> members_;
    std::size_t k_bound_ = unbounded;
};

/// Reachability picture of one scenario for one seed set S.
struct ReachProfile {
    /// reached[v] != 0 iff v is in hatR(S) = S + R(S).
    std::vector<std::uint8_t> reached;
    /// barR(S), ascending.
    std::vector<NodeId> unreached;
    std::size_t sigma = 0;
    /// gain[j] = r_j(S) for j in barR(S), 0 on hatR(S).
    std::vector<std::uint32_t> gain;

    std::size_t num_nodes() const noexcept { return reached.size(); }
};

enum class ReachBackend { automatic, traversal, bitset_closure };

/// For every node j with blocked[j] == 0, the number of unblocked nodes
/// reachable from j (j included) when blocked nodes are removed from the
/// live graph. Blocked nodes get 0. Both backends return identical output.
std::vector<std::uint32_t> residual_reach_counts(const Scenario& scenario, std::span<const std::uint8_t> blocked,
                                                 ReachBackend backend = ReachBackend::automatic);

ReachProfile reach_profile(const Scenario& scenario, const SeedSet& seeds,
                           ReachBackend backend = ReachBackend::automatic);

/// sigma_w(S): nodes reachable from S in the live graph, S included.
std::size_t spread(const Scenario& scenario, const SeedSet& seeds);

/// Reached-node flags of S (the hatR part of reach_profile, without marginals).
std::vector<std::uint8_t> reached_nodes(const Scenario& scenario, const SeedSet& seeds);

/// sum_w p_w sigma_w(S), accumulated in scenario order in extended precision.
double expected_spread(const ScenarioSet& set, const SeedSet& seeds, std::size_t workers = 1);

/// r_j(empty) for all j at once.
std::vector<std::uint32_t> all_singleton_gains(const Scenario& scenario,
                                               ReachBackend backend = ReachBackend::automatic);

}  // namespace infmax
