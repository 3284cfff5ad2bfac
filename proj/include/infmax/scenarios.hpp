#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "infmax/graph.hpp"

namespace infmax {

/// One live-arc graph G_w = (V, A_w) with its probability weight.
class Scenario {
public:
    Scenario() = default;
    /// `live` must be a strictly increasing list of arc ids of `g`.
    Scenario(const DirectedGraph& g, std::vector<ArcId> live, double weight);

    std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    double weight() const noexcept { return weight_; }
    std::span<const ArcId> live_arcs() const noexcept { return live_; }
    std::size_t num_live_arcs() const noexcept { return live_.size(); }

    /// Heads of the live arcs leaving v.
    std::span<const NodeId> successors(NodeId v) const {
        return std::span<const NodeId>(heads_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
    }

    /// Live in-degree of every node.
    std::vector<std::uint32_t> live_indegrees() const;

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.weight_ == b.weight_ && a.live_ == b.live_ && a.num_nodes() == b.num_nodes();
    }

private:
    std::vector<ArcId> live_;
    std::vector<std::uint32_t> offsets_;
    std::vector<NodeId> heads_;
    double weight_ = 0.0;
};

enum class ScenarioKind { ic_sampled, lt_sampled, ic_exhaustive, deterministic };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct Provenance {
    ScenarioKind kind = ScenarioKind::deterministic;
    std::uint64_t seed = 0;
    /// Free-form generation parameters, e.g. "p=0.1" or "weights=1/indeg".
    std::string parameters;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Finite probability space over live-arc graphs of one parent network.
class ScenarioSet {
public:
    ScenarioSet(std::shared_ptr<const DirectedGraph> graph, std::vector<Scenario> scenarios, Provenance provenance);

    const DirectedGraph& graph() const noexcept { return *graph_; }
    const std::shared_ptr<const DirectedGraph>& graph_ptr() const noexcept { return graph_; }
    std::size_t size() const noexcept { return scenarios_.size(); }
    const Scenario& operator[](std::size_t i) const { return scenarios_[i]; }
    std::span<const Scenario> scenarios() const noexcept { return scenarios_; }
    const Provenance& provenance() const noexcept { return provenance_; }

    double total_weight() const;

    friend bool operator==(const ScenarioSet& a, const ScenarioSet& b) {
        return a.provenance_ == b.provenance_ && a.scenarios_ == b.scenarios_;
    }

private:
    std::shared_ptr<const DirectedGraph> graph_;
    std::vector<Scenario> scenarios_;
    Provenance provenance_;
};

/// Limit for exhaustive enumeration (2^m scenarios are materialized).
inline constexpr std::size_t kMaxEnumerableArcs = 24;

/// Independent cascade sampling. Scenario s draws from its own mt19937_64
/// stream seeded with seed_seq{seed_lo, seed_hi, s_lo, s_hi}; arc a is live
/// iff a 53-bit uniform draw (consumed in arc order) is below probs[a].
ScenarioSet sample_ic(std::shared_ptr<const DirectedGraph> graph, std::span<const double> probs,
                      std::size_t count, std::uint64_t seed, std::size_t workers = 1);

/// Every arc subset as one scenario, in increasing bitmask order (bit a = arc a live).
ScenarioSet enumerate_ic(std::shared_ptr<const DirectedGraph> graph, double p);

/// Linear threshold sampling: each node with incoming arcs draws one uniform
/// (node-id order) and picks at most one incoming arc by its weight.
ScenarioSet sample_lt(std::shared_ptr<const DirectedGraph> graph, std::span<const double> weights,
                      std::size_t count, std::uint64_t seed, std::size_t workers = 1);

/// w_ij = 1 / indeg(j) for every arc.
std::vector<double> lt_default_weights(const DirectedGraph& g);

/// Single scenario with every arc live and weight 1.
ScenarioSet all_live(std::shared_ptr<const DirectedGraph> graph);

/// Text form: a header (provenance, seed, parameters, count) and one line per
/// scenario: "<weight> <live arc ids...>". Weights use shortest round-trip digits.
void write_scenarios(std::ostream& out, const ScenarioSet& set);
ScenarioSet read_scenarios(std::istream& in, std::shared_ptr<const DirectedGraph> graph);

}  // namespace infmax
