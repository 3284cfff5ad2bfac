#include "infmax/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "infmax/parallel.hpp"

namespace infmax {

Scenario::Scenario(const DirectedGraph& g, std::vector<ArcId> live, double weight)
    : live_(std::move(live)), offsets_(g.num_nodes() + 1, 0), weight_(weight) {
    heads_.reserve(live_.size());
    for (std::size_t i = 0; i < live_.size(); ++i) {
        if (live_[i] >= g.num_arcs() || (i > 0 && live_[i] <= live_[i - 1])) {
            throw std::invalid_argument("live arc ids must be strictly increasing and in range");
        }
        const Arc& a = g.arc(live_[i]);
        ++offsets_[a.tail + 1];
        heads_.push_back(a.head);
    }
    // Live arcs inherit the graph's tail-major order, so heads_ is already bucketed.
    for (std::size_t v = 0; v < g.num_nodes(); ++v) offsets_[v + 1] += offsets_[v];
}

std::vector<std::uint32_t> Scenario::live_indegrees() const {
    std::vector<std::uint32_t> indeg(num_nodes(), 0);
    for (NodeId h : heads_) ++indeg[h];
    return indeg;
}

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::ic_sampled: return "ic_sampled";
        case ScenarioKind::lt_sampled: return "lt_sampled";
        case ScenarioKind::ic_exhaustive: return "ic_exhaustive";
        case ScenarioKind::deterministic: return "deterministic";
    }
    return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "ic_sampled") return ScenarioKind::ic_sampled;
    if (s == "lt_sampled") return ScenarioKind::lt_sampled;
    if (s == "ic_exhaustive") return ScenarioKind::ic_exhaustive;
    if (s == "deterministic") return ScenarioKind::deterministic;
    throw std::invalid_argument("unknown scenario kind '" + s + "'");
}

ScenarioSet::ScenarioSet(std::shared_ptr<const DirectedGraph> graph, std::vector<Scenario> scenarios,
                         Provenance provenance)
    : graph_(std::move(graph)), scenarios_(std::move(scenarios)), provenance_(std::move(provenance)) {
    if (!graph_) throw std::invalid_argument("scenario set needs a parent graph");
}

double ScenarioSet::total_weight() const {
    long double sum = 0.0L;
    for (const Scenario& s : scenarios_) sum += s.weight();
    return static_cast<double>(sum);
}

namespace {

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// 53-bit uniform in [0, 1); spelled out because std distributions are not portable.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

ScenarioSet sample_ic(std::shared_ptr<const DirectedGraph> graph, std::span<const double> probs,
                      std::size_t count, std::uint64_t seed, std::size_t workers) {
    if (!graph) throw std::invalid_argument("null graph");
    if (count == 0) throw std::invalid_argument("scenario count must be at least 1");
    if (probs.size() != graph->num_arcs()) throw std::invalid_argument("one probability per arc required");
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("arc probability outside [0, 1]");
    }
    const double weight = 1.0 / static_cast<double>(count);
    std::vector<Scenario> scenarios(count);
    parallel_for(count, workers, [&](std::size_t s) {
        auto rng = substream(seed, s);
        std::vector<ArcId> live;
        for (ArcId a = 0; a < probs.size(); ++a) {
            if (uniform01(rng) < probs[a]) live.push_back(a);
        }
        scenarios[s] = Scenario(*graph, std::move(live), weight);
    });
    std::string params = "arc_probabilities";
    if (!probs.empty() && std::all_of(probs.begin(), probs.end(), [&](double p) { return p == probs[0]; })) {
        params = "p=" + format_double(probs[0]);
    }
    return ScenarioSet(std::move(graph), std::move(scenarios), {ScenarioKind::ic_sampled, seed, params});
}

ScenarioSet enumerate_ic(std::shared_ptr<const DirectedGraph> graph, double p) {
    if (!graph) throw std::invalid_argument("null graph");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("arc probability outside [0, 1]");
    const std::size_t m = graph->num_arcs();
    if (m > kMaxEnumerableArcs) {
        throw std::length_error("exhaustive enumeration refused: " + std::to_string(m) + " arcs exceeds the limit of " +
                                std::to_string(kMaxEnumerableArcs));
    }
    const std::uint64_t total = std::uint64_t{1} << m;
    std::vector<Scenario> scenarios;
    scenarios.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<ArcId> live;
        for (ArcId a = 0; a < m; ++a) {
            if (mask >> a & 1U) live.push_back(a);
        }
        const auto l = static_cast<double>(live.size());
        const double w = std::pow(p, l) * std::pow(1.0 - p, static_cast<double>(m) - l);
        scenarios.emplace_back(*graph, std::move(live), w);
    }
    return ScenarioSet(std::move(graph), std::move(scenarios), {ScenarioKind::ic_exhaustive, 0, "p=" + format_double(p)});
}

std::vector<double> lt_default_weights(const DirectedGraph& g) {
    std::vector<double> w(g.num_arcs());
    for (ArcId a = 0; a < g.num_arcs(); ++a) w[a] = 1.0 / static_cast<double>(g.indeg(g.arc(a).head));
    return w;
}

ScenarioSet sample_lt(std::shared_ptr<const DirectedGraph> graph, std::span<const double> weights,
                      std::size_t count, std::uint64_t seed, std::size_t workers) {
    if (!graph) throw std::invalid_argument("null graph");
    if (count == 0) throw std::invalid_argument("scenario count must be at least 1");
    const DirectedGraph& g = *graph;
    if (weights.size() != g.num_arcs()) throw std::invalid_argument("one weight per arc required");
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        double sum = 0.0;
        for (ArcId a : g.in_arcs(v)) {
            if (!(weights[a] >= 0.0)) throw std::invalid_argument("negative linear threshold weight");
            sum += weights[a];
        }
        if (sum > 1.0 + 1e-9) {
            throw std::invalid_argument("incoming weights of node " + std::to_string(v) + " sum to more than 1");
        }
    }
    const double weight = 1.0 / static_cast<double>(count);
    std::vector<Scenario> scenarios(count);
    parallel_for(count, workers, [&](std::size_t s) {
        auto rng = substream(seed, s);
        std::vector<ArcId> live;
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            const auto in = g.in_arcs(v);
            if (in.empty()) continue;
            const double u = uniform01(rng);
            double cumulative = 0.0;
            for (ArcId a : in) {
                cumulative += weights[a];
                if (u < cumulative) {
                    live.push_back(a);
                    break;
                }
            }
        }
        std::sort(live.begin(), live.end());
        scenarios[s] = Scenario(g, std::move(live), weight);
    });
    return ScenarioSet(std::move(graph), std::move(scenarios), {ScenarioKind::lt_sampled, seed, "weights=custom"});
}

ScenarioSet all_live(std::shared_ptr<const DirectedGraph> graph) {
    if (!graph) throw std::invalid_argument("null graph");
    std::vector<ArcId> live(graph->num_arcs());
    std::iota(live.begin(), live.end(), ArcId{0});
    std::vector<Scenario> scenarios;
    scenarios.emplace_back(*graph, std::move(live), 1.0);
    return ScenarioSet(std::move(graph), std::move(scenarios), {ScenarioKind::deterministic, 0, "all_live"});
}

void write_scenarios(std::ostream& out, const ScenarioSet& set) {
    const Provenance& prov = set.provenance();
    out << "# infmax scenarios v1\n";
    out << "kind " << to_string(prov.kind) << '\n';
    out << "seed " << prov.seed << '\n';
    out << "parameters " << (prov.parameters.empty() ? "-" : prov.parameters) << '\n';
    out << "count " << set.size() << '\n';
    for (const Scenario& s : set.scenarios()) {
        out << format_double(s.weight());
        for (ArcId a : s.live_arcs()) out << ' ' << a;
        out << '\n';
    }
}

ScenarioSet read_scenarios(std::istream& in, std::shared_ptr<const DirectedGraph> graph) {
    if (!graph) throw std::invalid_argument("null graph");
    std::string line;
    std::size_t line_no = 0;
    Provenance prov;
    std::size_t count = 0;
    bool have_count = false;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.front() != '#') return true;
        }
        return false;
    };
    auto expect_field = [&](const std::string& key) -> std::string {
        if (!next_line()) throw ParseError(line_no, "missing '" + key + "' header");
        std::istringstream ls(line);
        std::string got;
        std::string value;
        ls >> got >> value;
        if (got != key || value.empty()) throw ParseError(line_no, "expected '" + key + " <value>'");
        return value;
    };
    prov.kind = scenario_kind_from_string(expect_field("kind"));
    prov.seed = std::stoull(expect_field("seed"));
    prov.parameters = expect_field("parameters");
    if (prov.parameters == "-") prov.parameters.clear();
    count = std::stoull(expect_field("count"));
    have_count = true;

    std::vector<Scenario> scenarios;
    scenarios.reserve(count);
    while (scenarios.size() < count && next_line()) {
        std::istringstream ls(line);
        std::string token;
        ls >> token;
        double w = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), w);
        if (ec != std::errc{} || ptr != token.data() + token.size()) throw ParseError(line_no, "malformed weight");
        std::vector<ArcId> live;
        while (ls >> token) {
            ArcId a = 0;
            const auto [p2, ec2] = std::from_chars(token.data(), token.data() + token.size(), a);
            if (ec2 != std::errc{} || p2 != token.data() + token.size()) throw ParseError(line_no, "malformed arc id");
            live.push_back(a);
        }
        try {
            scenarios.emplace_back(*graph, std::move(live), w);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!have_count || scenarios.size() != count) throw ParseError(line_no, "scenario count mismatch");
    return ScenarioSet(std::move(graph), std::move(scenarios), std::move(prov));
}

}  // namespace infmax
