#include "infmax/influence.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "infmax/parallel.hpp"

namespace infmax {

SeedSet::SeedSet(std::vector<NodeId> members, std::size_t k_bound) : members_(std::move(members)), k_bound_(k_bound) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.size() > k_bound_) {
        throw std::invalid_argument("seed set has " + std::to_string(members_.size()) + " members, cap is " +
                                    std::to_string(k_bound_));
    }
}

SeedSet SeedSet::from_indicator(std::span<const std::uint8_t> x, std::size_t k_bound) {
    std::vector<NodeId> members;
    for (NodeId j = 0; j < x.size(); ++j) {
        if (x[j]) members.push_back(j);
    }
    return SeedSet(std::move(members), k_bound);
}

bool SeedSet::contains(NodeId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

std::vector<std::uint8_t> SeedSet::indicator(std::size_t n) const {
    std::vector<std::uint8_t> x(n, 0);
    for (NodeId v : members_) {
        if (v >= n) throw std::out_of_range("seed outside the node range");
        x[v] = 1;
    }
    return x;
}

namespace {

// Counts by one bounded traversal per source; `stamp` avoids clearing the visit array.
std::vector<std::uint32_t> counts_by_traversal(const Scenario& sc, std::span<const std::uint8_t> blocked) {
    const std::size_t n = sc.num_nodes();
    std::vector<std::uint32_t> counts(n, 0);
    std::vector<std::uint32_t> seen(n, 0);
    std::vector<NodeId> stack;
    std::uint32_t stamp = 0;
    for (NodeId src = 0; src < n; ++src) {
        if (blocked[src]) continue;
        ++stamp;
        std::uint32_t count = 0;
        stack.assign(1, src);
        seen[src] = stamp;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            ++count;
            for (NodeId w : sc.successors(v)) {
                if (!blocked[w] && seen[w] != stamp) {
                    seen[w] = stamp;
                    stack.push_back(w);
                }
            }
        }
        counts[src] = count;
    }
    return counts;
}

struct Condensation {
    std::vector<std::uint32_t> component;  // per node; unused for blocked nodes
    std::size_t num_components = 0;        // numbered sinks-first (reverse topological)
    std::vector<std::uint32_t> succ_offsets;
    std::vector<std::uint32_t> succ;
};

// Iterative Tarjan over the unblocked live subgraph.
Condensation condense(const Scenario& sc, std::span<const std::uint8_t> blocked) {
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
    const std::size_t n = sc.num_nodes();
    Condensation c;
    c.component.assign(n, unvisited);
    std::vector<std::uint32_t> index(n, unvisited);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<NodeId> scc_stack;
    struct Frame {
        NodeId v;
        std::size_t next;
    };
    std::vector<Frame> call;
    std::uint32_t counter = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (blocked[root] || index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        scc_stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto succ = sc.successors(f.v);
            if (f.next < succ.size()) {
                const NodeId w = succ[f.next++];
                if (blocked[w]) continue;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    scc_stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const NodeId v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                const auto id = static_cast<std::uint32_t>(c.num_components++);
                NodeId w = 0;
                do {
                    w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[w] = 0;
                    c.component[w] = id;
                } while (w != v);
            }
        }
    }

    std::vector<std::vector<std::uint32_t>> adj(c.num_components);
    for (NodeId v = 0; v < n; ++v) {
        if (blocked[v]) continue;
        for (NodeId w : sc.successors(v)) {
            if (!blocked[w] && c.component[w] != c.component[v]) adj[c.component[v]].push_back(c.component[w]);
        }
    }
    c.succ_offsets.assign(c.num_components + 1, 0);
    for (std::size_t i = 0; i < c.num_components; ++i) {
        auto& list = adj[i];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        c.succ_offsets[i + 1] = c.succ_offsets[i] + static_cast<std::uint32_t>(list.size());
    }
    c.succ.reserve(c.succ_offsets.back());
    for (auto& list : adj) c.succ.insert(c.succ.end(), list.begin(), list.end());
    return c;
}

// Transitive closure of the condensation over node columns, processed in
// column chunks so memory stays bounded at about kChunkBudget words.
std::vector<std::uint32_t> counts_by_bitset(const Scenario& sc, std::span<const std::uint8_t> blocked) {
    constexpr std::size_t kChunkBudget = std::size_t{1} << 22;
    const std::size_t n = sc.num_nodes();
    const Condensation c = condense(sc, blocked);
    std::vector<std::uint32_t> counts(n, 0);
    if (c.num_components == 0) return counts;

    std::vector<NodeId> columns;
    for (NodeId v = 0; v < n; ++v) {
        if (!blocked[v]) columns.push_back(v);
    }
    const std::size_t total_words = (columns.size() + 63) / 64;
    const std::size_t words = std::clamp<std::size_t>(kChunkBudget / c.num_components, 1, total_words);
    std::vector<std::uint64_t> bits(c.num_components * words);
    std::vector<std::uint32_t> comp_count(c.num_components);

    for (std::size_t first_word = 0; first_word < total_words; first_word += words) {
        const std::size_t width = std::min(words, total_words - first_word);
        std::fill(bits.begin(), bits.end(), 0);
        const std::size_t col_begin = first_word * 64;
        const std::size_t col_end = std::min(columns.size(), (first_word + width) * 64);
        for (std::size_t col = col_begin; col < col_end; ++col) {
            const std::size_t local = col - col_begin;
            bits[c.component[columns[col]] * words + local / 64] |= std::uint64_t{1} << (local % 64);
        }
        // Components are numbered sinks-first, so successors are final when visited.
        for (std::size_t comp = 0; comp < c.num_components; ++comp) {
            std::uint64_t* row = &bits[comp * words];
            for (std::uint32_t e = c.succ_offsets[comp]; e < c.succ_offsets[comp + 1]; ++e) {
                const std::uint64_t* other = &bits[c.succ[e] * words];
                for (std::size_t w = 0; w < width; ++w) row[w] |= other[w];
            }
            std::uint32_t pop = 0;
            for (std::size_t w = 0; w < width; ++w) pop += static_cast<std::uint32_t>(std::popcount(row[w]));
            comp_count[comp] += pop;
        }
    }
    for (NodeId v : columns) counts[v] = comp_count[c.component[v]];
    return counts;
}

void mark_reached(const Scenario& sc, std::span<const NodeId> seeds, std::vector<std::uint8_t>& reached) {
    std::vector<NodeId> stack;
    for (NodeId s : seeds) {
        if (s >= sc.num_nodes()) throw std::out_of_range("seed outside the node range");
        if (!reached[s]) {
            reached[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : sc.successors(v)) {
            if (!reached[w]) {
                reached[w] = 1;
                stack.push_back(w);
            }
        }
    }
}

}  // namespace

std::vector<std::uint32_t> residual_reach_counts(const Scenario& scenario, std::span<const std::uint8_t> blocked,
                                                 ReachBackend backend) {
    if (blocked.size() != scenario.num_nodes()) throw std::invalid_argument("blocked mask size mismatch");
    if (backend == ReachBackend::automatic) {
        const auto open = static_cast<std::size_t>(std::count(blocked.begin(), blocked.end(), 0));
        backend = open >= 256 && scenario.num_live_arcs() >= 256 ? ReachBackend::bitset_closure
                                                                 : ReachBackend::traversal;
    }
    return backend == ReachBackend::bitset_closure ? counts_by_bitset(scenario, blocked)
                                                   : counts_by_traversal(scenario, blocked);
}

std::vector<std::uint8_t> reached_nodes(const Scenario& scenario, const SeedSet& seeds) {
    std::vector<std::uint8_t> reached(scenario.num_nodes(), 0);
    mark_reached(scenario, seeds.members(), reached);
    return reached;
}

ReachProfile reach_profile(const Scenario& scenario, const SeedSet& seeds, ReachBackend backend) {
    ReachProfile profile;
    profile.reached = reached_nodes(scenario, seeds);
    for (NodeId v = 0; v < scenario.num_nodes(); ++v) {
        if (profile.reached[v]) {
            ++profile.sigma;
        } else {
            profile.unreached.push_back(v);
        }
    }
    profile.gain = residual_reach_counts(scenario, profile.reached, backend);
    return profile;
}

std::size_t spread(const Scenario& scenario, const SeedSet& seeds) {
    const auto reached = reached_nodes(scenario, seeds);
    return static_cast<std::size_t>(std::count(reached.begin(), reached.end(), 1));
}

double expected_spread(const ScenarioSet& set, const SeedSet& seeds, std::size_t workers) {
    std::vector<std::size_t> sigma(set.size());
    parallel_for(set.size(), workers, [&](std::size_t s) { sigma[s] = spread(set[s], seeds); });
    long double total = 0.0L;
    for (std::size_t s = 0; s < set.size(); ++s) {
        total += static_cast<long double>(set[s].weight()) * static_cast<long double>(sigma[s]);
    }
    return static_cast<double>(total);
}

std::vector<std::uint32_t> all_singleton_gains(const Scenario& scenario, ReachBackend backend) {
    const std::vector<std::uint8_t> none(scenario.num_nodes(), 0);
    return residual_reach_counts(scenario, none, backend);
}

}  // namespace infmax
