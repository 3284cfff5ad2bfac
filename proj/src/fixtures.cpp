#include "infmax/fixtures.hpp"

#include <numeric>

namespace infmax::fixtures {

namespace {

DirectedGraph from_labelled(std::size_t n, std::initializer_list<std::pair<int, int>> labelled) {
    std::vector<Arc> arcs;
    for (const auto& [u, v] : labelled) {
        arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)});
    }
    std::vector<std::int64_t> labels(n);
    std::iota(labels.begin(), labels.end(), std::int64_t{1});
    return DirectedGraph::from_arcs(n, std::move(arcs), std::move(labels));
}

}  // namespace

DirectedGraph fig1_network() {
    return from_labelled(9, {{1, 5}, {1, 6}, {1, 7}, {1, 8}, {2, 4}, {2, 5}, {2, 6}, {3, 7}, {3, 8}, {3, 9}});
}

DirectedGraph a1_15node() {
    return from_labelled(15, {{1, 2}, {2, 3}, {4, 5}, {6, 7}});
}

}  // namespace infmax::fixtures
