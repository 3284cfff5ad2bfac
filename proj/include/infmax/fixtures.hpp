#pragma once

#include "infmax/graph.hpp"

namespace infmax::fixtures {

// Both networks keep their 1-based labels; node id = label - 1.

/// 9 nodes, 10 arcs: roots 1, 2, 3 feeding leaves 4..9.
DirectedGraph fig1_network();

/// 15 nodes, 4 arcs: chains 1->2->3, 4->5, 6->7 and eight singletons.
DirectedGraph a1_15node();

}  // namespace infmax::fixtures
