#pragma once

#include <random>

#include "extremal/constructions.hpp"
#include "extremal/hypergraph.hpp"

namespace test_helpers {

using extremal::Edge;
using extremal::HyperGraph;

inline HyperGraph graph(int r, int n, std::vector<Edge> edges) {
    return HyperGraph(r, n, std::move(edges));
}

/// The expansion of the 3-vertex path with one shared vertex: {abx, bcx}
/// on vertices a=0, b=1, c=2, x=3.
inline HyperGraph path_expansion_3() {
    return extremal::expansion(graph(2, 3, {{0, 1}, {1, 2}}), 3);
}

inline HyperGraph path_graph(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return graph(2, n, std::move(edges));
}

} // namespace test_helpers
