#pragma once

#include <random>

#include "extremal/canonical.hpp"
#include "extremal/constructions.hpp"
#include "extremal/hypergraph.hpp"
#include "extremal/lagrangian.hpp"

namespace extremal {

/// Erdos-Renyi style r-graph: each possible edge kept with probability p.
inline HyperGraph random_hypergraph(std::mt19937_64& rng, int n, int r, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<Edge> universe = complete_graph(n, r).edges();
    std::vector<Edge> edges;
    for (const Edge& e : universe)
        if (keep(rng)) edges.push_back(e);
    return HyperGraph(r, n, std::move(edges));
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

inline WeightVector random_weights(std::mt19937_64& rng, int n,
                                   WeightVector::Mode mode = WeightVector::Mode::probability) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : w) sum += (x = exp1(rng) + 1e-12);
    double scale = 1.0;
    if (mode == WeightVector::Mode::subprobability) {
        std::uniform_real_distribution<double> shrink(0.2, 1.0);
        scale = shrink(rng);
    }
    for (double& x : w) x = x / sum * scale;
    return WeightVector(std::move(w), mode);
}

} // namespace extremal
