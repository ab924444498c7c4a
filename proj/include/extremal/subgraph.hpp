#pragma once

#include <algorithm>
#include <optional>

#include "extremal/hypergraph.hpp"

namespace extremal {

namespace detail {

/**
 * Backtracking state for injective (non-induced) subgraph embedding.
 * Pattern vertices are processed most-constrained first: vertices covered by
 * edges come before isolated ones, preferring vertices with many already
 * placed co-edge neighbours, then high degree.  Whenever the last vertex of a
 * pattern edge is placed, the mapped edge must be present in the host.
 */
struct EmbedSearch {
    const HyperGraph& host;
    const HyperGraph& pattern;
    std::vector<int> order;          // pattern vertices in assignment order
    std::vector<int> map;            // pattern -> host, -1 if unset
    std::vector<bool> used;          // host vertices already taken
    int isolated_count = 0;          // pattern vertices of degree 0

    EmbedSearch(const HyperGraph& h, const HyperGraph& p) : host(h), pattern(p) {
        const int np = pattern.vertex_count();
        map.assign(static_cast<std::size_t>(np), -1);
        used.assign(static_cast<std::size_t>(host.vertex_count()), false);
        auto shadow = shadow_adjacency(pattern);
        std::vector<bool> placed(static_cast<std::size_t>(np), false);
        for (Vertex v = 0; v < np; ++v)
            if (pattern.degree(v) == 0) ++isolated_count;
        const int covered = np - isolated_count;
        for (int step = 0; step < covered; ++step) {
            int best = -1, best_adj = -1, best_deg = -1;
            for (Vertex v = 0; v < np; ++v) {
                if (placed[v] || pattern.degree(v) == 0) continue;
                int adj = 0;
                for (int u : order)
                    if (shadow[v][u]) ++adj;
                if (adj > best_adj || (adj == best_adj && pattern.degree(v) > best_deg)) {
                    best = v;
                    best_adj = adj;
                    best_deg = pattern.degree(v);
                }
            }
            order.push_back(best);
            placed[best] = true;
        }
    }

    bool edges_consistent(Vertex pv) {
        for (int ei : pattern.incident_edges(pv)) {
            const Edge& pe = pattern.edge(ei);
            Edge image;
            bool complete = true;
            for (Vertex u : pe) {
                if (map[u] < 0) {
                    complete = false;
                    break;
                }
                image.push_back(map[u]);
            }
            if (!complete) continue;
            std::sort(image.begin(), image.end());
            if (!host.has_edge(image)) return false;
        }
        return true;
    }

    bool assign(std::size_t depth) {
        if (depth == order.size()) {
            // remaining isolated pattern vertices only need distinct spare hosts
            int spare = host.vertex_count() - static_cast<int>(order.size());
            if (spare < isolated_count) return false;
            int next_free = 0;
            for (Vertex v = 0; v < pattern.vertex_count(); ++v) {
                if (map[v] >= 0) continue;
                while (used[next_free]) ++next_free;
                map[v] = next_free;
                used[next_free] = true;
            }
            return true;
        }
        Vertex pv = order[depth];
        for (Vertex hv = 0; hv < host.vertex_count(); ++hv) {
            if (used[hv] || host.degree(hv) < pattern.degree(pv)) continue;
            map[pv] = hv;
            used[hv] = true;
            if (edges_consistent(pv) && assign(depth + 1)) return true;
            map[pv] = -1;
            used[hv] = false;
        }
        return false;
    }
};

} // namespace detail

/**
 * True iff some injective vertex map sends every pattern edge to a host edge
 * (subgraph containment, not induced).  Isolated pattern vertices still
 * consume distinct host vertices.  On success, *witness (if given) receives
 * the embedding as pattern-vertex -> host-vertex.
 */
inline bool contains_subgraph(const HyperGraph& host, const HyperGraph& pattern,
                              std::vector<int>* witness = nullptr) {
    if (host.uniformity() != pattern.uniformity())
        throw std::invalid_argument("contains_subgraph: uniformity mismatch");
    if (pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count())
        return false;
    detail::EmbedSearch search(host, pattern);
    if (!search.assign(0)) return false;
    if (witness) *witness = search.map;
    return true;
}

/**
 * Containment restricted to embeddings in which the given host edge is the
 * image of some pattern edge.  Used for incremental forbidden-pattern checks
 * when a single edge was just added to an otherwise clean host.
 */
inline bool contains_subgraph_using_edge(const HyperGraph& host, const HyperGraph& pattern,
                                         const Edge& host_edge) {
    if (host.uniformity() != pattern.uniformity())
        throw std::invalid_argument("contains_subgraph_using_edge: uniformity mismatch");
    if (pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count())
        return false;
    if (pattern.edge_count() == 0) return false;
    std::vector<Vertex> target(host_edge);
    std::sort(target.begin(), target.end());
    for (int pe = 0; pe < pattern.edge_count(); ++pe) {
        const Edge& pedge = pattern.edge(pe);
        std::vector<Vertex> image(target);
        // seed with every bijection of the chosen pattern edge onto host_edge
        do {
            detail::EmbedSearch search(host, pattern);
            bool ok = true;
            for (std::size_t i = 0; i < pedge.size() && ok; ++i) {
                Vertex pv = pedge[i], hv = image[i];
                if (host.degree(hv) < pattern.degree(pv)) ok = false;
                search.map[pv] = hv;
                search.used[hv] = true;
            }
            if (ok) {
                for (Vertex pv : pedge)
                    if (!search.edges_consistent(pv)) {
                        ok = false;
                        break;
                    }
            }
            if (ok) {
                // keep the precomputed order but skip the seeded vertices
                std::vector<int> rest;
                for (int v : search.order)
                    if (search.map[v] < 0) rest.push_back(v);
                search.order = rest;
                if (search.assign(0)) return true;
            }
        } while (std::next_permutation(image.begin(), image.end()));
    }
    return false;
}

inline bool is_family_free(const HyperGraph& g, const Family& fam) {
    for (const auto& pattern : fam.members)
        if (contains_subgraph(g, pattern)) return false;
    return true;
}

} // namespace extremal
