#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "extremal/hypergraph.hpp"

namespace extremal {

/**
 * Relabeling certificate: two graphs are isomorphic iff their certificates
 * carry the same uniformity, vertex count and canonical edge list.
 * `relabeling[old] = new` maps the input graph onto the canonical form.
 */
struct CanonicalCertificate {
    int uniformity = 0;
    int vertex_count = 0;
    std::vector<Edge> edges;       // canonical edge list, sorted
    std::vector<int> relabeling;   // witness permutation

    bool operator==(const CanonicalCertificate& o) const {
        return uniformity == o.uniformity && vertex_count == o.vertex_count && edges == o.edges;
    }
    bool operator!=(const CanonicalCertificate& o) const { return !(*this == o); }
    bool operator<(const CanonicalCertificate& o) const {
        if (uniformity != o.uniformity) return uniformity < o.uniformity;
        if (vertex_count != o.vertex_count) return vertex_count < o.vertex_count;
        return edges < o.edges;
    }

    std::string key() const {
        std::string s = "r=" + std::to_string(uniformity) + ";n=" + std::to_string(vertex_count) + ";";
        for (const auto& e : edges) {
            for (std::size_t i = 0; i < e.size(); ++i)
                s += (i ? "," : "") + std::to_string(e[i]);
            s += ";";
        }
        return s;
    }
};

inline HyperGraph apply_relabeling(const HyperGraph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.vertex_count())
        throw std::invalid_argument("apply_relabeling: permutation size mismatch");
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges()) {
        Edge f;
        f.reserve(e.size());
        for (Vertex v : e) f.push_back(perm[v]);
        std::sort(f.begin(), f.end());
        edges.push_back(std::move(f));
    }
    return HyperGraph(g.uniformity(), g.vertex_count(), std::move(edges));
}

namespace detail {

// One round of color refinement.  A vertex signature is its current color
// together with the multiset, over incident edges, of the sorted color
// multiset of the edge.  New color ids are assigned in sorted signature
// order, which keeps the partition independent of the input labeling.
inline bool refine_once(const HyperGraph& g, std::vector<int>& color) {
    const int n = g.vertex_count();
    using Signature = std::pair<int, std::vector<std::vector<int>>>;
    std::vector<Signature> sig(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        std::vector<std::vector<int>> inc;
        inc.reserve(g.incident_edges(v).size());
        for (int ei : g.incident_edges(v)) {
            std::vector<int> colors;
            colors.reserve(g.edge(ei).size());
            for (Vertex u : g.edge(ei)) colors.push_back(color[u]);
            std::sort(colors.begin(), colors.end());
            inc.push_back(std::move(colors));
        }
        std::sort(inc.begin(), inc.end());
        sig[v] = {color[v], std::move(inc)};
    }
    std::map<Signature, int> order;
    for (Vertex v = 0; v < n; ++v) order.emplace(sig[v], 0);
    int next = 0;
    for (auto& [s, id] : order) id = next++;
    bool changed = false;
    for (Vertex v = 0; v < n; ++v) {
        int c = order[sig[v]];
        if (c != color[v]) changed = true;
        color[v] = c;
    }
    return changed;
}

inline void refine(const HyperGraph& g, std::vector<int>& color) {
    while (refine_once(g, color)) {
    }
}

struct CanonSearch {
    const HyperGraph& g;
    std::optional<std::vector<Edge>> best;
    std::vector<int> best_perm;

    explicit CanonSearch(const HyperGraph& graph) : g(graph) {}

    void consider(const std::vector<int>& color) {
        // discrete coloring: color is the candidate relabeling
        std::vector<Edge> edges;
        edges.reserve(g.edges().size());
        for (const Edge& e : g.edges()) {
            Edge f;
            f.reserve(e.size());
            for (Vertex v : e) f.push_back(color[v]);
            std::sort(f.begin(), f.end());
            edges.push_back(std::move(f));
        }
        std::sort(edges.begin(), edges.end());
        if (!best || edges < *best) {
            best = std::move(edges);
            best_perm = color;
        }
    }

    void run(std::vector<int> color) {
        refine(g, color);
        const int n = g.vertex_count();
        int k = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;
        if (k == n) {
            consider(color);
            return;
        }
        // smallest color class with more than one vertex
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (int c : color) ++count[c];
        int target = -1;
        for (int c = 0; c < k; ++c)
            if (count[c] > 1) {
                target = c;
                break;
            }
        for (Vertex v = 0; v < n; ++v) {
            if (color[v] != target) continue;
            std::vector<int> child(color);
            for (int& c : child) c *= 2;
            child[v] -= 1; // individualize v ahead of its cell
            run(std::move(child));
        }
    }
};

} // namespace detail

/**
 * Canonical form by color refinement with individualization branching.
 * Every branch of the refinement tree is explored, so the certificate is the
 * minimum over all stable discrete colorings; no automorphism pruning is
 * attempted (instances here are small).
 */
inline CanonicalCertificate canonical_form(const HyperGraph& g) {
    detail::CanonSearch search(g);
    search.run(std::vector<int>(static_cast<std::size_t>(g.vertex_count()), 0));
    CanonicalCertificate cert;
    cert.uniformity = g.uniformity();
    cert.vertex_count = g.vertex_count();
    if (g.vertex_count() == 0) {
        cert.edges = {};
        cert.relabeling = {};
        return cert;
    }
    cert.edges = *search.best;
    cert.relabeling = search.best_perm;
    return cert;
}

/// Reference route: minimum over all n! relabelings.  Guarded, for cross-checks.
inline CanonicalCertificate canonical_form_exhaustive(const HyperGraph& g, int max_vertices = 10) {
    if (g.vertex_count() > max_vertices)
        throw resource_limit_error("canonical_form_exhaustive: vertex count exceeds guard of " +
                                   std::to_string(max_vertices));
    const int n = g.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<std::vector<Edge>> best;
    std::vector<int> best_perm;
    do {
        std::vector<Edge> edges;
        edges.reserve(g.edges().size());
        for (const Edge& e : g.edges()) {
            Edge f;
            for (Vertex v : e) f.push_back(perm[v]);
            std::sort(f.begin(), f.end());
            edges.push_back(std::move(f));
        }
        std::sort(edges.begin(), edges.end());
        if (!best || edges < *best) {
            best = std::move(edges);
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CanonicalCertificate cert;
    cert.uniformity = g.uniformity();
    cert.vertex_count = n;
    cert.edges = best ? *best : std::vector<Edge>{};
    cert.relabeling = best_perm;
    return cert;
}

inline bool is_isomorphic(const HyperGraph& g1, const HyperGraph& g2) {
    if (g1.uniformity() != g2.uniformity() || g1.vertex_count() != g2.vertex_count() ||
        g1.edge_count() != g2.edge_count())
        return false;
    return canonical_form(g1) == canonical_form(g2);
}

/// Deduplicate a family up to isomorphism; deterministic order by certificate.
inline Family deduplicate(const Family& fam) {
    std::map<CanonicalCertificate, HyperGraph> by_cert;
    for (const auto& g : fam.members) by_cert.emplace(canonical_form(g), g);
    std::vector<HyperGraph> members;
    members.reserve(by_cert.size());
    for (auto& [cert, g] : by_cert) members.push_back(g);
    return Family(std::move(members));
}

} // namespace extremal
