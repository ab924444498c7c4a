#pragma once

#include <algorithm>

#include "extremal/canonical.hpp"
#include "extremal/hypergraph.hpp"

namespace extremal {

inline HyperGraph edgeless_graph(int t, int r) {
    if (t < 0) throw std::invalid_argument("edgeless_graph: order must be >= 0");
    return HyperGraph(r, t, {});
}

/// Complete r-graph on t vertices (C(t,r) edges; edgeless when t < r).
inline HyperGraph complete_graph(int t, int r) {
    if (t < 0) throw std::invalid_argument("complete_graph: order must be >= 0");
    std::vector<Edge> edges;
    Edge cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == r) {
            edges.push_back(cur);
            return;
        }
        for (int v = start; v < t; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return HyperGraph(r, t, std::move(edges));
}

/// Same edges, padded with isolated vertices up to order t.
inline HyperGraph add_isolated(const HyperGraph& g, int t) {
    if (t < g.vertex_count())
        throw std::invalid_argument("add_isolated: target order below current order");
    return HyperGraph(g.uniformity(), t, g.edges());
}

/**
 * Balanced blowup of the complete r-graph on t parts, n vertices total.
 * Parts are contiguous index ranges with sizes floor(n/t) or ceil(n/t); an
 * r-set is an edge iff it meets every part in at most one vertex.
 */
inline HyperGraph balanced_blowup(int t, int r, int n) {
    if (t < r) throw std::invalid_argument("balanced_blowup: need t >= r");
    if (n < 0) throw std::invalid_argument("balanced_blowup: order must be >= 0");
    std::vector<int> part(static_cast<std::size_t>(n));
    int base = n / t, extra = n % t, v = 0;
    for (int p = 0; p < t; ++p) {
        int size = base + (p < extra ? 1 : 0);
        for (int i = 0; i < size; ++i) part[v++] = p;
    }
    std::vector<Edge> edges;
    Edge cur;
    auto rec = [&](auto&& self, int start, int last_part) -> void {
        if (static_cast<int>(cur.size()) == r) {
            edges.push_back(cur);
            return;
        }
        for (int u = start; u < n; ++u) {
            if (part[u] == last_part) continue;
            cur.push_back(u);
            self(self, u + 1, part[u]);
            cur.pop_back();
        }
    };
    // parts are contiguous, so "different from the previous vertex's part"
    // is the full transversality condition for ascending tuples
    rec(rec, 0, -1);
    return HyperGraph(r, n, std::move(edges));
}

/// Blowup of g with the given per-vertex clone counts (entries >= 0).
inline HyperGraph blowup(const HyperGraph& g, const std::vector<int>& counts) {
    if (static_cast<int>(counts.size()) != g.vertex_count())
        throw std::invalid_argument("blowup: clone count per vertex required");
    HyperGraph out = g;
    // clone highest-index vertices first so earlier indices stay valid
    for (Vertex v = g.vertex_count() - 1; v >= 0; --v)
        out = clone_vertex(out, v, counts[v]);
    return out;
}

/**
 * Extension: for every uncovered pair add one new edge through the pair and
 * r-2 fresh degree-one vertices.  Fresh vertices are appended after the
 * existing ones in pair-lexicographic order.  For r == 2 the pair itself
 * becomes the new edge.
 */
inline HyperGraph extension(const HyperGraph& g) {
    const int r = g.uniformity();
    if (r < 2) throw std::invalid_argument("extension: uniformity must be >= 2");
    auto pairs = uncovered_pairs(g);
    std::vector<Edge> edges = g.edges();
    int next = g.vertex_count();
    for (const auto& [u, v] : pairs) {
        Edge e{u, v};
        for (int i = 0; i < r - 2; ++i) e.push_back(next++);
        std::sort(e.begin(), e.end());
        edges.push_back(std::move(e));
    }
    return HyperGraph(r, next, std::move(edges));
}

/**
 * (r-2)-expansion of a 2-graph: add the same r-2 fresh vertices to every
 * edge.  Identity at r == 2.
 */
inline HyperGraph expansion(const HyperGraph& g2, int r) {
    if (g2.uniformity() != 2) throw std::invalid_argument("expansion: input must be a 2-graph");
    if (r < 2) throw std::invalid_argument("expansion: target uniformity must be >= 2");
    const int n = g2.vertex_count();
    std::vector<Edge> edges;
    for (const Edge& e : g2.edges()) {
        Edge f = e;
        for (int i = 0; i < r - 2; ++i) f.push_back(n + i);
        edges.push_back(std::move(f));
    }
    return HyperGraph(r, n + (r - 2), std::move(edges));
}

struct WeakExtensionOptions {
    /// Fresh vertices may be shared between the edges added for different
    /// uncovered pairs.  When false each pair gets a private fresh pool.
    bool shared_fresh = true;
    /// Cap on the number of enumerated fillings before deduplication.
    long long max_members = 10000;
};

/**
 * All weak extensions of g: per uncovered pair one new edge through the pair
 * whose remaining r-2 slots are filled by existing vertices and/or fresh
 * ones, deduplicated up to isomorphism.  The plain extension (all slots
 * fresh and private) is always among the members.
 */
inline Family weak_extensions(const HyperGraph& g, const WeakExtensionOptions& opt = {}) {
    const int r = g.uniformity();
    if (r < 2) throw std::invalid_argument("weak_extensions: uniformity must be >= 2");
    auto pairs = uncovered_pairs(g);
    const int n = g.vertex_count();
    const int slots = r - 2;
    std::vector<HyperGraph> members;
    long long produced = 0;

    // fills[i] = chosen completion of pairs[i]; fresh vertices are introduced
    // in order, so fills refer to indices >= n
    std::vector<Edge> fills(pairs.size());
    auto rec = [&](auto&& self, std::size_t i, int fresh_used) -> void {
        if (i == pairs.size()) {
            if (++produced > opt.max_members)
                throw resource_limit_error("weak_extensions: more than " +
                                           std::to_string(opt.max_members) +
                                           " fillings before deduplication");
            std::vector<Edge> edges = g.edges();
            int total = n + fresh_used;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                Edge e{pairs[k].first, pairs[k].second};
                e.insert(e.end(), fills[k].begin(), fills[k].end());
                std::sort(e.begin(), e.end());
                edges.push_back(std::move(e));
            }
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            members.emplace_back(r, total, std::move(edges));
            return;
        }
        auto [u, v] = pairs[i];
        // candidate pools: existing vertices except the pair, fresh vertices
        // already introduced (when shared), plus up to `slots` new ones
        Edge fill;
        auto choose = [&](auto&& chooser, int min_next, int fresh_now) -> void {
            if (static_cast<int>(fill.size()) == slots) {
                fills[i] = fill;
                self(self, i + 1, fresh_now);
                return;
            }
            for (int w = min_next; w < n + fresh_now; ++w) {
                if (w == u || w == v) continue;
                if (!opt.shared_fresh && w >= n) continue; // old fresh are private
                fill.push_back(w);
                chooser(chooser, w + 1, fresh_now);
                fill.pop_back();
            }
            // introduce one brand-new fresh vertex (canonical: next index)
            fill.push_back(n + fresh_now);
            chooser(chooser, n + fresh_now + 1, fresh_now + 1);
            fill.pop_back();
        };
        choose(choose, 0, fresh_used);
    };
    rec(rec, 0, 0);

    // normalize orders: drop unused fresh slots is not needed (members track
    // their own totals); dedup by certificate
    return deduplicate(Family(std::move(members)));
}

} // namespace extremal
