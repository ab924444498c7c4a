#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include "extremal/canonical.hpp"
#include "extremal/constructions.hpp"
#include "extremal/hypergraph.hpp"

namespace extremal {

/// Vertex -> color in {1..t}; every edge gets pairwise distinct colors.
struct StrongColoring {
    std::vector<int> assignment;
};

inline bool is_valid_strong_coloring(const HyperGraph& g, int t, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != g.vertex_count()) return false;
    for (int c : phi)
        if (c < 1 || c > t) return false;
    for (const Edge& e : g.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                if (phi[e[i]] == phi[e[j]]) return false;
    return true;
}

namespace detail {

// Strong coloring is proper coloring of the covered-pair (shadow) graph.
// Backtracking on vertices in decreasing shadow-degree order, colors tried
// ascending with the usual "first unused color" symmetry break, and vertices
// whose candidate set shrinks to one are assigned eagerly.
struct ColoringSearch {
    int n, t;
    std::vector<std::uint64_t> adj;   // shadow adjacency rows (n <= 64)
    std::vector<int> order;
    std::vector<int> color;           // 0 = unassigned, else 1..t

    ColoringSearch(const HyperGraph& g, int colors) : n(g.vertex_count()), t(colors) {
        adj.assign(static_cast<std::size_t>(n), 0);
        for (const Edge& e : g.edges())
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = i + 1; j < e.size(); ++j) {
                    adj[e[i]] |= std::uint64_t{1} << e[j];
                    adj[e[j]] |= std::uint64_t{1} << e[i];
                }
        order.resize(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return popcount(adj[a]) > popcount(adj[b]);
        });
        color.assign(static_cast<std::size_t>(n), 0);
    }

    static int popcount(std::uint64_t x) { return static_cast<int>(__builtin_popcountll(x)); }

    std::uint64_t used_mask(int v) const {
        std::uint64_t mask = 0;
        std::uint64_t a = adj[v];
        while (a) {
            int u = __builtin_ctzll(a);
            a &= a - 1;
            if (color[u]) mask |= std::uint64_t{1} << (color[u] - 1);
        }
        return mask;
    }

    bool solve(int assigned, int max_used) {
        if (assigned == n) return true;
        // forced moves: any unassigned vertex with exactly one feasible color
        for (int v : order) {
            if (color[v]) continue;
            std::uint64_t avail = ~used_mask(v) & ((std::uint64_t{1} << std::min(t, max_used + 1)) - 1);
            if (avail == 0) return false;
            if ((avail & (avail - 1)) == 0) {
                int c = __builtin_ctzll(avail) + 1;
                color[v] = c;
                bool ok = solve(assigned + 1, std::max(max_used, c));
                if (!ok) color[v] = 0;
                return ok;
            }
        }
        int v = -1;
        for (int u : order)
            if (!color[u]) {
                v = u;
                break;
            }
        std::uint64_t avail = ~used_mask(v) & ((std::uint64_t{1} << std::min(t, max_used + 1)) - 1);
        while (avail) {
            int c = __builtin_ctzll(avail) + 1;
            avail &= avail - 1;
            color[v] = c;
            if (solve(assigned + 1, std::max(max_used, c))) return true;
            color[v] = 0;
        }
        return false;
    }
};

inline HyperGraph remove_edge(const HyperGraph& g, const Edge& f) {
    std::vector<Edge> edges;
    bool found = false;
    for (const Edge& e : g.edges()) {
        if (!found && e == f) {
            found = true;
            continue;
        }
        edges.push_back(e);
    }
    if (!found) throw std::invalid_argument("remove_edge: edge not present");
    return HyperGraph(g.uniformity(), g.vertex_count(), std::move(edges));
}

} // namespace detail

/// Witness coloring iff g is strongly t-colorable (exact search).
inline std::optional<StrongColoring> is_strongly_colorable(const HyperGraph& g, int t) {
    if (t < 1) throw std::invalid_argument("is_strongly_colorable: need t >= 1");
    if (g.vertex_count() > 64)
        throw resource_limit_error("is_strongly_colorable: more than 64 vertices");
    if (g.uniformity() > t && g.edge_count() > 0) return std::nullopt;
    detail::ColoringSearch search(g, t);
    if (!search.solve(0, 0)) return std::nullopt;
    StrongColoring witness;
    witness.assignment = search.color;
    return witness;
}

/**
 * All critical edges of g: nonempty iff g is not strongly t-colorable but
 * deleting some single edge makes it so.
 */
inline std::optional<std::vector<Edge>> is_t_critical(const HyperGraph& g, int t) {
    if (is_strongly_colorable(g, t)) return std::nullopt;
    std::vector<Edge> critical;
    for (const Edge& e : g.edges())
        if (is_strongly_colorable(detail::remove_edge(g, e), t)) critical.push_back(e);
    if (critical.empty()) return std::nullopt;
    return critical;
}

/**
 * (g, F) is freely t-critical: F is critical and at least r-2 of its
 * vertices lie in no other edge.
 */
inline bool is_freely_critical(const HyperGraph& g, const Edge& f, int t) {
    if (!g.has_edge(f)) throw std::invalid_argument("is_freely_critical: edge not in graph");
    int degree_one = 0;
    for (Vertex v : f)
        if (g.degree(v) == 1) ++degree_one;
    if (degree_one < g.uniformity() - 2) return false;
    if (is_strongly_colorable(g, t)) return false;
    return is_strongly_colorable(detail::remove_edge(g, f), t).has_value();
}

struct LinkFamilyOptions {
    int max_base_sets = 24;  // guard on C(t, r-1)
    bool dedup = true;       // keep one family per isomorphism class
};

/**
 * Candidate link families over [t]: all S subsets of the (r-1)-subsets of
 * [t] with |S| >= C(t-1, r-1) that are not isomorphic to the complete
 * (r-1)-graph on t-1 vertices, as (r-1)-graphs on t vertices.
 */
inline std::vector<HyperGraph> enumerate_link_families(int t, int r,
                                                       const LinkFamilyOptions& opt = {}) {
    if (t < 1 || r < 2) throw std::invalid_argument("enumerate_link_families: need t >= 1, r >= 2");
    if (r - 1 > t) return {};
    long long base = binomial(t, r - 1);
    if (base > opt.max_base_sets)
        throw resource_limit_error("enumerate_link_families: C(t, r-1) exceeds guard of " +
                                   std::to_string(opt.max_base_sets));
    std::vector<Edge> sets = complete_graph(t, r - 1).edges();
    long long threshold = binomial(t - 1, r - 1);
    auto excluded = canonical_form(add_isolated(complete_graph(t - 1, r - 1), t));

    std::vector<HyperGraph> out;
    std::map<CanonicalCertificate, bool> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sets.size()); ++mask) {
        if (static_cast<long long>(__builtin_popcountll(mask)) < threshold) continue;
        std::vector<Edge> chosen;
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) chosen.push_back(sets[i]);
        HyperGraph fam(r - 1, t, std::move(chosen));
        auto cert = canonical_form(fam);
        if (cert == excluded) continue;
        if (opt.dedup) {
            if (seen.emplace(cert, true).second) out.push_back(std::move(fam));
        } else {
            out.push_back(std::move(fam));
        }
    }
    std::sort(out.begin(), out.end(), [](const HyperGraph& a, const HyperGraph& b) {
        if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
        return a.edges() < b.edges();
    });
    return out;
}

struct SpikeGuards {
    int max_t = 12;
    int max_base_sets = 24;
};

/// Outcome of the spike test on a triple (g, F, v).
struct SpikeReport {
    bool condition_i = false;
    bool condition_ii = false;
    bool condition_iii = false;
    bool verdict = false;
    bool two_graph_shortcut = false;         // r == 2: (ii)/(iii) hold trivially
    std::vector<Vertex> free_vertices;       // degree-one vertices of F besides v
    std::vector<int> deletion_coloring;      // witness for g minus F
    int families_checked = 0;
    /// one assignment per qualifying family, in enumeration order
    std::vector<std::pair<HyperGraph, std::vector<int>>> assignments;
    std::optional<HyperGraph> failing_family;
};

namespace detail {

// Search phi: V(g) -> [t] with every edge avoiding v rainbow and every link
// set of v mapped injectively onto a member of fam.
struct PhiSearch {
    const HyperGraph& g;
    int t;
    Vertex v;
    std::vector<Edge> away_edges;   // edges not containing v
    std::vector<Edge> link_sets;    // L(v)
    const std::vector<Edge>& fam;   // qualifying family, sorted sets over 1..t
    std::vector<int> phi;           // 0 = unassigned, else 1..t

    PhiSearch(const HyperGraph& graph, int colors, Vertex vertex, const HyperGraph& family)
        : g(graph), t(colors), v(vertex), fam(family.edges()) {
        for (const Edge& e : g.edges())
            if (!std::binary_search(e.begin(), e.end(), v)) away_edges.push_back(e);
        link_sets = detail::link_general(g, {v});
        phi.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    }

    bool consistent(Vertex w) const {
        for (int ei : g.incident_edges(w)) {
            const Edge& e = g.edge(ei);
            bool through_v = std::binary_search(e.begin(), e.end(), v);
            if (!through_v) {
                // rainbow requirement
                for (std::size_t i = 0; i < e.size(); ++i)
                    for (std::size_t j = i + 1; j < e.size(); ++j)
                        if (phi[e[i]] && phi[e[i]] == phi[e[j]]) return false;
            } else {
                Edge i_set;
                for (Vertex u : e)
                    if (u != v) i_set.push_back(u);
                // colors used so far on the link set must be distinct and
                // extendable to some family member; the family lives on the
                // zero-based color set
                std::vector<int> colors;
                bool complete = true;
                for (Vertex u : i_set) {
                    if (!phi[u]) {
                        complete = false;
                        continue;
                    }
                    colors.push_back(phi[u] - 1);
                }
                std::sort(colors.begin(), colors.end());
                if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) return false;
                bool extendable = false;
                for (const Edge& s : fam) {
                    if (std::includes(s.begin(), s.end(), colors.begin(), colors.end())) {
                        if (!complete || std::equal(s.begin(), s.end(), colors.begin(), colors.end())) {
                            extendable = true;
                            break;
                        }
                    }
                }
                if (!extendable) return false;
            }
        }
        return true;
    }

    bool assign(Vertex w) {
        while (w < g.vertex_count() && w == v) ++w;
        if (w >= g.vertex_count()) return true;
        for (int c = 1; c <= t; ++c) {
            phi[w] = c;
            if (consistent(w) && assign(w + 1)) return true;
        }
        phi[w] = 0;
        return false;
    }

    std::optional<std::vector<int>> run() {
        if (!assign(0)) return std::nullopt;
        if (v < g.vertex_count()) phi[v] = 1; // unconstrained
        return phi;
    }
};

} // namespace detail

/**
 * Spike test for the triple (g, F, v):
 *   (i)   (g, F) freely t-critical with v one of its two covered vertices,
 *   (ii)  the link of v is a matching,
 *   (iii) for every qualifying link family there is a map of V(g) into [t]
 *         that is rainbow on edges avoiding v and sends every link set of v
 *         onto a member of the family.
 * For 2-graphs, (ii) and (iii) hold trivially.
 */
inline SpikeReport is_t_spike(const HyperGraph& g, const Edge& f, Vertex v, int t,
                              const SpikeGuards& guards = {}) {
    if (!g.has_edge(f)) throw std::invalid_argument("is_t_spike: edge not in graph");
    if (!std::binary_search(f.begin(), f.end(), v))
        throw std::invalid_argument("is_t_spike: vertex not in edge");
    if (t > guards.max_t)
        throw resource_limit_error("is_t_spike: t exceeds guard of " + std::to_string(guards.max_t));

    SpikeReport report;
    const int r = g.uniformity();

    // (i): F critical, and enough degree-one vertices of F besides v
    int degree_one_rest = 0;
    for (Vertex u : f)
        if (u != v && g.degree(u) == 1) {
            ++degree_one_rest;
            report.free_vertices.push_back(u);
        }
    if (degree_one_rest >= r - 2 && !is_strongly_colorable(g, t)) {
        auto witness = is_strongly_colorable(detail::remove_edge(g, f), t);
        if (witness) {
            report.condition_i = true;
            report.deletion_coloring = witness->assignment;
        }
    }
    if (!report.condition_i) return report;

    if (r == 2) {
        report.two_graph_shortcut = true;
        report.condition_ii = true;
        report.condition_iii = true;
        report.verdict = true;
        return report;
    }

    // (ii): link of v is a matching
    auto link_sets = detail::link_general(g, {v});
    report.condition_ii = true;
    for (std::size_t i = 0; i < link_sets.size() && report.condition_ii; ++i)
        for (std::size_t j = i + 1; j < link_sets.size(); ++j) {
            Edge inter;
            std::set_intersection(link_sets[i].begin(), link_sets[i].end(),
                                  link_sets[j].begin(), link_sets[j].end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) {
                report.condition_ii = false;
                break;
            }
        }
    if (!report.condition_ii) return report;

    // (iii): for every qualifying family there must exist a suitable map
    LinkFamilyOptions lf;
    lf.max_base_sets = guards.max_base_sets;
    auto families = enumerate_link_families(t, r, lf);
    report.condition_iii = true;
    for (const auto& fam : families) {
        ++report.families_checked;
        detail::PhiSearch search(g, t, v, fam);
        auto phi = search.run();
        if (!phi) {
            report.condition_iii = false;
            report.failing_family = fam;
            break;
        }
        report.assignments.emplace_back(fam, *phi);
    }
    report.verdict = report.condition_i && report.condition_ii && report.condition_iii;
    return report;
}

/**
 * First (F, v) in deterministic order witnessing a t-spike, if any.
 */
inline std::optional<std::pair<Edge, Vertex>> is_sharply_critical(const HyperGraph& g, int t,
                                                                  const SpikeGuards& guards = {}) {
    if (is_strongly_colorable(g, t)) return std::nullopt;
    for (const Edge& f : g.edges()) {
        if (!is_strongly_colorable(detail::remove_edge(g, f), t)) continue;
        for (Vertex v : f) {
            auto report = is_t_spike(g, f, v, t, guards);
            if (report.verdict) return std::make_pair(f, v);
        }
    }
    return std::nullopt;
}

} // namespace extremal
