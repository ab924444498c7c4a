#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace extremal {

using Vertex = int;
using Edge = std::vector<Vertex>; // vertices strictly ascending

/// Thrown when an enumeration would exceed a configured size guard.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Immutable r-uniform hypergraph on the vertex set {0, ..., n-1}.
 *
 * Edges are r-element subsets stored as strictly ascending vectors, and the
 * edge list itself is kept sorted, so iteration order is deterministic.  All
 * operations that "modify" a graph return a new value; instances are safe to
 * share across threads.
 */
class HyperGraph {
public:
    HyperGraph(int uniformity, int vertex_count, std::vector<Edge> edges)
        : r_(uniformity), n_(vertex_count), edges_(std::move(edges)) {
        if (r_ < 1)
            throw std::invalid_argument("HyperGraph: uniformity must be >= 1");
        if (n_ < 0)
            throw std::invalid_argument("HyperGraph: vertex count must be >= 0");
        for (auto& e : edges_) {
            if (static_cast<int>(e.size()) != r_)
                throw std::invalid_argument("HyperGraph: edge arity differs from uniformity");
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] < 0 || e[i] >= n_)
                    throw std::invalid_argument("HyperGraph: edge vertex out of range");
                if (i > 0 && e[i - 1] >= e[i])
                    throw std::invalid_argument("HyperGraph: edge vertices must be strictly ascending");
            }
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("HyperGraph: duplicate edge");
        incident_.assign(n_, {});
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (Vertex v : edges_[i]) incident_[v].push_back(static_cast<int>(i));
    }

    int uniformity() const { return r_; }
    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }

    bool has_edge(const Edge& e) const {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// Number of edges containing v.
    int degree(Vertex v) const {
        check_vertex(v);
        return static_cast<int>(incident_[v].size());
    }

    /// Indices into edges() of the edges containing v.
    const std::vector<int>& incident_edges(Vertex v) const {
        check_vertex(v);
        return incident_[v];
    }

    bool operator==(const HyperGraph& o) const {
        return r_ == o.r_ && n_ == o.n_ && edges_ == o.edges_;
    }
    bool operator!=(const HyperGraph& o) const { return !(*this == o); }
    bool operator<(const HyperGraph& o) const {
        if (r_ != o.r_) return r_ < o.r_;
        if (n_ != o.n_) return n_ < o.n_;
        return edges_ < o.edges_;
    }

    std::string to_string() const {
        std::string s = "r=" + std::to_string(r_) + ";n=" + std::to_string(n_) + ";";
        for (const auto& e : edges_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                s += (i ? "," : "") + std::to_string(e[i]);
            s += ";";
        }
        return s;
    }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("HyperGraph: vertex out of range");
    }

    int r_;
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
};

/// Finite family of forbidden patterns, all of equal uniformity.
struct Family {
    std::vector<HyperGraph> members;

    explicit Family(std::vector<HyperGraph> m = {}) : members(std::move(m)) {
        for (const auto& g : members)
            if (g.uniformity() != members.front().uniformity())
                throw std::invalid_argument("Family: members must share uniformity");
    }

    int uniformity() const {
        return members.empty() ? 0 : members.front().uniformity();
    }
    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }
};

namespace detail {

inline bool is_subset_of_vertices(const std::vector<Vertex>& set, const HyperGraph& g) {
    return std::all_of(set.begin(), set.end(),
                       [&](Vertex v) { return v >= 0 && v < g.vertex_count(); });
}

/// Link without arity restrictions: {J : J disjoint from I, I u J an edge}.
/// For |I| == r this is {<empty>} when I itself is an edge.
inline std::vector<Edge> link_general(const HyperGraph& g, const std::vector<Vertex>& subset) {
    std::vector<Vertex> is = subset;
    std::sort(is.begin(), is.end());
    std::vector<Edge> out;
    if (is.empty() || !is_subset_of_vertices(is, g)) return out;
    // scan the edges incident to the first element of I
    for (int ei : g.incident_edges(is.front())) {
        const Edge& e = g.edge(ei);
        if (!std::includes(e.begin(), e.end(), is.begin(), is.end())) continue;
        Edge j;
        std::set_difference(e.begin(), e.end(), is.begin(), is.end(), std::back_inserter(j));
        out.push_back(std::move(j));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Link L(I) of a vertex set I: all J disjoint from I with I u J an edge.
inline std::vector<Edge> link(const HyperGraph& g, const std::vector<Vertex>& subset) {
    if (subset.empty() || static_cast<int>(subset.size()) >= g.uniformity())
        throw std::invalid_argument("link: need 1 <= |I| < r");
    if (!detail::is_subset_of_vertices(subset, g))
        throw std::invalid_argument("link: subset not contained in the vertex set");
    std::vector<Vertex> s = subset;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("link: repeated vertex in subset");
    return detail::link_general(g, s);
}

inline std::vector<Edge> link(const HyperGraph& g, Vertex v) {
    return link(g, std::vector<Vertex>{v});
}

/// All pairs {u,v} contained together in at least one edge.
inline std::vector<std::pair<Vertex, Vertex>> covered_pairs(const HyperGraph& g) {
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(g.vertex_count()),
                                        std::vector<bool>(static_cast<std::size_t>(g.vertex_count()), false));
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const Edge& e : g.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                if (!seen[e[i]][e[j]]) {
                    seen[e[i]][e[j]] = true;
                    out.emplace_back(e[i], e[j]);
                }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::pair<Vertex, Vertex>> uncovered_pairs(const HyperGraph& g) {
    auto covered = covered_pairs(g);
    std::vector<std::pair<Vertex, Vertex>> out;
    auto it = covered.begin();
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
            std::pair<Vertex, Vertex> p{u, v};
            while (it != covered.end() && *it < p) ++it;
            if (it == covered.end() || *it != p) out.push_back(p);
        }
    return out;
}

inline bool covers_pairs(const HyperGraph& g) {
    long long total = static_cast<long long>(g.vertex_count()) * (g.vertex_count() - 1) / 2;
    return static_cast<long long>(covered_pairs(g).size()) == total;
}

/**
 * Replace v by `copies` new vertices, each with the link of v.  The result
 * keeps the other vertices in their relative order (relabeled to close the
 * gap) and appends the copies at the end; copies == 0 deletes v.
 */
inline HyperGraph clone_vertex(const HyperGraph& g, Vertex v, int copies) {
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("clone_vertex: vertex out of range");
    if (copies < 0)
        throw std::invalid_argument("clone_vertex: copies must be >= 0");
    const int n = g.vertex_count();
    std::vector<int> relabel(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (Vertex u = 0; u < n; ++u)
        if (u != v) relabel[u] = next++;
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        bool through_v = std::binary_search(e.begin(), e.end(), v);
        if (!through_v) {
            Edge f;
            for (Vertex u : e) f.push_back(relabel[u]);
            std::sort(f.begin(), f.end());
            edges.push_back(std::move(f));
        } else {
            for (int c = 0; c < copies; ++c) {
                Edge f;
                for (Vertex u : e) f.push_back(u == v ? n - 1 + c : relabel[u]);
                std::sort(f.begin(), f.end());
                edges.push_back(std::move(f));
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return HyperGraph(g.uniformity(), n - 1 + copies, std::move(edges));
}

/// |edges(g1) symmetric-difference edges(g2)| over a common labeled vertex set.
inline int symmetric_difference_size(const HyperGraph& g1, const HyperGraph& g2) {
    if (g1.uniformity() != g2.uniformity() || g1.vertex_count() != g2.vertex_count())
        throw std::invalid_argument("symmetric_difference_size: graphs must share uniformity and order");
    std::vector<Edge> diff;
    std::set_symmetric_difference(g1.edges().begin(), g1.edges().end(),
                                  g2.edges().begin(), g2.edges().end(),
                                  std::back_inserter(diff));
    return static_cast<int>(diff.size());
}

/// Shadow adjacency matrix: shadow[u][v] iff {u,v} is covered.
inline std::vector<std::vector<bool>> shadow_adjacency(const HyperGraph& g) {
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(g.vertex_count()),
                                       std::vector<bool>(static_cast<std::size_t>(g.vertex_count()), false));
    for (const Edge& e : g.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                adj[e[i]][e[j]] = adj[e[j]][e[i]] = true;
    return adj;
}

inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long res = 1;
    for (long long i = 1; i <= k; ++i) res = res * (n - k + i) / i;
    return res;
}

} // namespace extremal
