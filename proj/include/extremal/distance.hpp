#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "extremal/constructions.hpp"
#include "extremal/hypergraph.hpp"
#include "extremal/lagrangian.hpp"
#include "extremal/turan.hpp"

namespace extremal {

struct DistanceReport {
    int distance = 0;
    std::vector<int> partition;  // vertex -> part
    bool exact = true;           // false: hill-climbing upper bound
};

namespace detail {

inline long long esym(const std::vector<long long>& sizes, int k) {
    std::vector<long long> e(static_cast<std::size_t>(k) + 1, 0);
    e[0] = 1;
    for (long long s : sizes)
        for (int j = k; j >= 1; --j) e[j] += e[j - 1] * s;
    return e[static_cast<std::size_t>(k)];
}

/// |g  triangle  blowup(partition)| evaluated from scratch.
inline long long partition_cost(const HyperGraph& g, const std::vector<int>& part, int t) {
    std::vector<long long> sizes(static_cast<std::size_t>(t), 0);
    for (int p : part) ++sizes[p];
    long long transversal_total = esym(sizes, g.uniformity());
    long long transversal_edges = 0;
    for (const Edge& e : g.edges()) {
        bool ok = true;
        std::uint64_t seen = 0;
        for (Vertex v : e) {
            std::uint64_t bit = std::uint64_t{1} << part[v];
            if (seen & bit) {
                ok = false;
                break;
            }
            seen |= bit;
        }
        if (ok) ++transversal_edges;
    }
    return transversal_total - transversal_edges + (g.edge_count() - transversal_edges);
}

struct PartitionSearch {
    const HyperGraph& g;
    int t;
    std::vector<int> part;
    std::vector<long long> sizes;
    std::vector<std::vector<int>> edges_by_max; // edge indices grouped by max vertex
    long long best_cost;
    std::vector<int> best_part;

    PartitionSearch(const HyperGraph& graph, int parts) : g(graph), t(parts) {
        const int n = g.vertex_count();
        part.assign(static_cast<std::size_t>(n), -1);
        sizes.assign(static_cast<std::size_t>(t), 0);
        edges_by_max.assign(static_cast<std::size_t>(n), {});
        for (int i = 0; i < g.edge_count(); ++i)
            edges_by_max[g.edge(i).back()].push_back(i);
        // everything in one part is the lexicographically first assignment
        best_cost = partition_cost(g, std::vector<int>(static_cast<std::size_t>(n), 0), t);
        best_part.assign(static_cast<std::size_t>(n), 0);
    }

    // cost decided when vertex v joins part p: edges with max vertex v that
    // are not transversal, plus transversal non-edges with max vertex v
    long long step_cost(Vertex v, int p) {
        std::vector<long long> others;
        for (int q = 0; q < t; ++q)
            if (q != p) others.push_back(sizes[q]);
        long long transversal_sets = esym(others, g.uniformity() - 1);
        long long transversal_edges = 0, decided_edges = 0;
        for (int ei : edges_by_max[v]) {
            ++decided_edges;
            const Edge& e = g.edge(ei);
            bool ok = true;
            std::uint64_t seen = std::uint64_t{1} << p;
            for (Vertex u : e) {
                if (u == v) continue;
                std::uint64_t bit = std::uint64_t{1} << part[u];
                if (seen & bit) {
                    ok = false;
                    break;
                }
                seen |= bit;
            }
            if (ok) ++transversal_edges;
        }
        return (transversal_sets - transversal_edges) + (decided_edges - transversal_edges);
    }

    void run(Vertex v, long long cost, int parts_used) {
        if (cost >= best_cost) return; // first minimum found is kept (lex order)
        if (v == g.vertex_count()) {
            best_cost = cost;
            best_part = part;
            return;
        }
        int limit = std::min(t - 1, parts_used); // symmetry break: next new part only
        for (int p = 0; p <= limit; ++p) {
            part[v] = p;
            ++sizes[p];
            run(v + 1, cost + step_cost(v, p), std::max(parts_used, p + 1));
            --sizes[p];
            part[v] = -1;
        }
    }
};

} // namespace detail

struct DistanceOptions {
    int exact_limit = 14;     // branch and bound up to this many vertices
    bool force_exact = false;
    bool force_heuristic = false;
    int restarts = 20;        // hill climbing restarts
    std::uint64_t seed = kDefaultSeed;
};

/**
 * Edit distance from g to the blowups of the complete r-graph on t parts:
 * minimum symmetric difference over all partitions of V(g) into at most t
 * parts.  Exact by branch and bound for small n, hill climbing (flagged as
 * an upper bound) beyond.
 */
inline DistanceReport distance_to_complete_blowups(const HyperGraph& g, int t,
                                                   const DistanceOptions& opt = {}) {
    if (t < g.uniformity()) throw std::invalid_argument("distance_to_complete_blowups: need t >= r");
    if (t > 63) throw std::invalid_argument("distance_to_complete_blowups: t too large");
    const int n = g.vertex_count();
    DistanceReport report;
    if (n == 0) return report;

    bool exact = !opt.force_heuristic && (opt.force_exact || n <= opt.exact_limit);
    if (exact) {
        detail::PartitionSearch search(g, t);
        // step costs are nonnegative, so the lexicographically first optimal
        // assignment is the one kept
        search.run(0, 0, 0);
        report.distance = static_cast<int>(search.best_cost);
        report.partition = search.best_part;
        report.exact = true;
        return report;
    }

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, t - 1);
    long long best = -1;
    std::vector<int> best_part;
    for (int restart = 0; restart < opt.restarts; ++restart) {
        std::vector<int> part(static_cast<std::size_t>(n));
        if (restart == 0)
            for (int v = 0; v < n; ++v) part[v] = v % t;
        else
            for (int& p : part) p = pick(rng);
        long long cost = detail::partition_cost(g, part, t);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int v = 0; v < n; ++v) {
                int old = part[v];
                for (int p = 0; p < t; ++p) {
                    if (p == old) continue;
                    part[v] = p;
                    long long c = detail::partition_cost(g, part, t);
                    if (c < cost) {
                        cost = c;
                        old = p;
                        improved = true;
                    } else {
                        part[v] = old;
                    }
                }
                part[v] = old;
            }
        }
        if (best < 0 || cost < best) {
            best = cost;
            best_part = part;
        }
    }
    report.distance = static_cast<int>(best);
    report.partition = best_part;
    report.exact = false;
    return report;
}

/// Every part within eps of n/t.  Parts must partition {0..n-1} into t sets.
inline bool is_eps_balanced(const std::vector<std::vector<Vertex>>& parts, int n, int t,
                            double eps) {
    if (static_cast<int>(parts.size()) != t)
        throw std::invalid_argument("is_eps_balanced: expected exactly t parts");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int covered = 0;
    for (const auto& part : parts)
        for (Vertex v : part) {
            if (v < 0 || v >= n || seen[v])
                throw std::invalid_argument("is_eps_balanced: parts must partition the vertex set");
            seen[v] = true;
            ++covered;
        }
    if (covered != n)
        throw std::invalid_argument("is_eps_balanced: parts must partition the vertex set");
    for (const auto& part : parts)
        if (std::abs(static_cast<double>(part.size()) - static_cast<double>(n) / t) > eps + 1e-12)
            return false;
    return true;
}

/// Weighted symmetric-difference distance over a common labeled vertex set.
inline double weighted_distance_fixed(const HyperGraph& g1, const HyperGraph& g2,
                                      const WeightVector& mu) {
    if (g1.uniformity() != g2.uniformity() || g1.vertex_count() != g2.vertex_count())
        throw std::invalid_argument("weighted_distance_fixed: graphs must share the vertex set");
    if (mu.size() != g1.vertex_count())
        throw std::invalid_argument("weighted_distance_fixed: weight size mismatch");
    std::vector<Edge> diff;
    std::set_symmetric_difference(g1.edges().begin(), g1.edges().end(), g2.edges().begin(),
                                  g2.edges().end(), std::back_inserter(diff));
    double total = 0.0;
    for (const Edge& e : diff) {
        double p = 1.0;
        for (Vertex v : e) p *= mu[v];
        total += p;
    }
    return total;
}

namespace detail {

/**
 * A coupling aligns two weighted graphs on a common blowup vertex set: cell
 * (u, w, mass) splits mass between origin u on the left and origin w on the
 * right.  Slack origins (-1) carry the mass a subprobability weighting is
 * missing; they behave as isolated vertices, so cells rooted in slack lie in
 * no edge on that side.
 */
struct Coupling {
    std::vector<int> left;    // origin in g1, -1 for slack
    std::vector<int> right;   // origin in g2, -1 for slack
    std::vector<double> mass;

    int size() const { return static_cast<int>(mass.size()); }
};

inline double coupling_cost(const HyperGraph& g1, const HyperGraph& g2, const Coupling& c) {
    const int r = g1.uniformity();
    const int n = c.size();
    double total = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(r));
    // enumerate r-subsets of cells
    auto rec = [&](auto&& self, int start, int depth, double prod) -> void {
        if (depth == r) {
            auto side_edge = [&](const std::vector<int>& origin, const HyperGraph& g) {
                Edge e;
                for (int i : idx) {
                    if (origin[i] < 0) return false; // slack: no edges
                    e.push_back(origin[i]);
                }
                std::sort(e.begin(), e.end());
                if (std::adjacent_find(e.begin(), e.end()) != e.end()) return false;
                return g.has_edge(e);
            };
            bool in1 = side_edge(c.left, g1);
            bool in2 = side_edge(c.right, g2);
            if (in1 != in2) total += prod;
            return;
        }
        for (int i = start; i < n; ++i) {
            if (c.mass[i] <= 0.0) continue;
            idx[depth] = i;
            self(self, i + 1, depth + 1, prod * c.mass[i]);
        }
    };
    rec(rec, 0, 0, 1.0);
    return total;
}

/// Local improvement: shift mass around 2x2 rectangles of the coupling while
/// both marginals stay fixed; the objective along a shift is a polynomial in
/// one variable, minimized by sampling.
inline double improve_coupling(const HyperGraph& g1, const HyperGraph& g2, Coupling& c,
                               int rounds = 3) {
    double cost = coupling_cost(g1, g2, c);
    const int n = c.size();
    for (int round = 0; round < rounds; ++round) {
        bool improved = false;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                // rectangle: cells a,b plus mirrored cells d,e with
                // left(d)=left(a), right(d)=right(b), left(e)=left(b), right(e)=right(a)
                int d = -1, e = -1;
                for (int i = 0; i < n; ++i) {
                    if (c.left[i] == c.left[a] && c.right[i] == c.right[b]) d = i;
                    if (c.left[i] == c.left[b] && c.right[i] == c.right[a]) e = i;
                }
                if (d < 0 || e < 0 || d == e || d == a || d == b || e == a || e == b) continue;
                double limit = std::min(c.mass[a], c.mass[b]);
                if (limit <= 1e-12) continue;
                double best_delta = 0.0, best_cost = cost;
                for (int k = 1; k <= 8; ++k) {
                    double delta = limit * k / 8.0;
                    Coupling trial = c;
                    trial.mass[a] -= delta;
                    trial.mass[b] -= delta;
                    trial.mass[d] += delta;
                    trial.mass[e] += delta;
                    double tc = coupling_cost(g1, g2, trial);
                    if (tc < best_cost - 1e-15) {
                        best_cost = tc;
                        best_delta = delta;
                    }
                }
                if (best_delta > 0.0) {
                    c.mass[a] -= best_delta;
                    c.mass[b] -= best_delta;
                    c.mass[d] += best_delta;
                    c.mass[e] += best_delta;
                    cost = best_cost;
                    improved = true;
                }
            }
        if (!improved) break;
    }
    return cost;
}

struct SideWeights {
    std::vector<double> w;  // per real vertex
    double slack = 0.0;     // mass missing from 1
};

inline SideWeights side_weights(const WeightVector& mu) {
    SideWeights s;
    s.w = mu.values();
    s.slack = std::max(0.0, 1.0 - mu.total());
    if (s.slack < 1e-12) s.slack = 0.0;
    return s;
}

/// Transport plan between the two weight vectors by a greedy north-west rule
/// over the given vertex orders; slack is a virtual last vertex on each side.
inline Coupling northwest_coupling(const SideWeights& a, const SideWeights& b,
                                   const std::vector<int>& order_a,
                                   const std::vector<int>& order_b) {
    Coupling c;
    std::size_t i = 0, j = 0;
    double ra = (order_a.empty() ? a.slack : a.w[order_a[0]]);
    double rb = (order_b.empty() ? b.slack : b.w[order_b[0]]);
    auto left_of = [&](std::size_t k) { return k < order_a.size() ? order_a[k] : -1; };
    auto right_of = [&](std::size_t k) { return k < order_b.size() ? order_b[k] : -1; };
    std::size_t na = order_a.size() + (a.slack > 0 ? 1 : 0);
    std::size_t nb = order_b.size() + (b.slack > 0 ? 1 : 0);
    while (i < na && j < nb) {
        double m = std::min(ra, rb);
        if (m > 1e-15) {
            c.left.push_back(left_of(i));
            c.right.push_back(right_of(j));
            c.mass.push_back(m);
        }
        ra -= m;
        rb -= m;
        if (ra <= 1e-15) {
            ++i;
            ra = i < order_a.size() ? a.w[order_a[i]] : a.slack;
        }
        if (rb <= 1e-15) {
            ++j;
            rb = j < order_b.size() ? b.w[order_b[j]] : b.slack;
        }
    }
    return c;
}

/// Diagonal-first coupling for equally sized vertex sets: pair v with v for
/// the shared mass, then transport the residuals (and slack) greedily.
inline Coupling diagonal_coupling(const SideWeights& a, const SideWeights& b) {
    Coupling c;
    std::vector<double> res_a = a.w, res_b = b.w;
    for (std::size_t v = 0; v < a.w.size() && v < b.w.size(); ++v) {
        double m = std::min(a.w[v], b.w[v]);
        if (m > 1e-15) {
            c.left.push_back(static_cast<int>(v));
            c.right.push_back(static_cast<int>(v));
            c.mass.push_back(m);
            res_a[v] -= m;
            res_b[v] -= m;
        }
    }
    std::vector<int> order_a, order_b;
    for (std::size_t v = 0; v < res_a.size(); ++v)
        if (res_a[v] > 1e-15) order_a.push_back(static_cast<int>(v));
    for (std::size_t v = 0; v < res_b.size(); ++v)
        if (res_b[v] > 1e-15) order_b.push_back(static_cast<int>(v));
    SideWeights ra{res_a, a.slack}, rb{res_b, b.slack};
    Coupling rest = northwest_coupling(ra, rb, order_a, order_b);
    c.left.insert(c.left.end(), rest.left.begin(), rest.left.end());
    c.right.insert(c.right.end(), rest.right.begin(), rest.right.end());
    c.mass.insert(c.mass.end(), rest.mass.begin(), rest.mass.end());
    return c;
}

inline bool within_clone_cap(const Coupling& c, int n1, int n2, int cap) {
    std::vector<int> deg1(static_cast<std::size_t>(n1), 0), deg2(static_cast<std::size_t>(n2), 0);
    for (int i = 0; i < c.size(); ++i) {
        if (c.mass[i] <= 1e-15) continue;
        if (c.left[i] >= 0) ++deg1[c.left[i]];
        if (c.right[i] >= 0) ++deg2[c.right[i]];
    }
    for (int d : deg1)
        if (d > cap) return false;
    for (int d : deg2)
        if (d > cap) return false;
    return true;
}

} // namespace detail

struct WeightedDistanceReport {
    double upper_bound = 0.0;
    bool found = false;          // no candidate respected the clone cap
    std::string coupling_kind;
};

/**
 * Upper bound on the blowup distance between two weighted graphs.  Candidate
 * couplings (bijections, diagonal-first transport, greedy transport plans)
 * are filtered by the per-vertex clone cap and locally improved; the best
 * value is reported, always as an upper bound on the true infimum.
 * Subprobability weights are handled by an isolated slack vertex carrying
 * the missing mass.
 */
inline WeightedDistanceReport weighted_distance_upper(const HyperGraph& g1, const WeightVector& mu1,
                                                      const HyperGraph& g2, const WeightVector& mu2,
                                                      int blowup_cap,
                                                      std::uint64_t seed = kDefaultSeed) {
    if (g1.uniformity() != g2.uniformity())
        throw std::invalid_argument("weighted_distance_upper: uniformity mismatch");
    if (mu1.size() != g1.vertex_count() || mu2.size() != g2.vertex_count())
        throw std::invalid_argument("weighted_distance_upper: weight size mismatch");
    if (blowup_cap < 1) throw std::invalid_argument("weighted_distance_upper: clone cap must be >= 1");

    auto a = detail::side_weights(mu1);
    auto b = detail::side_weights(mu2);
    WeightedDistanceReport report;

    auto consider = [&](detail::Coupling c, const char* kind) {
        if (!detail::within_clone_cap(c, g1.vertex_count(), g2.vertex_count(), blowup_cap)) return;
        double cost = detail::improve_coupling(g1, g2, c);
        if (!report.found || cost < report.upper_bound) {
            report.found = true;
            report.upper_bound = cost;
            report.coupling_kind = kind;
        }
    };

    // bijections between equal-size (incl. slack) sides with matching masses
    std::vector<int> lv, rv;
    for (int v = 0; v < g1.vertex_count(); ++v) lv.push_back(v);
    if (a.slack > 0) lv.push_back(-1);
    for (int v = 0; v < g2.vertex_count(); ++v) rv.push_back(v);
    if (b.slack > 0) rv.push_back(-1);
    auto mass_of = [](const detail::SideWeights& s, int v) { return v < 0 ? s.slack : s.w[v]; };
    if (lv.size() == rv.size() && lv.size() <= 8) {
        std::vector<int> perm = rv;
        std::sort(perm.begin(), perm.end());
        do {
            bool feasible = true;
            for (std::size_t i = 0; i < lv.size() && feasible; ++i)
                feasible = std::abs(mass_of(a, lv[i]) - mass_of(b, perm[i])) <= 1e-9;
            if (!feasible) continue;
            detail::Coupling c;
            for (std::size_t i = 0; i < lv.size(); ++i) {
                c.left.push_back(lv[i]);
                c.right.push_back(perm[i]);
                c.mass.push_back(mass_of(a, lv[i]));
            }
            consider(std::move(c), "bijection");
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    if (blowup_cap >= 2) {
        consider(detail::diagonal_coupling(a, b), "diagonal-transport");

        std::vector<int> order_a, order_b;
        for (int v = 0; v < g1.vertex_count(); ++v)
            if (a.w[v] > 1e-15) order_a.push_back(v);
        for (int v = 0; v < g2.vertex_count(); ++v)
            if (b.w[v] > 1e-15) order_b.push_back(v);
        auto by_weight = [](const std::vector<double>& w) {
            return [&w](int x, int y) { return w[x] > w[y] || (w[x] == w[y] && x < y); };
        };
        std::sort(order_a.begin(), order_a.end(), by_weight(a.w));
        std::sort(order_b.begin(), order_b.end(), by_weight(b.w));
        consider(detail::northwest_coupling(a, b, order_a, order_b), "sorted-transport");

        std::mt19937_64 rng(seed);
        for (int trial = 0; trial < 4; ++trial) {
            std::shuffle(order_a.begin(), order_a.end(), rng);
            std::shuffle(order_b.begin(), order_b.end(), rng);
            consider(detail::northwest_coupling(a, b, order_a, order_b), "random-transport");
        }
    }
    return report;
}

struct StabilityProbeReport {
    long long blowup_max_edges = 0;   // m(H, n) for H the complete-blowup family
    int distance = 0;
    bool distance_exact = true;
    long long lhs = 0;                // |g|
    double rhs = 0.0;                 // m - alpha * distance
    bool inequality_holds = false;
    double degree_threshold = 0.0;    // r (1 - eps) m / n
    int min_link_size = 0;
    bool degree_condition_holds = false;
};

/**
 * Data-gathering probe for the local-stability inequality against blowups of
 * the complete r-graph on t parts: evaluates |g| <= m - alpha*d and the
 * minimum-degree condition on this one instance.
 */
inline StabilityProbeReport stability_probe(const HyperGraph& g, int t, double alpha, double eps,
                                            const DistanceOptions& opt = {}) {
    StabilityProbeReport report;
    auto blow = max_blowup_edges(t, g.uniformity(), g.vertex_count());
    report.blowup_max_edges = blow.max_edges;
    auto dist = distance_to_complete_blowups(g, t, opt);
    report.distance = dist.distance;
    report.distance_exact = dist.exact;
    report.lhs = g.edge_count();
    report.rhs = static_cast<double>(blow.max_edges) - alpha * dist.distance;
    report.inequality_holds = static_cast<double>(report.lhs) <= report.rhs + 1e-9;
    const int n = g.vertex_count();
    report.degree_threshold =
        n == 0 ? 0.0 : g.uniformity() * (1.0 - eps) * static_cast<double>(blow.max_edges) / n;
    report.min_link_size = 0;
    for (Vertex v = 0; v < n; ++v) {
        int deg = g.degree(v);
        if (v == 0 || deg < report.min_link_size) report.min_link_size = deg;
    }
    report.degree_condition_holds =
        n == 0 || report.min_link_size >= report.degree_threshold - 1e-9;
    return report;
}

} // namespace extremal
