#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <mutex>
#include <optional>
#include <random>
#include <set>

#include "extremal/canonical.hpp"
#include "extremal/constructions.hpp"
#include "extremal/subgraph.hpp"

namespace extremal {

struct SearchBudget {
    long long max_nodes = 50'000'000;
    double max_seconds = 3600.0;
    int threads = 1;
};

struct SearchReport {
    int n = 0;
    int uniformity = 0;
    std::vector<std::string> forbidden_digest; // canonical keys of the family
    int ex_value = 0;
    std::vector<HyperGraph> extremal;          // canonical forms, sorted
    long long nodes_explored = 0;
    double wall_seconds = 0.0;
    bool lower_bound_only = false;             // budget ran out
    std::vector<HyperGraph> frontier;          // unexplored subtree roots on abort
};

namespace detail {

struct TuranSearch {
    int n, r;
    const Family& fam;
    std::vector<Edge> universe;                 // all possible edges, sorted
    long long max_nodes;
    std::chrono::steady_clock::time_point deadline;
    std::atomic<long long> nodes{0};
    std::atomic<int> best{0};
    std::atomic<bool> aborted{false};
    std::mutex collect_mutex;
    std::vector<HyperGraph> extremal;
    std::vector<HyperGraph> frontier;

    TuranSearch(int nn, int rr, const Family& f, const SearchBudget& budget)
        : n(nn), r(rr), fam(f), max_nodes(budget.max_nodes) {
        universe = complete_graph(n, r).edges();
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget.max_seconds));
    }

    bool out_of_budget() {
        if (aborted.load(std::memory_order_relaxed)) return true;
        if (nodes.load(std::memory_order_relaxed) > max_nodes ||
            std::chrono::steady_clock::now() > deadline) {
            aborted.store(true, std::memory_order_relaxed);
            return true;
        }
        return false;
    }

    bool extends_free(const HyperGraph& g, const Edge& e) const {
        std::vector<Edge> edges = g.edges();
        edges.push_back(e);
        HyperGraph h(r, n, std::move(edges));
        for (const auto& pattern : fam.members)
            if (contains_subgraph_using_edge(h, pattern, e)) return false;
        return true;
    }

    void record(const HyperGraph& g, const CanonicalCertificate& cert) {
        int m = g.edge_count();
        std::lock_guard<std::mutex> lock(collect_mutex);
        int cur = best.load(std::memory_order_relaxed);
        if (m > cur) {
            best.store(m, std::memory_order_relaxed);
            extremal.clear();
        }
        if (m >= best.load(std::memory_order_relaxed))
            extremal.emplace_back(cert.uniformity, cert.vertex_count, cert.edges);
    }

    void push_frontier(const HyperGraph& g) {
        std::lock_guard<std::mutex> lock(collect_mutex);
        frontier.push_back(g);
    }

    // Children of g: add any free edge, keep the child only when deleting its
    // canonically-last edge lands back on g (up to isomorphism).  Duplicate
    // children of the same parent are possible when the added edges lie in a
    // common orbit, so children are deduplicated locally by certificate.
    void explore(const HyperGraph& g, const CanonicalCertificate& g_cert) {
        if (out_of_budget()) {
            push_frontier(g);
            return;
        }
        nodes.fetch_add(1, std::memory_order_relaxed);
        record(g, g_cert);

        std::vector<Edge> free_edges;
        for (const Edge& e : universe)
            if (!g.has_edge(e) && extends_free(g, e)) free_edges.push_back(e);

        // remaining additions can only come from currently free edges
        if (g.edge_count() + static_cast<int>(free_edges.size()) <
            best.load(std::memory_order_relaxed))
            return;

        std::set<CanonicalCertificate> seen_children;
        for (const Edge& e : free_edges) {
            std::vector<Edge> edges = g.edges();
            edges.push_back(e);
            HyperGraph child(r, n, std::move(edges));
            auto child_cert = canonical_form(child);
            if (!seen_children.insert(child_cert).second) continue;

            // canonical deletion: the edge whose image is last in the
            // canonical edge list
            const Edge& last_canonical = child_cert.edges.back();
            Edge deleted;
            for (const Edge& ce : child.edges()) {
                Edge image;
                for (Vertex v : ce) image.push_back(child_cert.relabeling[v]);
                std::sort(image.begin(), image.end());
                if (image == last_canonical) {
                    deleted = ce;
                    break;
                }
            }
            std::vector<Edge> parent_edges;
            for (const Edge& ce : child.edges())
                if (ce != deleted) parent_edges.push_back(ce);
            HyperGraph canonical_parent(r, n, std::move(parent_edges));
            // once the budget is gone, accepted children park themselves on
            // the frontier inside explore(), so the loop may keep going
            if (canonical_form(canonical_parent) == g_cert) explore(child, child_cert);
        }
    }
};

} // namespace detail

inline std::vector<std::string> family_digest(const Family& fam) {
    std::vector<std::string> digest;
    for (const auto& g : fam.members) digest.push_back(canonical_form(g).key());
    std::sort(digest.begin(), digest.end());
    return digest;
}

/**
 * Exact Turan number by isomorph-free exhaustive generation: grow edge sets
 * one edge at a time, accepting a child only when removing its canonically
 * last edge recovers the parent.  Collects every extremal graph up to
 * isomorphism.  With a thread budget, first-level subtrees are distributed
 * over a worker pool; the merged report is deterministic either way.
 */
inline SearchReport turan_number(int n, const Family& fam, const SearchBudget& budget = {},
                                 const std::vector<HyperGraph>& resume_frontier = {}) {
    if (fam.empty()) throw std::invalid_argument("turan_number: forbidden family is empty");
    const int r = fam.uniformity();
    if (n < 0) throw std::invalid_argument("turan_number: order must be >= 0");
    auto start_time = std::chrono::steady_clock::now();

    detail::TuranSearch search(n, r, fam, budget);
    SearchReport report;
    report.n = n;
    report.uniformity = r;
    report.forbidden_digest = family_digest(fam);

    std::vector<HyperGraph> roots = resume_frontier;
    if (roots.empty()) roots.emplace_back(r, n, std::vector<Edge>{});

    // sanity: a root containing a forbidden member cannot occur on the
    // canonical-deletion path; reject malformed resume data
    for (const auto& g : roots)
        if (!is_family_free(g, fam))
            throw std::invalid_argument("turan_number: frontier graph is not family-free");

    if (budget.threads > 1 && roots.size() == 1) {
        // expand the root once so subtrees can be distributed
        const HyperGraph& root = roots.front();
        auto root_cert = canonical_form(root);
        search.nodes.fetch_add(1);
        search.record(root, root_cert);
        std::vector<HyperGraph> subtrees;
        std::set<CanonicalCertificate> seen;
        for (const Edge& e : search.universe) {
            if (!search.extends_free(root, e)) continue;
            std::vector<Edge> edges = root.edges();
            edges.push_back(e);
            HyperGraph child(r, n, std::move(edges));
            auto cert = canonical_form(child);
            if (seen.insert(cert).second) subtrees.push_back(child);
        }
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> jobs;
        int workers = std::max(1, std::min<int>(budget.threads, static_cast<int>(subtrees.size())));
        for (int w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next.fetch_add(1); i < subtrees.size();
                     i = next.fetch_add(1))
                    search.explore(subtrees[i], canonical_form(subtrees[i]));
            }));
        for (auto& j : jobs) j.get();
    } else {
        // a root reached after the budget ran out parks itself on the frontier
        for (const auto& root : roots) search.explore(root, canonical_form(root));
    }

    report.nodes_explored = search.nodes.load();
    report.ex_value = search.best.load();
    report.lower_bound_only = search.aborted.load();
    report.frontier = search.frontier;
    std::vector<HyperGraph> extremal;
    for (const auto& g : search.extremal)
        if (g.edge_count() == report.ex_value) extremal.push_back(g);
    std::sort(extremal.begin(), extremal.end());
    extremal.erase(std::unique(extremal.begin(), extremal.end()), extremal.end());
    report.extremal = std::move(extremal);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
}

/// Combine a checkpointed partial report with the report of a resumed run.
inline SearchReport merge_reports(const SearchReport& a, const SearchReport& b) {
    if (a.n != b.n || a.uniformity != b.uniformity || a.forbidden_digest != b.forbidden_digest)
        throw std::invalid_argument("merge_reports: reports describe different searches");
    SearchReport out = b;
    out.ex_value = std::max(a.ex_value, b.ex_value);
    out.extremal.clear();
    for (const auto& list : {a.extremal, b.extremal})
        for (const auto& g : list)
            if (g.edge_count() == out.ex_value) out.extremal.push_back(g);
    std::sort(out.extremal.begin(), out.extremal.end());
    out.extremal.erase(std::unique(out.extremal.begin(), out.extremal.end()), out.extremal.end());
    out.nodes_explored = a.nodes_explored + b.nodes_explored;
    out.wall_seconds = a.wall_seconds + b.wall_seconds;
    return out;
}

/**
 * Independent oracle: scan all 2^C(n,r) edge subsets.  Only feasible for
 * tiny instances; used to cross-check the canonical-augmentation search.
 */
inline SearchReport turan_bruteforce(int n, const Family& fam, int max_universe = 24) {
    if (fam.empty()) throw std::invalid_argument("turan_bruteforce: forbidden family is empty");
    const int r = fam.uniformity();
    auto start_time = std::chrono::steady_clock::now();
    std::vector<Edge> universe = complete_graph(n, r).edges();
    if (static_cast<int>(universe.size()) > max_universe)
        throw resource_limit_error("turan_bruteforce: universe exceeds guard of " +
                                   std::to_string(max_universe) + " edges");
    SearchReport report;
    report.n = n;
    report.uniformity = r;
    report.forbidden_digest = family_digest(fam);
    std::set<CanonicalCertificate> extremal_certs;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe.size()); ++mask) {
        if (__builtin_popcountll(mask) < report.ex_value) continue;
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) edges.push_back(universe[i]);
        HyperGraph g(r, n, std::move(edges));
        ++report.nodes_explored;
        if (!is_family_free(g, fam)) continue;
        if (g.edge_count() > report.ex_value) {
            report.ex_value = g.edge_count();
            extremal_certs.clear();
        }
        if (g.edge_count() == report.ex_value) extremal_certs.insert(canonical_form(g));
    }
    for (const auto& cert : extremal_certs)
        report.extremal.emplace_back(cert.uniformity, cert.vertex_count, cert.edges);
    std::sort(report.extremal.begin(), report.extremal.end());
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
}

struct BlowupEdgeReport {
    long long max_edges = 0;
    std::vector<int> parts;        // an optimal partition, descending sizes
    bool balanced_optimal = false; // the balanced partition attains the max
    bool tie = false;              // several distinct partitions attain it
};

/**
 * Maximum edge count of a blowup of the complete r-graph on t parts with n
 * vertices: maximize the degree-r elementary symmetric polynomial over
 * partitions of n into at most t parts.
 */
inline BlowupEdgeReport max_blowup_edges(int t, int r, int n) {
    if (t < r || r < 1) throw std::invalid_argument("max_blowup_edges: need t >= r >= 1");
    if (n < 0 || n > 200) throw std::invalid_argument("max_blowup_edges: order out of range");
    auto esym = [&](const std::vector<int>& parts) {
        // dp over e_k values
        std::vector<long long> e(static_cast<std::size_t>(r) + 1, 0);
        e[0] = 1;
        for (int p : parts)
            for (int k = r; k >= 1; --k) e[k] += e[k - 1] * p;
        return e[static_cast<std::size_t>(r)];
    };
    std::vector<int> balanced;
    for (int i = 0; i < t; ++i) balanced.push_back(n / t + (i < n % t ? 1 : 0));
    long long balanced_value = esym(balanced);

    BlowupEdgeReport report;
    report.max_edges = balanced_value;
    report.parts = balanced;
    report.balanced_optimal = true;
    std::sort(report.parts.rbegin(), report.parts.rend());

    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (static_cast<int>(cur.size()) == t || remaining == 0) {
            if (remaining != 0) return;
            long long value = esym(cur);
            if (value > report.max_edges) {
                report.max_edges = value;
                report.parts = cur;
                report.tie = false;
                report.balanced_optimal = false;
            } else if (value == report.max_edges && cur != report.parts &&
                       !(value == balanced_value && cur == report.parts)) {
                std::vector<int> padded = cur;
                while (static_cast<int>(padded.size()) < t) padded.push_back(0);
                std::vector<int> bal_sorted = balanced;
                std::sort(bal_sorted.rbegin(), bal_sorted.rend());
                std::vector<int> cur_sorted = padded;
                std::sort(cur_sorted.rbegin(), cur_sorted.rend());
                if (cur_sorted != bal_sorted) report.tie = true;
            }
            return;
        }
        int slots = t - static_cast<int>(cur.size());
        for (int p = std::min(remaining, max_part); p >= (remaining + slots - 1) / slots; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    if (report.max_edges == balanced_value) {
        report.balanced_optimal = true;
        report.parts = balanced;
        std::sort(report.parts.rbegin(), report.parts.rend());
    }
    while (static_cast<int>(report.parts.size()) < t) report.parts.push_back(0);
    return report;
}

struct ExtremalClaimVerdict {
    bool candidate_free = false;
    bool matches = false;          // candidate edge count equals the exact maximum
    bool strictly_beaten = false;  // some free graph has more edges
    bool unique = false;           // candidate is the single extremal graph
    SearchReport search;
};

/// Checks a conjectured extremal graph against the exact search at this n.
inline ExtremalClaimVerdict verify_extremal_claim(int n, const Family& fam,
                                                  const HyperGraph& candidate,
                                                  const SearchBudget& budget = {}) {
    if (candidate.vertex_count() != n)
        throw std::invalid_argument("verify_extremal_claim: candidate order mismatch");
    ExtremalClaimVerdict verdict;
    verdict.candidate_free = is_family_free(candidate, fam);
    verdict.search = turan_number(n, fam, budget);
    verdict.matches = verdict.candidate_free && candidate.edge_count() == verdict.search.ex_value;
    verdict.strictly_beaten = candidate.edge_count() < verdict.search.ex_value;
    if (verdict.matches && verdict.search.extremal.size() == 1) {
        auto cert = canonical_form(candidate);
        verdict.unique = HyperGraph(cert.uniformity, cert.vertex_count, cert.edges) ==
                         verdict.search.extremal.front();
    }
    return verdict;
}

struct WExtProbeReport {
    int samples = 0;
    int containing = 0;            // samples containing some weak extension
    int confirmed = 0;             // of those, a small blowup contains the extension
    int free_checked = 0;          // weak-extension-free samples cross-checked
    std::vector<HyperGraph> counterexamples;
};

/**
 * Randomized consistency probe relating weak extensions and blowups: when a
 * sample contains a weak extension of g, some blowup with per-vertex clone
 * count <= clone_cap must contain the plain extension; when it is free of
 * all weak extensions, no such blowup may contain it.
 */
inline WExtProbeReport wext_core_probe(const HyperGraph& g, int samples, int max_vertices,
                                       double edge_prob, int clone_cap, std::uint64_t seed) {
    WExtProbeReport report;
    Family wext = weak_extensions(g);
    HyperGraph ext = extension(g);
    const int r = g.uniformity();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(std::max(r, 3), max_vertices);
    std::bernoulli_distribution keep(edge_prob);
    for (int s = 0; s < samples; ++s) {
        int n = pick_n(rng);
        std::vector<Edge> universe = complete_graph(n, r).edges();
        std::vector<Edge> edges;
        for (const Edge& e : universe)
            if (keep(rng)) edges.push_back(e);
        HyperGraph h(r, n, std::move(edges));
        ++report.samples;
        bool contains_wext = !is_family_free(h, wext);
        bool blowup_contains_ext = false;
        std::vector<int> counts(static_cast<std::size_t>(n), 1);
        auto rec = [&](auto&& self, int v) -> bool {
            if (v == n) {
                HyperGraph b = blowup(h, counts);
                return contains_subgraph(b, ext);
            }
            for (int c = 1; c <= clone_cap; ++c) {
                counts[v] = c;
                if (self(self, v + 1)) return true;
            }
            counts[v] = 1;
            return false;
        };
        blowup_contains_ext = rec(rec, 0);
        if (contains_wext) {
            ++report.containing;
            if (blowup_contains_ext)
                ++report.confirmed;
            else
                report.counterexamples.push_back(h);
        } else {
            ++report.free_checked;
            if (blowup_contains_ext) report.counterexamples.push_back(h);
        }
    }
    return report;
}

} // namespace extremal
