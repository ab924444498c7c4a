#pragma once

#include <chrono>
#include <iostream>
#include <sstream>

#include "extremal/coloring.hpp"
#include "extremal/distance.hpp"
#include "extremal/lagrangian.hpp"
#include "extremal/random.hpp"
#include "extremal/turan.hpp"

namespace extremal::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
};

struct Options {
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
};

namespace detail {

using Clock = std::chrono::steady_clock;

struct Checker {
    std::ostringstream failures;
    int failed = 0;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            if (failed < 8) failures << (failed ? "; " : "") << what;
            ++failed;
        }
    }

    CriterionResult finish(int id, std::string name, Clock::time_point start,
                           double budget_seconds) {
        CriterionResult result;
        result.id = id;
        result.name = std::move(name);
        result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (result.seconds >= budget_seconds)
            expect(false, "runtime " + std::to_string(result.seconds) + "s exceeds budget of " +
                              std::to_string(budget_seconds) + "s");
        result.passed = failed == 0;
        result.detail = failed ? failures.str() : "ok";
        return result;
    }
};

inline bool validate_spike_phi(const HyperGraph& g, Vertex v, const HyperGraph& fam,
                               const std::vector<int>& phi) {
    for (const Edge& e : g.edges()) {
        std::vector<int> colors;
        bool through_v = std::binary_search(e.begin(), e.end(), v);
        for (Vertex u : e)
            if (u != v || !through_v) colors.push_back(phi[u] - 1);
        std::sort(colors.begin(), colors.end());
        if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) return false;
        if (through_v && !fam.has_edge(Edge(colors.begin(), colors.end()))) return false;
    }
    return true;
}

} // namespace detail

/// 1: exact Turan numbers against closed forms and the all-subsets oracle.
inline CriterionResult criterion_turan_oracle(const Options&) {
    detail::Checker check;
    auto start = detail::Clock::now();
    Family k3({complete_graph(3, 2)});
    Family k4({complete_graph(4, 2)});
    for (int n = 3; n <= 8; ++n) {
        auto t0 = detail::Clock::now();
        auto report = turan_number(n, k3);
        double dt = std::chrono::duration<double>(detail::Clock::now() - t0).count();
        check.expect(report.ex_value == n * n / 4,
                     "ex(" + std::to_string(n) + ", K3) = " + std::to_string(report.ex_value));
        check.expect(dt < 60.0, "K3 run at n=" + std::to_string(n) + " too slow");
    }
    for (int n = 4; n <= 8; ++n) {
        auto t0 = detail::Clock::now();
        auto report = turan_number(n, k4);
        double dt = std::chrono::duration<double>(detail::Clock::now() - t0).count();
        long long expected = max_blowup_edges(3, 2, n).max_edges;
        check.expect(report.ex_value == expected,
                     "ex(" + std::to_string(n) + ", K4) = " + std::to_string(report.ex_value));
        check.expect(dt < 60.0, "K4 run at n=" + std::to_string(n) + " too slow");
    }
    for (const Family& fam : {k3, k4})
        for (int n = fam.members.front().vertex_count(); n <= 5; ++n) {
            auto exact = turan_number(n, fam);
            auto oracle = turan_bruteforce(n, fam);
            bool same = exact.ex_value == oracle.ex_value &&
                        exact.extremal.size() == oracle.extremal.size();
            if (same)
                for (std::size_t i = 0; i < exact.extremal.size(); ++i)
                    same = same && exact.extremal[i] == oracle.extremal[i];
            check.expect(same, "extremal mismatch with oracle at n=" + std::to_string(n));
        }
    return check.finish(1, "Turan numbers match closed forms and the subset oracle", start, 360.0);
}

/// 2: Lagrangian of complete graphs, ascent vs closed form vs enumeration.
inline CriterionResult criterion_lagrangian_closed_form(const Options& opt) {
    detail::Checker check;
    auto start = detail::Clock::now();
    for (auto [t, r] : {std::pair{3, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}, {6, 3}, {5, 4}}) {
        LagrangianConfig config;
        config.certify = true;
        config.seed = opt.seed;
        auto result = lagrangian(complete_graph(t, r), config);
        double closed = e_norm(t, r).value();
        check.expect(std::abs(result.value - closed) <= 1e-6,
                     "K_" + std::to_string(t) + "^(" + std::to_string(r) + ") value off");
        check.expect(result.enumeration_value.has_value() &&
                         std::abs(*result.enumeration_value - result.value) <= 1e-8,
                     "enumeration disagrees at K_" + std::to_string(t));
    }
    std::mt19937_64 rng(opt.seed);
    for (int trial = 0; trial < 6; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        int n = r + 2 + static_cast<int>(rng() % (9 - r - 2));
        auto g = random_hypergraph(rng, n, r, 0.6);
        LagrangianConfig config;
        config.certify = true;
        config.seed = opt.seed;
        auto result = lagrangian(g, config);
        check.expect(result.enumeration_value.has_value() &&
                         std::abs(*result.enumeration_value - result.value) <= 1e-8,
                     "random instance enumeration mismatch at trial " + std::to_string(trial));
    }
    return check.finish(2, "Lagrangian closed forms with certified agreement", start, 30.0);
}

/// 3: the comparison-curve identities.
inline CriterionResult criterion_fcurve(const Options& opt) {
    detail::Checker check;
    auto start = detail::Clock::now();
    for (int r = 3; r <= 5; ++r)
        for (int t = 5; t <= 12; ++t)
            for (int x = 4; x <= 60; ++x) {
                double lhs = fcurve(r, t, x);
                double rhs = 1.0 / r * std::pow((x + r - 4.0) / (x + r - 3.0), r - 1) *
                             fcurve(r - 1, t, x);
                check.expect(std::abs(lhs - rhs) <= 1e-12, "recurrence residual at r=" +
                                                               std::to_string(r) + ",t=" +
                                                               std::to_string(t) + ",x=" +
                                                               std::to_string(x));
            }
    for (int r = 2; r <= 3; ++r)
        for (int t = 4; t <= 8; ++t) {
            LagrangianConfig config;
            config.seed = opt.seed;
            auto lag = lagrangian(complete_graph(t + r - 3, r), config);
            check.expect(std::abs(fcurve(r, t, t) - lag.value) <= 1e-6,
                         "f(r,t,t) vs Lagrangian at r=" + std::to_string(r) +
                             ",t=" + std::to_string(t));
        }
    for (int r = 2; r <= 5; ++r)
        for (int t = 5; t <= 12; ++t) {
            auto report = monotone_threshold(r, t, 4.0, 60.0, 1.0);
            check.expect(report.threshold.has_value(), "no decreasing tail at r=" +
                                                           std::to_string(r) + ",t=" +
                                                           std::to_string(t));
        }
    return check.finish(3, "Comparison-curve recurrence, Lagrangian link, monotone tails", start,
                        60.0);
}

/// 4: sharp criticality of the named instances, with independent revalidation.
inline CriterionResult criterion_sharp_criticality(const Options&) {
    detail::Checker check;
    auto start = detail::Clock::now();

    auto run_instance = [&](const HyperGraph& g, int t, const std::string& label) {
        auto t0 = detail::Clock::now();
        auto found = is_sharply_critical(g, t);
        double dt = std::chrono::duration<double>(detail::Clock::now() - t0).count();
        check.expect(found.has_value(), label + ": no spike found");
        check.expect(dt < 120.0, label + ": too slow");
        if (!found) return;
        auto report = is_t_spike(g, found->first, found->second, t);
        check.expect(report.verdict, label + ": spike report does not re-verify");
        check.expect(is_valid_strong_coloring(extremal::detail::remove_edge(g, found->first), t,
                                              report.deletion_coloring),
                     label + ": deletion coloring invalid");
        if (g.uniformity() > 2) {
            check.expect(!report.assignments.empty(), label + ": no assignments returned");
            for (const auto& [fam, phi] : report.assignments)
                check.expect(detail::validate_spike_phi(g, found->second, fam, phi),
                             label + ": assignment fails revalidation");
        }
    };

    auto path_exp = expansion(HyperGraph(2, 3, {{0, 1}, {1, 2}}), 3);
    run_instance(extension(path_exp), 3, "Ext(path expansion) at t=3");
    run_instance(extension(edgeless_graph(4, 2)), 3, "Ext(empty 4) at t=3");
    run_instance(extension(edgeless_graph(5, 3)), 4, "Ext(empty 5, r=3) at t=4");
    run_instance(extension(edgeless_graph(6, 3)), 5, "Ext(empty 6, r=3) at t=5");

    auto k3 = complete_graph(3, 2);
    auto shortcut = is_t_spike(k3, {0, 1}, 0, 2);
    check.expect(shortcut.verdict && shortcut.two_graph_shortcut,
                 "triangle misses the 2-graph shortcut");
    return check.finish(4, "Sharp criticality of the named spike instances", start, 480.0);
}

/// 5: exact blowup distance on blowups and random edge deletions.
inline CriterionResult criterion_distance_kernel(const Options& opt) {
    detail::Checker check;
    auto start = detail::Clock::now();
    for (auto [t, r, n] : {std::tuple{3, 2, 9}, {4, 3, 8}}) {
        auto report = distance_to_complete_blowups(balanced_blowup(t, r, n), t);
        check.expect(report.exact && report.distance == 0,
                     "nonzero distance on balanced blowup");
    }
    std::mt19937_64 rng(opt.seed);
    for (int trial = 0; trial < 100; ++trial) {
        bool first = trial % 2 == 0;
        int t = first ? 3 : 4, r = first ? 2 : 3, n = first ? 9 : 8;
        int k = 1 + trial % 3;
        auto b = balanced_blowup(t, r, n);
        auto edges = b.edges();
        std::shuffle(edges.begin(), edges.end(), rng);
        edges.resize(edges.size() - static_cast<std::size_t>(k));
        auto g = HyperGraph(r, n, std::move(edges));
        auto report = distance_to_complete_blowups(g, t);
        check.expect(report.exact && report.distance == k,
                     "trial " + std::to_string(trial) + ": distance " +
                         std::to_string(report.distance) + " after deleting " + std::to_string(k));
    }
    return check.finish(5, "Blowup-distance kernel on blowups and random deletions", start, 300.0);
}

/// 6: the randomized identity and inequality suites.
inline CriterionResult criterion_property_suites(const Options& opt) {
    detail::Checker check;
    auto start = detail::Clock::now();
    std::mt19937_64 rng(opt.seed);

    // handshake identities, weighted and unweighted
    for (int trial = 0; trial < 1000; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + static_cast<int>(rng() % 6);
        auto g = random_hypergraph(rng, n, r, 0.5);
        long long links = 0;
        for (Vertex v = 0; v < n; ++v) links += static_cast<long long>(link(g, {v}).size());
        check.expect(links == static_cast<long long>(r) * g.edge_count(),
                     "unweighted handshake failed");
        auto mu = random_weights(rng, n);
        double lhs = r * density(g, mu), rhs = 0.0;
        for (Vertex v = 0; v < n; ++v) rhs += mu[v] * vertex_density(g, mu, v);
        check.expect(std::abs(lhs - rhs) <= 1e-12, "weighted handshake failed");
    }

    // density Lipschitz bound
    for (int trial = 0; trial < 1000; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        int n = r + static_cast<int>(rng() % 5);
        auto g = random_hypergraph(rng, n, r, 0.5);
        auto mu = random_weights(rng, n, WeightVector::Mode::subprobability);
        auto nu = random_weights(rng, n, WeightVector::Mode::subprobability);
        check.expect(std::abs(density(g, mu) - density(g, nu)) <=
                         l1_distance(mu, nu) + 1e-12,
                     "density Lipschitz bound failed");
    }

    // canonical-form relabeling invariance
    for (int trial = 0; trial < 1000; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + static_cast<int>(rng() % 5);
        auto g = random_hypergraph(rng, n, r, 0.5);
        auto perm = random_permutation(rng, n);
        check.expect(canonical_form(apply_relabeling(g, perm)) == canonical_form(g),
                     "canonical form not relabeling-invariant");
    }

    // Lagrangian clone invariance; certification backs the ascent with the
    // support-enumeration route, since a dozen restarts can all land in the
    // same suboptimal critical point on unlucky instances
    for (int trial = 0; trial < 1000; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        int n = r + 2 + static_cast<int>(rng() % 2);
        auto g = random_hypergraph(rng, n, r, 0.6);
        LagrangianConfig config;
        config.restarts = 8;
        config.certify = true;
        config.seed = opt.seed + trial;
        auto base = lagrangian(g, config);
        auto cloned = lagrangian(clone_vertex(g, static_cast<Vertex>(rng() % n), 2), config);
        check.expect(std::abs(base.value - cloned.value) <= 1e-6,
                     "Lagrangian changed under cloning at trial " + std::to_string(trial));
    }

    // vertex-density probe falsification
    int premise_hits = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        int n = r + 1 + static_cast<int>(rng() % 3);
        auto g = random_hypergraph(rng, n, r, 0.6);
        LagrangianConfig config;
        config.certify = true;
        config.restarts = 12;
        config.seed = opt.seed + trial;
        auto lag = lagrangian(g, config);
        WeightVector mu = trial % 2 == 0
                              ? WeightVector(lag.argmax, WeightVector::Mode::probability, 1e-6)
                              : random_weights(rng, n);
        double gamma = mu.max_weight();
        if (gamma <= 0.05) continue;
        Vertex u = 0;
        for (Vertex v = 0; v < n; ++v)
            if (mu[v] == gamma) u = v;
        auto probe = vertex_density_probe(g, mu, u, std::min(0.4, gamma), config);
        premise_hits += probe.premise && !probe.inconclusive ? 1 : 0;
        check.expect(!probe.violation, "vertex-density probe violated at trial " +
                                           std::to_string(trial));
    }
    check.expect(premise_hits > 100, "falsification run rarely reached the premise");

    return check.finish(6, "Randomized identity and inequality suites", start, 600.0);
}

/// 7: conjectured extremal blowups avoid the forbidden extensions.
inline CriterionResult criterion_freeness(const Options&) {
    detail::Checker check;
    auto start = detail::Clock::now();
    auto path_exp = expansion(HyperGraph(2, 3, {{0, 1}, {1, 2}}), 3);
    Family tree_instance({extension(path_exp)});
    for (int n = 3; n <= 12; ++n)
        check.expect(is_family_free(balanced_blowup(3, 3, n), tree_instance),
                     "blowup contains the path-expansion extension at n=" + std::to_string(n));
    Family covering_instance({extension(add_isolated(complete_graph(4, 3), 6))});
    for (int n = 5; n <= 12; ++n)
        check.expect(is_family_free(balanced_blowup(5, 3, n), covering_instance),
                     "blowup contains the padded-cover extension at n=" + std::to_string(n));
    return check.finish(7, "Freeness of the conjectured extremal blowups", start, 120.0);
}

/// 8: weak-extension / blowup consistency probe.
inline CriterionResult criterion_wext_probe(const Options& opt) {
    detail::Checker check;
    auto start = detail::Clock::now();
    auto path_exp = expansion(HyperGraph(2, 3, {{0, 1}, {1, 2}}), 3);
    auto report = wext_core_probe(path_exp, 50, 6, 0.4, 2, opt.seed);
    check.expect(report.samples == 50, "probe did not run all samples");
    check.expect(report.counterexamples.empty(),
                 std::to_string(report.counterexamples.size()) + " counterexamples");
    check.expect(report.containing == report.confirmed, "containment not confirmed by blowups");
    check.expect(report.containing > 0, "no sample contained a weak extension");
    return check.finish(8, "Weak-extension consistency under small blowups", start, 300.0);
}

inline std::vector<CriterionResult> run_all(const Options& opt = {}) {
    return {
        criterion_turan_oracle(opt),       criterion_lagrangian_closed_form(opt),
        criterion_fcurve(opt),             criterion_sharp_criticality(opt),
        criterion_distance_kernel(opt),    criterion_property_suites(opt),
        criterion_freeness(opt),           criterion_wext_probe(opt),
    };
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.passed; });
}

inline void print_results(std::ostream& os, const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        os << "criterion " << r.id << " [" << (r.passed ? "PASS" : "FAIL") << "] " << r.name
           << " (" << r.seconds << " s)";
        if (!r.passed) os << " -- " << r.detail;
        os << "\n";
    }
}

} // namespace extremal::acceptance
