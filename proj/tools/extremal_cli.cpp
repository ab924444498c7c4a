// Command-line front end: every subcommand reads/writes the JSON formats of
// the library and prints a short human summary on stderr.  Exit codes:
// 0 success, 1 domain falsity (failed check/probe), 2 usage or parse error,
// 3 budget exhaustion.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "extremal/acceptance.hpp"
#include "extremal/json_io.hpp"
#include "extremal/random.hpp"

using namespace extremal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Defaults {
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
    int restarts = 32;
    int max_iters = 100000;
    double tol = 1e-10;
    long long max_nodes = 50'000'000;
    double max_seconds = 3600.0;
    int distance_exact_limit = 14;
    long long wext_cap = 10000;
};

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

HyperGraph load_graph(const std::string& path) {
    return hypergraph_from_json(parse_json_text(read_text(path), path));
}

Family load_family(const std::string& path) {
    auto j = parse_json_text(read_text(path), path);
    // a bare graph object is accepted as a one-member family
    if (j.contains("members")) return family_from_json(j);
    return Family({hypergraph_from_json(j)});
}

void emit(const json& payload, std::uint64_t seed, const std::string& out_path) {
    json j = payload;
    j["seed"] = seed;
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << j.dump(2) << "\n";
    }
}

Edge parse_edge_list(const std::string& text) {
    Edge edge;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        edge.push_back(std::stoi(item));
    }
    std::sort(edge.begin(), edge.end());
    return edge;
}

// Pre-scan for --config and fill the defaults before CLI11 sees the flags,
// so the precedence is flags > config file > built-in defaults.
Defaults load_defaults(int argc, char** argv) {
    Defaults d;
    if (const char* env = std::getenv("EXTREMAL_THREADS")) d.threads = std::atoi(env);
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (config_path.empty()) return d;
    auto j = parse_json_text(read_text(config_path), config_path);
    if (j.contains("seed")) d.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) d.threads = j["threads"].get<int>();
    if (j.contains("restarts")) d.restarts = j["restarts"].get<int>();
    if (j.contains("max_iters")) d.max_iters = j["max_iters"].get<int>();
    if (j.contains("tol")) d.tol = j["tol"].get<double>();
    if (j.contains("max_nodes")) d.max_nodes = j["max_nodes"].get<long long>();
    if (j.contains("max_seconds")) d.max_seconds = j["max_seconds"].get<double>();
    if (j.contains("distance_exact_limit"))
        d.distance_exact_limit = j["distance_exact_limit"].get<int>();
    if (j.contains("wext_cap")) d.wext_cap = j["wext_cap"].get<long long>();
    return d;
}

} // namespace

int main(int argc, char** argv) {
    Defaults defaults;
    try {
        defaults = load_defaults(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"extremal hypergraph toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    std::string config_path, out_path;
    std::uint64_t seed = defaults.seed;
    int threads = defaults.threads;
    app.add_option("--config", config_path, "JSON config with budgets and tolerances");
    app.add_option("--seed", seed, "seed for all randomized behavior");
    app.add_option("--threads", threads, "internal parallelism (also EXTREMAL_THREADS)");
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");

    // ---- construct ----------------------------------------------------
    auto* construct = app.add_subcommand("construct", "builders for the named graphs");
    construct->require_subcommand(1);
    std::string c_in;
    int c_r = 3, c_t = 4, c_n = 8;
    bool c_no_shared = false;
    long long c_cap = defaults.wext_cap;

    auto* c_ext = construct->add_subcommand("ext", "extension of a graph");
    c_ext->add_option("--in", c_in, "input graph JSON")->required();
    auto* c_wext = construct->add_subcommand("wext", "family of weak extensions");
    c_wext->add_option("--in", c_in)->required();
    c_wext->add_flag("--no-shared-fresh", c_no_shared,
                     "fresh vertices may not be shared between added edges");
    c_wext->add_option("--cap", c_cap, "guard on enumerated fillings");
    auto* c_expand = construct->add_subcommand("expand", "(r-2)-expansion of a 2-graph");
    c_expand->add_option("--in", c_in)->required();
    c_expand->add_option("--r", c_r, "target uniformity")->required();
    auto* c_pad = construct->add_subcommand("pad", "pad with isolated vertices");
    c_pad->add_option("--in", c_in)->required();
    c_pad->add_option("--t", c_t, "target order")->required();
    auto* c_complete = construct->add_subcommand("complete", "complete r-graph");
    c_complete->add_option("--t", c_t)->required();
    c_complete->add_option("--r", c_r)->required();
    auto* c_edgeless = construct->add_subcommand("edgeless", "edgeless r-graph");
    c_edgeless->add_option("--t", c_t)->required();
    c_edgeless->add_option("--r", c_r)->required();
    auto* c_blowup = construct->add_subcommand("blowup", "balanced blowup of a complete graph");
    c_blowup->add_option("--t", c_t)->required();
    c_blowup->add_option("--r", c_r)->required();
    c_blowup->add_option("--n", c_n)->required();

    // ---- check ---------------------------------------------------------
    auto* check = app.add_subcommand("check", "coloring, criticality and spike tests");
    check->require_subcommand(1);
    std::string k_graph, k_edge;
    int k_vertex = 0, k_t = 3;
    auto* k_spike = check->add_subcommand("spike", "spike test on (graph, edge, vertex)");
    k_spike->add_option("--graph", k_graph)->required();
    k_spike->add_option("--edge", k_edge, "comma-separated vertices of the edge")->required();
    k_spike->add_option("--vertex", k_vertex)->required();
    k_spike->add_option("--t", k_t)->required();
    auto* k_color = check->add_subcommand("colorable", "strong colorability");
    k_color->add_option("--graph", k_graph)->required();
    k_color->add_option("--t", k_t)->required();
    auto* k_crit = check->add_subcommand("critical", "edge criticality");
    k_crit->add_option("--graph", k_graph)->required();
    k_crit->add_option("--t", k_t)->required();

    // ---- lagrangian ------------------------------------------------------
    auto* lag_cmd = app.add_subcommand("lagrangian", "maximize the weighted edge density");
    std::string l_graph;
    bool l_certify = false;
    int l_restarts = defaults.restarts, l_max_iters = defaults.max_iters;
    double l_tol = defaults.tol;
    lag_cmd->add_option("--graph", l_graph)->required();
    lag_cmd->add_flag("--certify", l_certify, "cross-check by support enumeration");
    lag_cmd->add_option("--restarts", l_restarts);
    lag_cmd->add_option("--max-iters", l_max_iters);
    lag_cmd->add_option("--tol", l_tol);

    // ---- fcurve ----------------------------------------------------------
    auto* fcurve_cmd = app.add_subcommand("fcurve", "tabulate the comparison curve");
    int f_r = 3, f_t = 10;
    std::string f_range = "4:100";
    double f_step = 1.0;
    fcurve_cmd->add_option("--r", f_r)->required();
    fcurve_cmd->add_option("--t", f_t)->required();
    fcurve_cmd->add_option("--range", f_range, "x range as lo:hi");
    fcurve_cmd->add_option("--step", f_step);

    // ---- turan -----------------------------------------------------------
    auto* turan_cmd = app.add_subcommand("turan", "exact Turan number by exhaustive search");
    std::string t_forbid, t_checkpoint, t_resume;
    int t_n = 6;
    bool t_oracle = false;
    long long t_max_nodes = defaults.max_nodes;
    double t_max_seconds = defaults.max_seconds;
    turan_cmd->add_option("--n", t_n)->required();
    turan_cmd->add_option("--forbid", t_forbid, "forbidden family JSON")->required();
    turan_cmd->add_flag("--oracle-bruteforce", t_oracle, "use the all-subsets oracle instead");
    turan_cmd->add_option("--max-nodes", t_max_nodes);
    turan_cmd->add_option("--max-seconds", t_max_seconds);
    turan_cmd->add_option("--checkpoint", t_checkpoint, "write frontier here on exhaustion");
    turan_cmd->add_option("--resume", t_resume, "resume from a checkpoint file");

    // ---- distance ----------------------------------------------------------
    auto* dist_cmd = app.add_subcommand("distance", "edit distance to complete blowups");
    std::string d_graph;
    int d_t = 4, d_restarts = 20;
    bool d_exact = false, d_heuristic = false;
    dist_cmd->add_option("--graph", d_graph)->required();
    dist_cmd->add_option("--t", d_t)->required();
    dist_cmd->add_flag("--exact", d_exact, "force branch and bound");
    dist_cmd->add_flag("--heuristic", d_heuristic, "force hill climbing");
    dist_cmd->add_option("--restarts", d_restarts);

    // ---- probe ------------------------------------------------------------
    auto* probe = app.add_subcommand("probe", "data-gathering probes");
    probe->require_subcommand(1);
    std::string p_graph, p_weights;
    int p_u = 0, p_t = 4, p_samples = 50, p_max_vertices = 6, p_clone_cap = 2;
    double p_eps = 0.1, p_alpha = 1.0, p_edge_prob = 0.4;
    auto* p_vd = probe->add_subcommand("vertex-density", "vertex-density lower-bound probe");
    p_vd->add_option("--graph", p_graph)->required();
    p_vd->add_option("--weights", p_weights, "weight vector JSON")->required();
    p_vd->add_option("--u", p_u)->required();
    p_vd->add_option("--eps", p_eps)->required();
    auto* p_stab = probe->add_subcommand("stability", "local-stability inequality probe");
    p_stab->add_option("--graph", p_graph)->required();
    p_stab->add_option("--t", p_t)->required();
    p_stab->add_option("--alpha", p_alpha);
    p_stab->add_option("--eps", p_eps);
    auto* p_wext = probe->add_subcommand("wext-core", "weak-extension blowup consistency probe");
    p_wext->add_option("--graph", p_graph)->required();
    p_wext->add_option("--samples", p_samples);
    p_wext->add_option("--max-vertices", p_max_vertices);
    p_wext->add_option("--edge-prob", p_edge_prob);
    p_wext->add_option("--clone-cap", p_clone_cap);

    // ---- suite -------------------------------------------------------------
    auto* suite = app.add_subcommand("suite", "bundled verification runs");
    suite->require_subcommand(1);
    auto* suite_acc = suite->add_subcommand("acceptance", "run every acceptance criterion");
    (void)suite_acc;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        // construct
        if (construct->parsed()) {
            HyperGraph out = [&]() -> HyperGraph {
                if (c_ext->parsed()) return extension(load_graph(c_in));
                if (c_expand->parsed()) return expansion(load_graph(c_in), c_r);
                if (c_pad->parsed()) return add_isolated(load_graph(c_in), c_t);
                if (c_complete->parsed()) return complete_graph(c_t, c_r);
                if (c_edgeless->parsed()) return edgeless_graph(c_t, c_r);
                if (c_blowup->parsed()) return balanced_blowup(c_t, c_r, c_n);
                if (c_wext->parsed()) return edgeless_graph(0, 2); // unused
                throw std::runtime_error("unknown construct subcommand");
            }();
            if (c_wext->parsed()) {
                WeakExtensionOptions opt;
                opt.shared_fresh = !c_no_shared;
                opt.max_members = c_cap;
                auto fam = weak_extensions(load_graph(c_in), opt);
                emit(to_json(fam), seed, out_path);
                std::cerr << "weak extensions: " << fam.size() << " members up to isomorphism\n";
            } else {
                emit(to_json(out), seed, out_path);
                std::cerr << "constructed graph: r=" << out.uniformity() << " n="
                          << out.vertex_count() << " edges=" << out.edge_count() << "\n";
            }
            return kExitOk;
        }

        // check
        if (check->parsed()) {
            auto g = load_graph(k_graph);
            if (k_spike->parsed()) {
                auto report = is_t_spike(g, parse_edge_list(k_edge), k_vertex, k_t);
                emit(to_json(report), seed, out_path);
                std::cerr << "spike verdict: " << (report.verdict ? "true" : "false") << "\n";
                return report.verdict ? kExitOk : kExitFalse;
            }
            if (k_color->parsed()) {
                auto witness = is_strongly_colorable(g, k_t);
                json j;
                j["colorable"] = witness.has_value();
                if (witness) j["assignment"] = witness->assignment;
                emit(j, seed, out_path);
                std::cerr << "strongly " << k_t << "-colorable: " << (witness ? "yes" : "no")
                          << "\n";
                return witness ? kExitOk : kExitFalse;
            }
            if (k_crit->parsed()) {
                auto critical = is_t_critical(g, k_t);
                json j;
                j["critical"] = critical.has_value();
                j["critical_edges"] = json::array();
                if (critical)
                    for (const auto& e : *critical) j["critical_edges"].push_back(e);
                emit(j, seed, out_path);
                std::cerr << k_t << "-critical: " << (critical ? "yes" : "no") << "\n";
                return critical ? kExitOk : kExitFalse;
            }
        }

        // lagrangian
        if (lag_cmd->parsed()) {
            LagrangianConfig config;
            config.restarts = l_restarts;
            config.max_iters = l_max_iters;
            config.tol = l_tol;
            config.certify = l_certify;
            config.seed = seed;
            config.threads = threads;
            auto result = lagrangian(load_graph(l_graph), config);
            emit(to_json(result), seed, out_path);
            std::cerr << "lagrangian value: " << result.value
                      << (result.certified ? " (certified)" : "") << "\n";
            return result.converged ? kExitOk : kExitBudget;
        }

        // fcurve
        if (fcurve_cmd->parsed()) {
            auto colon = f_range.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("range must be lo:hi");
            double lo = std::stod(f_range.substr(0, colon));
            double hi = std::stod(f_range.substr(colon + 1));
            auto report = monotone_threshold(f_r, f_t, lo, hi, f_step);
            emit(to_json(report), seed, out_path);
            if (report.threshold)
                std::cerr << "monotone decreasing from x = " << *report.threshold << "\n";
            else
                std::cerr << "no monotone tail detected on the grid\n";
            return kExitOk;
        }

        // turan
        if (turan_cmd->parsed()) {
            auto fam = load_family(t_forbid);
            SearchReport report;
            if (t_oracle) {
                report = turan_bruteforce(t_n, fam);
            } else {
                SearchBudget budget;
                budget.max_nodes = t_max_nodes;
                budget.max_seconds = t_max_seconds;
                budget.threads = threads;
                if (!t_resume.empty()) {
                    auto checkpoint =
                        checkpoint_from_json(parse_json_text(read_text(t_resume), t_resume));
                    report = turan_number(t_n, fam, budget, checkpoint.frontier);
                    checkpoint.frontier.clear();
                    report = merge_reports(checkpoint, report);
                } else {
                    report = turan_number(t_n, fam, budget);
                }
            }
            emit(to_json(report), seed, out_path);
            std::cerr << "ex(" << t_n << ", family) "
                      << (report.lower_bound_only ? ">= " : "= ") << report.ex_value << " with "
                      << report.extremal.size() << " extremal graph(s), "
                      << report.nodes_explored << " nodes\n";
            if (report.lower_bound_only && !t_checkpoint.empty()) {
                std::ofstream out(t_checkpoint);
                out << checkpoint_to_json(report).dump(2) << "\n";
                std::cerr << "frontier checkpoint written to " << t_checkpoint << "\n";
            }
            return report.lower_bound_only ? kExitBudget : kExitOk;
        }

        // distance
        if (dist_cmd->parsed()) {
            DistanceOptions opt;
            opt.force_exact = d_exact;
            opt.force_heuristic = d_heuristic;
            opt.exact_limit = defaults.distance_exact_limit;
            opt.restarts = d_restarts;
            opt.seed = seed;
            auto report = distance_to_complete_blowups(load_graph(d_graph), d_t, opt);
            emit(to_json(report), seed, out_path);
            std::cerr << "distance " << (report.exact ? "= " : "<= ") << report.distance << "\n";
            return kExitOk;
        }

        // probe
        if (probe->parsed()) {
            if (p_vd->parsed()) {
                auto g = load_graph(p_graph);
                auto mu = weights_from_json(parse_json_text(read_text(p_weights), p_weights));
                LagrangianConfig config;
                config.seed = seed;
                config.threads = threads;
                auto report = vertex_density_probe(g, mu, p_u, p_eps, config);
                emit(to_json(report), seed, out_path);
                std::cerr << "premise " << report.premise << ", conclusion " << report.conclusion
                          << (report.inconclusive ? " (inconclusive)" : "") << "\n";
                return report.violation ? kExitFalse : kExitOk;
            }
            if (p_stab->parsed()) {
                DistanceOptions opt;
                opt.seed = seed;
                auto report = stability_probe(load_graph(p_graph), p_t, p_alpha, p_eps, opt);
                emit(to_json(report), seed, out_path);
                std::cerr << "inequality " << (report.inequality_holds ? "holds" : "fails")
                          << ", degree condition "
                          << (report.degree_condition_holds ? "holds" : "fails") << "\n";
                return kExitOk;
            }
            if (p_wext->parsed()) {
                auto report = wext_core_probe(load_graph(p_graph), p_samples, p_max_vertices,
                                              p_edge_prob, p_clone_cap, seed);
                emit(to_json(report), seed, out_path);
                std::cerr << report.confirmed << "/" << report.containing
                          << " containments confirmed, " << report.counterexamples.size()
                          << " counterexamples\n";
                return report.counterexamples.empty() ? kExitOk : kExitFalse;
            }
        }

        // suite
        if (suite->parsed()) {
            acceptance::Options opt;
            opt.seed = seed;
            opt.threads = threads;
            auto results = acceptance::run_all(opt);
            acceptance::print_results(std::cerr, results);
            json j;
            j["criteria"] = json::array();
            for (const auto& r : results)
                j["criteria"].push_back({{"id", r.id},
                                         {"name", r.name},
                                         {"passed", r.passed},
                                         {"seconds", r.seconds},
                                         {"detail", r.detail}});
            j["all_passed"] = acceptance::all_passed(results);
            emit(j, seed, out_path);
            return acceptance::all_passed(results) ? kExitOk : kExitFalse;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
