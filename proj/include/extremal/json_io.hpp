#pragma once

#include <string>

#include "json.hpp"

#include "extremal/coloring.hpp"
#include "extremal/distance.hpp"
#include "extremal/hypergraph.hpp"
#include "extremal/lagrangian.hpp"
#include "extremal/turan.hpp"

namespace extremal {

using nlohmann::json;

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json to_json(const HyperGraph& g) {
    json j;
    j["r"] = g.uniformity();
    j["n"] = g.vertex_count();
    j["edges"] = json::array();
    for (const Edge& e : g.edges()) j["edges"].push_back(e);
    return j;
}

/**
 * Parse {"r": int, "n": int, "edges": [[int,...],...]}; every edge must be
 * strictly ascending, in range and unique.  Errors name the offending
 * position, e.g. "edges[3][1]".
 */
inline HyperGraph hypergraph_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("hypergraph: expected an object");
    for (const char* key : {"r", "n", "edges"})
        if (!j.contains(key)) throw parse_error(std::string("hypergraph: missing field '") + key + "'");
    if (!j["r"].is_number_integer() || j["r"].get<long long>() < 2)
        throw parse_error("hypergraph: 'r' must be an integer >= 2");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0)
        throw parse_error("hypergraph: 'n' must be an integer >= 0");
    const int r = j["r"].get<int>();
    const int n = j["n"].get<int>();
    if (!j["edges"].is_array()) throw parse_error("hypergraph: 'edges' must be an array");
    std::vector<Edge> edges;
    std::size_t idx = 0;
    for (const auto& je : j["edges"]) {
        std::string at = "edges[" + std::to_string(idx) + "]";
        if (!je.is_array() || je.size() != static_cast<std::size_t>(r))
            throw parse_error("hypergraph: " + at + " must be an array of " + std::to_string(r) +
                              " vertices");
        Edge e;
        for (std::size_t k = 0; k < je.size(); ++k) {
            if (!je[k].is_number_integer())
                throw parse_error("hypergraph: " + at + "[" + std::to_string(k) + "] must be an integer");
            long long v = je[k].get<long long>();
            if (v < 0 || v >= n)
                throw parse_error("hypergraph: " + at + "[" + std::to_string(k) + "]: vertex " +
                                  std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
            if (!e.empty() && v <= e.back())
                throw parse_error("hypergraph: " + at + "[" + std::to_string(k) +
                                  "]: vertices must be strictly ascending");
            e.push_back(static_cast<Vertex>(v));
        }
        edges.push_back(std::move(e));
        ++idx;
    }
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        // report the later of the two occurrences
        auto first = std::find(edges.begin(), edges.end(), *dup);
        auto second = std::find(first + 1, edges.end(), *dup);
        throw parse_error("hypergraph: edges[" +
                          std::to_string(std::distance(edges.begin(), second)) +
                          "] duplicates another edge");
    }
    return HyperGraph(r, n, std::move(edges));
}

inline json to_json(const Family& fam) {
    json j;
    j["members"] = json::array();
    for (const auto& g : fam.members) j["members"].push_back(to_json(g));
    return j;
}

inline Family family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("members") || !j["members"].is_array())
        throw parse_error("family: expected {\"members\": [...]}");
    std::vector<HyperGraph> members;
    std::size_t idx = 0;
    for (const auto& jm : j["members"]) {
        try {
            members.push_back(hypergraph_from_json(jm));
        } catch (const parse_error& e) {
            throw parse_error("family: members[" + std::to_string(idx) + "]: " + e.what());
        }
        ++idx;
    }
    if (!members.empty())
        for (const auto& g : members)
            if (g.uniformity() != members.front().uniformity())
                throw parse_error("family: members must share uniformity");
    return Family(std::move(members));
}

inline json to_json(const WeightVector& mu) {
    json j;
    j["weights"] = mu.values();
    j["mode"] = mu.mode() == WeightVector::Mode::probability ? "probability" : "subprobability";
    return j;
}

inline WeightVector weights_from_json(const json& j) {
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
        throw parse_error("weights: expected {\"weights\": [...]}");
    std::vector<double> w;
    for (const auto& x : j["weights"]) {
        if (!x.is_number()) throw parse_error("weights: entries must be numbers");
        w.push_back(x.get<double>());
    }
    auto mode = WeightVector::Mode::probability;
    if (j.contains("mode")) {
        std::string m = j["mode"].get<std::string>();
        if (m == "subprobability")
            mode = WeightVector::Mode::subprobability;
        else if (m != "probability")
            throw parse_error("weights: mode must be 'probability' or 'subprobability'");
    }
    try {
        return WeightVector(std::move(w), mode);
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("weights: ") + e.what());
    }
}

inline json to_json(const SpikeReport& r) {
    json j;
    j["condition_i"] = {{"holds", r.condition_i},
                        {"free_vertices", r.free_vertices},
                        {"deletion_coloring", r.deletion_coloring}};
    j["condition_ii"] = {{"holds", r.condition_ii}};
    json assignments = json::array();
    for (const auto& [fam, phi] : r.assignments)
        assignments.push_back({{"family", to_json(fam)}, {"phi", phi}});
    j["condition_iii"] = {{"holds", r.condition_iii},
                          {"families_checked", r.families_checked},
                          {"assignments", assignments}};
    if (r.failing_family) j["condition_iii"]["failing_family"] = to_json(*r.failing_family);
    j["two_graph_shortcut"] = r.two_graph_shortcut;
    j["verdict"] = r.verdict;
    return j;
}

inline json to_json(const LagrangianResult& r) {
    json j;
    j["value"] = r.value;
    j["argmax"] = r.argmax;
    j["restarts_used"] = r.restarts_used;
    j["kkt_residual"] = r.kkt_residual;
    j["support"] = r.support;
    j["converged"] = r.converged;
    j["certified"] = r.certified;
    if (r.enumeration_value) j["enumeration_value"] = *r.enumeration_value;
    return j;
}

inline json to_json(const SearchReport& r) {
    json j;
    j["n"] = r.n;
    j["r"] = r.uniformity;
    j["forbidden_digest"] = r.forbidden_digest;
    j["ex_value"] = r.ex_value;
    j["extremal"] = json::array();
    for (const auto& g : r.extremal) j["extremal"].push_back(to_json(g));
    j["nodes_explored"] = r.nodes_explored;
    j["wall_seconds"] = r.wall_seconds;
    j["lower_bound_only"] = r.lower_bound_only;
    return j;
}

inline json checkpoint_to_json(const SearchReport& r) {
    json j = to_json(r);
    j["frontier"] = json::array();
    for (const auto& g : r.frontier) j["frontier"].push_back(to_json(g));
    return j;
}

inline SearchReport checkpoint_from_json(const json& j) {
    SearchReport r;
    r.n = j.at("n").get<int>();
    r.uniformity = j.at("r").get<int>();
    r.forbidden_digest = j.at("forbidden_digest").get<std::vector<std::string>>();
    r.ex_value = j.at("ex_value").get<int>();
    for (const auto& jg : j.at("extremal")) r.extremal.push_back(hypergraph_from_json(jg));
    r.nodes_explored = j.at("nodes_explored").get<long long>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.lower_bound_only = j.at("lower_bound_only").get<bool>();
    for (const auto& jg : j.at("frontier")) r.frontier.push_back(hypergraph_from_json(jg));
    return r;
}

inline json to_json(const DistanceReport& r) {
    return {{"distance", r.distance}, {"partition", r.partition}, {"exact", r.exact}};
}

inline json to_json(const BlowupEdgeReport& r) {
    return {{"max_edges", r.max_edges},
            {"parts", r.parts},
            {"balanced_optimal", r.balanced_optimal},
            {"tie", r.tie}};
}

inline json to_json(const MonotoneReport& r) {
    json j;
    j["grid"] = json::array();
    for (const auto& [x, f] : r.grid) j["grid"].push_back({{"x", x}, {"f", f}});
    if (r.threshold) j["threshold"] = *r.threshold;
    return j;
}

inline json to_json(const VertexDensityProbeReport& r) {
    return {{"eps", r.eps},
            {"delta", r.delta},
            {"lambda_graph", r.lambda_graph},
            {"lambda_mu", r.lambda_mu},
            {"vertex_density_u", r.vertex_density_u},
            {"premise", r.premise},
            {"conclusion", r.conclusion},
            {"inconclusive", r.inconclusive},
            {"violation", r.violation}};
}

inline json to_json(const StabilityProbeReport& r) {
    return {{"blowup_max_edges", r.blowup_max_edges},
            {"distance", r.distance},
            {"distance_exact", r.distance_exact},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"inequality_holds", r.inequality_holds},
            {"degree_threshold", r.degree_threshold},
            {"min_link_size", r.min_link_size},
            {"degree_condition_holds", r.degree_condition_holds}};
}

inline json to_json(const WeightedDistanceReport& r) {
    return {{"upper_bound", r.upper_bound},
            {"found", r.found},
            {"coupling_kind", r.coupling_kind},
            {"is_upper_bound", true}};
}

inline json to_json(const WExtProbeReport& r) {
    json j;
    j["samples"] = r.samples;
    j["containing"] = r.containing;
    j["confirmed"] = r.confirmed;
    j["free_checked"] = r.free_checked;
    j["counterexamples"] = json::array();
    for (const auto& g : r.counterexamples) j["counterexamples"].push_back(to_json(g));
    return j;
}

/// Parse with position information from the underlying JSON parser.
inline json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(origin + ": " + e.what());
    }
}

} // namespace extremal
