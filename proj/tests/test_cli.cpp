// End-to-end runs of the command-line binary, including validation of every
// emitted report against the schema files shipped in schemas/.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "extremal/json_io.hpp"

using namespace extremal;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = std::string(std::tmpnam(nullptr)) + ".out";
    std::string cmd = std::string(EXTREMAL_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.stdout_text = ss.str();
    std::remove(out_file.c_str());
    return result;
}

std::string write_temp(const std::string& contents) {
    std::string path = std::string(std::tmpnam(nullptr)) + ".json";
    std::ofstream out(path);
    out << contents;
    return path;
}

// Minimal JSON-Schema checker covering the subset the shipped schemas use:
// type, required, properties, items, minimum, enum.
bool schema_check(const json& schema, const json& value, std::string& why) {
    if (schema.contains("type")) {
        std::string type = schema["type"].get<std::string>();
        bool ok = (type == "object" && value.is_object()) ||
                  (type == "array" && value.is_array()) ||
                  (type == "integer" && value.is_number_integer()) ||
                  (type == "number" && value.is_number()) ||
                  (type == "string" && value.is_string()) ||
                  (type == "boolean" && value.is_boolean());
        if (!ok) {
            why = "expected type " + type + " got " + value.dump().substr(0, 40);
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& option : schema["enum"]) ok = ok || option == value;
        if (!ok) {
            why = "value not in enum";
            return false;
        }
    }
    if (schema.contains("minimum") && value.is_number()) {
        if (value.get<double>() < schema["minimum"].get<double>()) {
            why = "value below minimum";
            return false;
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                why = "missing required key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties") && value.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key))
                if (!schema_check(sub, value[key], why)) {
                    why = key + ": " + why;
                    return false;
                }
    if (schema.contains("items") && value.is_array())
        for (const auto& element : value)
            if (!schema_check(schema["items"], element, why)) {
                why = "items: " + why;
                return false;
            }
    return true;
}

void expect_schema(const std::string& schema_name, const std::string& payload) {
    std::ifstream in(std::string(EXTREMAL_SCHEMA_DIR) + "/" + schema_name);
    REQUIRE(in.good());
    json schema = json::parse(in);
    json value = json::parse(payload);
    std::string why;
    INFO(schema_name << ": " << why);
    CHECK(schema_check(schema, value, why));
    // every report prints the seed it ran under
    CHECK(value.contains("seed"));
}

const std::string kPath3 = R"({"r":2,"n":3,"edges":[[0,1],[1,2]]})";
const std::string kTriangleFam = R"({"members":[{"r":2,"n":3,"edges":[[0,1],[0,2],[1,2]]}]})";

} // namespace

TEST_CASE("construct pipeline round-trips through files") {
    auto path3 = write_temp(kPath3);
    auto expanded = run_cli("construct expand --in " + path3 + " --r 3");
    REQUIRE(expanded.exit_code == 0);
    expect_schema("hypergraph.schema.json", expanded.stdout_text);
    auto texp = write_temp(expanded.stdout_text);
    auto ext = run_cli("construct ext --in " + texp);
    REQUIRE(ext.exit_code == 0);
    auto g = hypergraph_from_json(json::parse(ext.stdout_text));
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 3);
    // parse(emit(g)) is the identity on the emitted graph
    auto extfile = write_temp(ext.stdout_text);
    auto again = run_cli("construct pad --in " + extfile + " --t 5");
    REQUIRE(again.exit_code == 0);
    CHECK(hypergraph_from_json(json::parse(again.stdout_text)) == g);
}

TEST_CASE("construct subcommands emit valid graphs") {
    for (const std::string& args :
         {std::string("construct complete --t 4 --r 3"), std::string("construct edgeless --t 5 --r 3"),
          std::string("construct blowup --t 4 --r 3 --n 8")}) {
        auto result = run_cli(args);
        REQUIRE(result.exit_code == 0);
        expect_schema("hypergraph.schema.json", result.stdout_text);
    }
    auto wext = run_cli("construct wext --in " + write_temp(kPath3));
    REQUIRE(wext.exit_code == 0);
    expect_schema("family.schema.json", wext.stdout_text);
}

TEST_CASE("spike check pipes verdicts into exit codes") {
    auto path3 = write_temp(kPath3);
    auto texp = write_temp(run_cli("construct expand --in " + path3 + " --r 3").stdout_text);
    auto ext_text = run_cli("construct ext --in " + texp).stdout_text;
    auto extfile = write_temp(ext_text);
    auto good = run_cli("check spike --graph " + extfile + " --edge 0,2,4 --vertex 0 --t 3");
    CHECK(good.exit_code == 0);
    expect_schema("spike_report.schema.json", good.stdout_text);
    auto bad = run_cli("check spike --graph " + extfile + " --edge 0,2,4 --vertex 4 --t 3");
    CHECK(bad.exit_code == 1);
    auto usage = run_cli("check spike --graph " + extfile + " --edge 0,1 --vertex 0 --t 3");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("colorable and critical checks") {
    auto k3 = write_temp(R"({"r":2,"n":3,"edges":[[0,1],[0,2],[1,2]]})");
    auto yes = run_cli("check colorable --graph " + k3 + " --t 3");
    CHECK(yes.exit_code == 0);
    expect_schema("coloring_report.schema.json", yes.stdout_text);
    auto no = run_cli("check colorable --graph " + k3 + " --t 2");
    CHECK(no.exit_code == 1);
    auto crit = run_cli("check critical --graph " + k3 + " --t 2");
    CHECK(crit.exit_code == 0);
    expect_schema("criticality_report.schema.json", crit.stdout_text);
    CHECK(json::parse(crit.stdout_text)["critical_edges"].size() == 3);
}

TEST_CASE("lagrangian command certifies the triangle") {
    auto k3 = write_temp(R"({"r":2,"n":3,"edges":[[0,1],[0,2],[1,2]]})");
    auto result = run_cli("lagrangian --graph " + k3 + " --certify");
    REQUIRE(result.exit_code == 0);
    expect_schema("lagrangian_result.schema.json", result.stdout_text);
    auto j = json::parse(result.stdout_text);
    CHECK(std::abs(j["value"].get<double>() - 1.0 / 3) < 1e-6);
    CHECK(j["certified"] == true);
}

TEST_CASE("fcurve command reports a monotone tail") {
    auto result = run_cli("fcurve --r 3 --t 10 --range 4:40");
    REQUIRE(result.exit_code == 0);
    expect_schema("fcurve_report.schema.json", result.stdout_text);
    CHECK(json::parse(result.stdout_text).contains("threshold"));
}

TEST_CASE("turan command with and without the oracle") {
    auto fam = write_temp(kTriangleFam);
    auto fast = run_cli("turan --n 5 --forbid " + fam);
    REQUIRE(fast.exit_code == 0);
    expect_schema("search_report.schema.json", fast.stdout_text);
    auto oracle = run_cli("turan --n 5 --forbid " + fam + " --oracle-bruteforce");
    REQUIRE(oracle.exit_code == 0);
    auto a = json::parse(fast.stdout_text), b = json::parse(oracle.stdout_text);
    CHECK(a["ex_value"] == b["ex_value"]);
    CHECK(a["ex_value"] == 6);
    CHECK(a["extremal"] == b["extremal"]);
}

TEST_CASE("turan budget exhaustion writes a resumable checkpoint") {
    auto fam = write_temp(kTriangleFam);
    std::string ckpt = std::string(std::tmpnam(nullptr)) + ".ckpt";
    auto partial = run_cli("turan --n 6 --forbid " + fam + " --max-nodes 5 --checkpoint " + ckpt);
    CHECK(partial.exit_code == 3);
    CHECK(json::parse(partial.stdout_text)["lower_bound_only"] == true);
    auto resumed = run_cli("turan --n 6 --forbid " + fam + " --resume " + ckpt);
    REQUIRE(resumed.exit_code == 0);
    CHECK(json::parse(resumed.stdout_text)["ex_value"] == 9);
    std::remove(ckpt.c_str());
}

TEST_CASE("distance command modes") {
    auto k3 = write_temp(R"({"r":2,"n":3,"edges":[[0,1],[0,2],[1,2]]})");
    auto exact = run_cli("distance --graph " + k3 + " --t 2 --exact");
    REQUIRE(exact.exit_code == 0);
    expect_schema("distance_report.schema.json", exact.stdout_text);
    auto j = json::parse(exact.stdout_text);
    CHECK(j["distance"] == 1);
    CHECK(j["exact"] == true);
    auto heur = run_cli("distance --graph " + k3 + " --t 2 --heuristic");
    REQUIRE(heur.exit_code == 0);
    CHECK(json::parse(heur.stdout_text)["exact"] == false);
}

TEST_CASE("probe commands") {
    auto k3 = write_temp(R"({"r":2,"n":3,"edges":[[0,1],[0,2],[1,2]]})");
    auto weights = write_temp(R"({"weights":[0.34,0.33,0.33]})");
    auto vd = run_cli("probe vertex-density --graph " + k3 + " --weights " + weights +
                      " --u 0 --eps 0.3");
    REQUIRE(vd.exit_code == 0);
    expect_schema("vertex_density_probe.schema.json", vd.stdout_text);

    auto blowup = write_temp(run_cli("construct blowup --t 4 --r 3 --n 8").stdout_text);
    auto stab = run_cli("probe stability --graph " + blowup + " --t 4");
    REQUIRE(stab.exit_code == 0);
    expect_schema("stability_probe.schema.json", stab.stdout_text);
    CHECK(json::parse(stab.stdout_text)["inequality_holds"] == true);

    auto path3 = write_temp(kPath3);
    auto texp = write_temp(run_cli("construct expand --in " + path3 + " --r 3").stdout_text);
    auto wext = run_cli("probe wext-core --graph " + texp + " --samples 6 --max-vertices 5");
    REQUIRE(wext.exit_code == 0);
    expect_schema("wext_probe.schema.json", wext.stdout_text);
}

TEST_CASE("config file sets defaults and flags override it") {
    auto fam = write_temp(kTriangleFam);
    auto config = write_temp(R"({"max_nodes": 5, "seed": 7})");
    auto limited = run_cli("turan --n 6 --forbid " + fam + " --config " + config);
    CHECK(limited.exit_code == 3);  // config-supplied budget bites
    CHECK(json::parse(limited.stdout_text)["seed"] == 7);
    auto overridden =
        run_cli("turan --n 6 --forbid " + fam + " --config " + config + " --max-nodes 100000");
    CHECK(overridden.exit_code == 0);  // flag beats the config file
}

TEST_CASE("malformed input yields a position-precise error and exit 2") {
    auto bad = write_temp(R"({"r":2,"n":3,"edges":[[0,7]]})");
    auto result = run_cli("check colorable --graph " + bad + " --t 2");
    CHECK(result.exit_code == 2);
    auto syntax = write_temp("{],");
    CHECK(run_cli("check colorable --graph " + syntax + " --t 2").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}
