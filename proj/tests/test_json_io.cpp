#include <catch2/catch_amalgamated.hpp>

#include "extremal/json_io.hpp"
#include "extremal/random.hpp"
#include "test_helpers.hpp"

using namespace extremal;
using test_helpers::graph;

TEST_CASE("graph round-trip through JSON") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 50; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + static_cast<int>(rng() % 6);
        auto g = random_hypergraph(rng, n, r, 0.5);
        CHECK(hypergraph_from_json(to_json(g)) == g);
        // and through the text layer
        CHECK(hypergraph_from_json(parse_json_text(to_json(g).dump(), "test")) == g);
    }
}

TEST_CASE("family round-trip through JSON") {
    Family fam({complete_graph(3, 2), test_helpers::path_graph(4)});
    auto back = family_from_json(to_json(fam));
    REQUIRE(back.size() == 2);
    CHECK(back.members[0] == fam.members[0]);
    CHECK(back.members[1] == fam.members[1]);
}

TEST_CASE("parser rejects malformed graphs with positions") {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            hypergraph_from_json(parse_json_text(text, "test"));
            FAIL("expected parse_error for " << text);
        } catch (const parse_error& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error(R"({"r":2,"n":3})", "edges");
    expect_error(R"({"r":1,"n":3,"edges":[]})", "'r'");
    expect_error(R"({"r":2,"n":3,"edges":[[0,3]]})", "edges[0][1]");
    expect_error(R"({"r":2,"n":3,"edges":[[1,0]]})", "ascending");
    expect_error(R"({"r":2,"n":3,"edges":[[0,1],[0,2],[0,1]]})", "edges[2]");
    expect_error(R"({"r":2,"n":3,"edges":[[0,1,2]]})", "edges[0]");
}

TEST_CASE("syntax errors carry the reported position") {
    try {
        parse_json_text("{\"r\": 2,,}", "stdin");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("stdin") != std::string::npos);
    }
}

TEST_CASE("weight vectors round-trip and validate") {
    WeightVector mu({0.5, 0.25, 0.25});
    auto back = weights_from_json(to_json(mu));
    CHECK(back.values() == mu.values());
    CHECK(back.mode() == WeightVector::Mode::probability);
    CHECK_THROWS_AS(weights_from_json(parse_json_text(R"({"weights":[0.9,0.3]})", "t")),
                    parse_error);
    auto sub = weights_from_json(
        parse_json_text(R"({"weights":[0.1,0.2],"mode":"subprobability"})", "t"));
    CHECK(sub.mode() == WeightVector::Mode::subprobability);
}

TEST_CASE("checkpoint round-trip") {
    SearchBudget budget;
    budget.max_nodes = 4;
    Family fam({complete_graph(3, 2)});
    auto partial = turan_number(6, fam, budget);
    REQUIRE(partial.lower_bound_only);
    auto j = checkpoint_to_json(partial);
    auto back = checkpoint_from_json(j);
    CHECK(back.ex_value == partial.ex_value);
    CHECK(back.frontier.size() == partial.frontier.size());
    // resuming from the parsed checkpoint completes the search
    auto rest = turan_number(6, fam, SearchBudget{}, back.frontier);
    auto merged = merge_reports(back, rest);
    CHECK(merged.ex_value == 9);
}

TEST_CASE("spike report serialization carries the witnesses") {
    auto ext = extension(test_helpers::path_expansion_3());
    auto report = is_t_spike(ext, {0, 2, 4}, 0, 3);
    auto j = to_json(report);
    CHECK(j["verdict"] == true);
    CHECK(j["condition_iii"]["families_checked"] == 2);
    CHECK(j["condition_iii"]["assignments"].size() == 2);
}
