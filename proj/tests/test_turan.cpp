#include <catch2/catch_amalgamated.hpp>

#include "extremal/random.hpp"
#include "extremal/turan.hpp"
#include "test_helpers.hpp"

using namespace extremal;
using test_helpers::graph;

namespace {

Family triangle_family() { return Family({complete_graph(3, 2)}); }

} // namespace

TEST_CASE("Mantel numbers at small orders") {
    for (int n = 3; n <= 6; ++n) {
        auto report = turan_number(n, triangle_family());
        CHECK(report.ex_value == n * n / 4);
        CHECK_FALSE(report.lower_bound_only);
    }
}

TEST_CASE("forbidding one complete graph on four vertices") {
    auto report = turan_number(6, Family({complete_graph(4, 2)}));
    CHECK(report.ex_value == 12);
    REQUIRE(report.extremal.size() == 1);
    CHECK(canonical_form(balanced_blowup(3, 2, 6)) == canonical_form(report.extremal.front()));
}

TEST_CASE("forbidding a single edge forces the edgeless graph") {
    auto report = turan_number(5, Family({complete_graph(3, 3)}));
    CHECK(report.ex_value == 0);
    REQUIRE(report.extremal.size() == 1);
    CHECK(report.extremal.front().edge_count() == 0);
}

TEST_CASE("search agrees with the all-subsets oracle on tiny instances") {
    std::vector<Family> families = {
        triangle_family(),
        Family({complete_graph(4, 2)}),
        Family({test_helpers::path_graph(4)}),
        Family({complete_graph(3, 3)}),
        Family({complete_graph(4, 3)}),
        Family({test_helpers::path_expansion_3()}),
    };
    for (const auto& fam : families) {
        for (int n = fam.uniformity(); n <= 5; ++n) {
            auto exact = turan_number(n, fam);
            auto oracle = turan_bruteforce(n, fam);
            INFO("n=" << n << " family digest " << family_digest(fam).front());
            CHECK(exact.ex_value == oracle.ex_value);
            REQUIRE(exact.extremal.size() == oracle.extremal.size());
            for (std::size_t i = 0; i < exact.extremal.size(); ++i)
                CHECK(exact.extremal[i] == oracle.extremal[i]);
        }
    }
}

TEST_CASE("extremal graphs are family-free with the reported size") {
    auto fam = triangle_family();
    auto report = turan_number(6, fam);
    for (const auto& g : report.extremal) {
        CHECK(g.edge_count() == report.ex_value);
        CHECK(is_family_free(g, fam));
    }
}

TEST_CASE("the Turan number is monotone in n and antitone in the family") {
    int prev = -1;
    for (int n = 3; n <= 6; ++n) {
        auto report = turan_number(n, triangle_family());
        CHECK(report.ex_value >= prev);
        prev = report.ex_value;
    }
    Family bigger({complete_graph(3, 2), test_helpers::path_graph(4)});
    CHECK(turan_number(5, bigger).ex_value <= turan_number(5, triangle_family()).ex_value);
}

TEST_CASE("budget exhaustion produces an honest partial report") {
    SearchBudget budget;
    budget.max_nodes = 5;
    auto report = turan_number(6, triangle_family(), budget);
    CHECK(report.lower_bound_only);
    CHECK_FALSE(report.frontier.empty());
    CHECK(report.ex_value < 9);  // the true value is out of reach in 5 nodes

    // resume from the checkpoint and merge
    SearchBudget full;
    auto rest = turan_number(6, triangle_family(), full, report.frontier);
    auto merged = merge_reports(report, rest);
    CHECK(merged.ex_value == 9);
    CHECK_FALSE(rest.lower_bound_only);
}

TEST_CASE("parallel search matches the serial report") {
    SearchBudget serial, parallel;
    parallel.threads = 3;
    auto a = turan_number(7, triangle_family(), serial);
    auto b = turan_number(7, triangle_family(), parallel);
    CHECK(a.ex_value == b.ex_value);
    REQUIRE(a.extremal.size() == b.extremal.size());
    for (std::size_t i = 0; i < a.extremal.size(); ++i) CHECK(a.extremal[i] == b.extremal[i]);
}

TEST_CASE("max blowup edges of small instances") {
    auto r1 = max_blowup_edges(3, 2, 4);
    CHECK(r1.max_edges == 5);
    CHECK(r1.parts == std::vector<int>{2, 1, 1});
    CHECK(r1.balanced_optimal);

    for (auto [t, r] : {std::pair{4, 2}, {4, 3}, {5, 3}})
        CHECK(max_blowup_edges(t, r, t).max_edges == binomial(t, r));

    auto r3 = max_blowup_edges(4, 3, 8);
    CHECK(r3.max_edges == 32);
    CHECK(r3.parts == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("max blowup edges equals the balanced blowup size when balanced is optimal") {
    for (auto [t, r] : {std::pair{3, 2}, {4, 3}, {5, 3}})
        for (int n = t; n <= t + 8; ++n) {
            auto report = max_blowup_edges(t, r, n);
            if (report.balanced_optimal)
                CHECK(report.max_edges == balanced_blowup(t, r, n).edge_count());
        }
}

TEST_CASE("verifying conjectured extremal graphs") {
    // the balanced 3-partite blowup is the unique maximum without K_4
    auto verdict = verify_extremal_claim(6, Family({complete_graph(4, 2)}),
                                         balanced_blowup(3, 2, 6));
    CHECK(verdict.candidate_free);
    CHECK(verdict.matches);
    CHECK(verdict.unique);
    CHECK_FALSE(verdict.strictly_beaten);

    // forbidden pattern bigger than the host: the complete graph wins trivially
    auto small = verify_extremal_claim(4, Family({extension(edgeless_graph(5, 3))}),
                                       complete_graph(4, 3));
    CHECK(small.candidate_free);
    CHECK(small.search.ex_value == 4);
    CHECK(small.matches);

    // the path-expansion instance at n = 6
    auto ext_claim = verify_extremal_claim(6, Family({extension(test_helpers::path_expansion_3())}),
                                           balanced_blowup(3, 3, 6));
    CHECK(ext_claim.candidate_free);
    CHECK(ext_claim.search.ex_value >= balanced_blowup(3, 3, 6).edge_count());
}

TEST_CASE("weak-extension consistency probe finds no counterexamples") {
    auto t = test_helpers::path_expansion_3();
    auto report = wext_core_probe(t, 12, 5, 0.45, 2, 12345);
    CHECK(report.samples == 12);
    CHECK(report.counterexamples.empty());
    CHECK(report.containing == report.confirmed);
}

TEST_CASE("empty forbidden families are rejected") {
    CHECK_THROWS_AS(turan_number(4, Family{}), std::invalid_argument);
}
