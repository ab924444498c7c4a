#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "extremal/canonical.hpp"
#include "extremal/constructions.hpp"
#include "extremal/random.hpp"
#include "test_helpers.hpp"

using namespace extremal;
using test_helpers::graph;

TEST_CASE("certificates are invariant under relabeling") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + static_cast<int>(rng() % 6);
        auto g = random_hypergraph(rng, n, r, 0.45);
        auto cert = canonical_form(g);
        for (int rep = 0; rep < 25; ++rep) {
            auto perm = random_permutation(rng, n);
            CHECK(canonical_form(apply_relabeling(g, perm)) == cert);
        }
    }
}

TEST_CASE("triangle and path have different certificates") {
    auto triangle = complete_graph(3, 2);
    auto path = test_helpers::path_graph(3);
    CHECK(canonical_form(triangle) != canonical_form(path));
    CHECK_FALSE(is_isomorphic(triangle, path));
}

TEST_CASE("the 2-graphs on 4 vertices fall into 11 isomorphism classes") {
    auto universe = complete_graph(4, 2).edges();
    std::set<CanonicalCertificate> refined, exhaustive;
    for (unsigned mask = 0; mask < (1u << universe.size()); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (mask & (1u << i)) edges.push_back(universe[i]);
        HyperGraph g(2, 4, std::move(edges));
        refined.insert(canonical_form(g));
        exhaustive.insert(canonical_form_exhaustive(g));
    }
    CHECK(refined.size() == 11);
    CHECK(exhaustive.size() == 11);
}

TEST_CASE("refinement route classifies exactly like the exhaustive route") {
    // the two certificates use different fixed total orders, so they are
    // compared as equivalence relations, pairwise over a random pool
    std::mt19937_64 rng(5);
    std::vector<HyperGraph> pool;
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + static_cast<int>(rng() % 3);
        pool.push_back(random_hypergraph(rng, n, 3, 0.5));
        pool.push_back(random_hypergraph(rng, n, 2, 0.5));
    }
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size(); ++j) {
            bool refined = canonical_form(pool[i]) == canonical_form(pool[j]);
            bool exhaustive =
                canonical_form_exhaustive(pool[i]) == canonical_form_exhaustive(pool[j]);
            CHECK(refined == exhaustive);
        }
}

TEST_CASE("certificate relabeling actually produces the canonical edges") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_hypergraph(rng, 7, 3, 0.4);
        auto cert = canonical_form(g);
        auto relabeled = apply_relabeling(g, cert.relabeling);
        CHECK(relabeled.edges() == cert.edges);
    }
}

TEST_CASE("exhaustive certificate is guarded") {
    CHECK_THROWS_AS(canonical_form_exhaustive(edgeless_graph(11, 2)), resource_limit_error);
}

TEST_CASE("isolated vertices are part of the certificate") {
    auto g1 = complete_graph(3, 2);
    auto g2 = add_isolated(g1, 4);
    CHECK(canonical_form(g1) != canonical_form(g2));
}

TEST_CASE("highly symmetric graphs canonicalize") {
    auto b = balanced_blowup(4, 3, 8);
    auto cert = canonical_form(b);
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 5; ++rep) {
        auto perm = random_permutation(rng, 8);
        CHECK(canonical_form(apply_relabeling(b, perm)) == cert);
    }
}

TEST_CASE("family deduplication keeps one member per class") {
    auto triangle = complete_graph(3, 2);
    std::mt19937_64 rng(17);
    Family fam({triangle, apply_relabeling(triangle, random_permutation(rng, 3)),
                test_helpers::path_graph(3)});
    auto dedup = deduplicate(fam);
    CHECK(dedup.size() == 2);
}
