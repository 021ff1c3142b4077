#include <doctest.h>

#include "fixtures.hpp"
#include "gridmix/design_io.hpp"
#include "gridmix/library.hpp"

using namespace gridmix;

TEST_CASE("generated designs are valid, pruned and simulate") {
    for (std::uint64_t seed = 40; seed < 60; ++seed) {
        const GridDesign d = random_grid(fixtures::paper_params(seed));
        CHECK(validate(d).empty());
        CHECK(prune_dead_ends(d) == d);
        CHECK_NOTHROW(simulate(d));
    }
}

TEST_CASE("generation is deterministic per seed") {
    GeneratorParams p = fixtures::paper_params(42);
    p.placement = Placement::Random;
    CHECK(serialize_design(random_grid(p)) == serialize_design(random_grid(p)));
    GeneratorParams q = p;
    q.seed = 43;
    CHECK(serialize_design(random_grid(p)) != serialize_design(random_grid(q)));
}

TEST_CASE("density one gives the full grid") {
    GeneratorParams p = fixtures::paper_params(1);
    p.density = 1.0;
    p.rows = 5;
    p.cols = 7;
    const GridDesign d = random_grid(p);
    CHECK(d.channel_count() == GridDesign::full(5, 7).channel_count());
}

TEST_CASE("spread placement uses the outer columns") {
    const GridDesign d = random_grid(fixtures::paper_params(1));
    CHECK(d.inlets.front().col == 0);
    CHECK(d.inlets.back().col == 11);
    CHECK(d.outlets == std::vector<int>{0, 6, 11});
}

TEST_CASE("impossible parameters") {
    GeneratorParams p = fixtures::paper_params(1);
    SUBCASE("density too low") {
        p.density = 1e-9;
        p.max_attempts = 20;
        CHECK_THROWS_AS(random_grid(p), GenerationFailure);
    }
    SUBCASE("inlets out of order") {
        p.inlets = {{0.0, 1.0}, {1.0, 1.0}};
        CHECK_THROWS_AS(random_grid(p), Error);
    }
    SUBCASE("more outlets than columns") {
        p.outlet_count = 13;
        CHECK_THROWS_AS(random_grid(p), Error);
    }
}

TEST_CASE("library insertion filters near duplicates") {
    DesignLibrary lib;
    lib.epsilon = 0.01;
    CHECK(lib.try_insert({{0.5, 0.2}, {1, 1}, 1, {}}));
    CHECK_FALSE(lib.try_insert({{0.5, 0.2}, {1, 1}, 2, {}}));
    CHECK_FALSE(lib.try_insert({{0.505, 0.195}, {1, 1}, 3, {}}));
    CHECK(lib.try_insert({{0.5, 0.211}, {1, 1}, 4, {}}));
    CHECK(lib.entries.size() == 2);
    CHECK_THROWS_AS(lib.try_insert({{0.5}, {1}, 5, {}}), Error);
}

TEST_CASE("populate keeps pairwise distances above epsilon") {
    GeneratorParams p = fixtures::paper_params(1000);
    p.rows = 6;
    p.cols = 6;
    const DesignLibrary lib = populate_library(p, 150, 0.01, 3);
    CHECK(!lib.entries.empty());
    for (std::size_t i = 0; i < lib.entries.size(); ++i)
        for (std::size_t j = i + 1; j < lib.entries.size(); ++j)
            CHECK(max_norm_distance(lib.entries[i].concentrations, lib.entries[j].concentrations) > 0.01);
    // The worker count does not change the result.
    CHECK(write_library(populate_library(p, 150, 0.01, 1)) == write_library(lib));
}

TEST_CASE("populate edge cases") {
    GeneratorParams p = fixtures::paper_params(5);
    CHECK(populate_library(p, 1, 0.01).entries.size() == 1);
    // The same seed twice: the copy is filtered.
    DesignLibrary lib = populate_library(p, 1, 0.01);
    DesignLibrary again = populate_library(p, 1, 0.01);
    CHECK_FALSE(lib.try_insert(again.entries.front()));
}

TEST_CASE("library files round-trip") {
    GeneratorParams p = fixtures::paper_params(77);
    p.rows = 5;
    p.cols = 5;
    const DesignLibrary lib = populate_library(p, 20, 0.01, 2);
    const std::string text = write_library(lib);
    const DesignLibrary back = read_library(text);
    CHECK(back.rows == 5);
    CHECK(back.epsilon == 0.01);
    REQUIRE(back.entries.size() == lib.entries.size());
    for (std::size_t i = 0; i < lib.entries.size(); ++i) {
        CHECK(back.entries[i].concentrations == lib.entries[i].concentrations);
        CHECK(back.entries[i].design == lib.entries[i].design);
    }
    CHECK(write_library(back) == text);
}

TEST_CASE("malformed library files") {
    CHECK_THROWS_AS(read_library(""), ParseError);
    CHECK_THROWS_AS(read_library(R"({"schema":"other","version":1,"rows":1,"cols":1,"epsilon":0.01})"), ParseError);
    try {
        read_library("{\"schema\":\"gridmix-library\",\"version\":1,\"rows\":1,\"cols\":1,\"epsilon\":0.01}\n{oops\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("queries return nearest entries first") {
    DesignLibrary lib;
    lib.try_insert({{0.1, 0.1}, {1, 1}, 1, {}});
    lib.try_insert({{0.5, 0.5}, {1, 1}, 2, {}});
    lib.try_insert({{0.9, 0.1}, {1, 1}, 3, {}});
    lib.try_insert({{0.3, 0.7}, {1, 1}, 4, {}});
    SUBCASE("exact match first") {
        const auto hits = query_library(lib, std::vector<double>{0.5, 0.5}, 2);
        REQUIRE(hits.size() == 2);
        CHECK(hits[0].index == 1);
        CHECK(hits[0].distance == 0.0);
    }
    SUBCASE("k beyond size") { CHECK(query_library(lib, std::vector<double>{0.0, 0.0}, 10).size() == 4); }
    SUBCASE("ties keep insertion order") {
        // Distance 0.4 to both {0.1,0.1} and {0.9,0.1}.
        const auto hits = query_library(lib, std::vector<double>{0.5, 0.1}, 4);
        CHECK(hits[1].distance == doctest::Approx(hits[2].distance));
        CHECK(hits[1].index < hits[2].index);
    }
    SUBCASE("distances never decrease") {
        std::mt19937_64 rng(4);
        for (int i = 0; i < 50; ++i) {
            const std::vector<double> t{unit_uniform(rng), unit_uniform(rng)};
            const auto hits = query_library(lib, t, 4);
            for (std::size_t k = 0; k + 1 < hits.size(); ++k) CHECK(hits[k].distance <= hits[k + 1].distance);
        }
    }
    SUBCASE("empty library") { CHECK(query_library(DesignLibrary{}, std::vector<double>{0.1}, 3).empty()); }
}
