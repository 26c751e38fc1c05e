#include <doctest.h>

#include <cstdio>
#include <set>

#include "grex/assemble.hpp"
#include "grex/enumerate.hpp"
#include "grex/graph6.hpp"
#include "grex/generators.hpp"
#include "grex/isomorphism.hpp"
#include "grex/methods.hpp"

using namespace grex;

TEST_CASE("method parsing round-trips") {
    for (const std::string name : {"1wl", "kwl:3", "kfwl:2", "s3", "s4", "n1", "n2", "m1"})
        CHECK(method_name(parse_method(name)) == name);
    CHECK_THROWS_AS(parse_method("2wl"), std::invalid_argument);
    CHECK_THROWS_AS(parse_method("kwl:1"), std::invalid_argument);
}

TEST_CASE("collision pairs equal the all-pairs verdict oracle at n=5") {
    auto graphs = enumerate_nonisomorphic(5);
    auto pairs = find_collision_pairs(graphs, WlConfig::wl1());
    std::set<std::pair<int, int>> from_buckets(pairs.begin(), pairs.end());

    std::set<std::pair<int, int>> oracle;
    for (int i = 0; i < int(graphs.size()); ++i)
        for (int j = i + 1; j < int(graphs.size()); ++j)
            if (!distinguishes(WlConfig::wl1(), graphs[i], graphs[j])) oracle.insert({i, j});
    CHECK(from_buckets == oracle);
}

TEST_CASE("collision buckets see identical graphs together") {
    std::vector<Graph> graphs{make_cycle(6), make_cycle(6)};
    auto pairs = find_collision_pairs(graphs, WlConfig::wl1());
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("basic assembly: audited, seeded, deterministic") {
    AssembleConfig cfg;
    cfg.max_n = 7;
    cfg.count = 10;
    cfg.seed = 100;
    auto res = assemble_category(Category::Basic, cfg);
    REQUIRE(res.pairs.size() == 10);
    std::set<std::string> seen;
    for (const auto& p : res.pairs) {
        CHECK(p.audit.wl1_indistinguishable);
        CHECK(p.audit.non_isomorphic);
        CHECK_FALSE(regular_degree(p.g).has_value());
        CHECK_FALSE(regular_degree(p.h).has_value());
        // no graph reuse
        CHECK(seen.insert(write_graph6(p.g)).second);
        CHECK(seen.insert(write_graph6(p.h)).second);
        CHECK(p.category == "basic");
        CHECK(p.wl_difficulty == "1WL");
    }

    auto rerun = assemble_category(Category::Basic, cfg);
    REQUIRE(rerun.pairs.size() == res.pairs.size());
    for (std::size_t i = 0; i < res.pairs.size(); ++i) {
        CHECK(write_graph6(rerun.pairs[i].g) == write_graph6(res.pairs[i].g));
        CHECK(rerun.pairs[i].pair_id == res.pairs[i].pair_id);
    }

    cfg.seed = 200;
    auto other = assemble_category(Category::Basic, cfg);
    bool any_difference = false;
    for (std::size_t i = 0; i < res.pairs.size(); ++i)
        if (write_graph6(other.pairs[i].g) != write_graph6(res.pairs[i].g))
            any_difference = true;
    CHECK(any_difference);  // different seed, different selection
}

TEST_CASE("shortfall is reported, not fabricated") {
    AssembleConfig cfg;
    cfg.max_n = 6;
    cfg.count = 100000;
    auto res = assemble_category(Category::RegularSimple, cfg);
    CHECK(res.shortfall > 0);
    CHECK(res.pairs.size() < 100000);
    bool noted = false;
    for (const auto& n : res.notes)
        if (n.find("short by") != std::string::npos) noted = true;
    CHECK(noted);
}

TEST_CASE("srg and drg categories pair the built-in catalog") {
    AssembleConfig cfg;
    auto srg = assemble_category(Category::Srg, cfg);
    CHECK(srg.pairs.size() == 3);  // shrikhande/rook + two disjoint chang-family pairs
    for (const auto& p : srg.pairs) {
        CHECK(p.wl_difficulty == "3WL");
        CHECK(p.audit.non_isomorphic);
        CHECK(p.audit.wl1_indistinguishable);
    }
    auto drg = assemble_category(Category::Drg, cfg);
    CHECK(drg.pairs.size() == 3);
    // external catalog extends the pool: feed both 16-node srgs twice,
    // the duplicate is dropped
    cfg.catalog = {shrikhande_graph(), rook_graph_4x4()};
    auto srg2 = assemble_category(Category::Srg, cfg);
    CHECK(srg2.pairs.size() == 3);
    bool dup_note = false;
    for (const auto& n : srg2.notes)
        if (n.find("duplicate") != std::string::npos) dup_note = true;
    CHECK(dup_note);
}

TEST_CASE("extension assembly: subcategories and apex constructions") {
    AssembleConfig cfg;
    cfg.max_n = 8;
    cfg.ext_s3 = 6;
    cfg.ext_n1 = 2;
    cfg.ext_s4 = 0;
    cfg.ext_apex_regular = 3;
    cfg.ext_apex_cycles = 3;
    auto res = assemble_category(Category::Extension, cfg);
    int s3 = 0, n1 = 0, apex_r = 0, apex_c = 0;
    for (const auto& p : res.pairs) {
        CHECK(p.audit.wl1_indistinguishable);
        CHECK(p.audit.non_isomorphic);
        if (p.subcategory == "s3_indistinguishable") ++s3;
        if (p.subcategory == "n1_indistinguishable") ++n1;
        if (p.subcategory == "apex_regular") ++apex_r;
        if (p.subcategory == "apex_cycle_pair") ++apex_c;
    }
    CHECK(s3 == 6);
    CHECK(n1 == 2);
    CHECK(apex_r == 3);
    CHECK(apex_c == 3);
}

TEST_CASE("cfi assembly tags difficulties from the backbone") {
    AssembleConfig cfg;
    cfg.cfi_min_backbone = 3;
    cfg.cfi_max_backbone = 5;
    auto res = assemble_category(Category::Cfi, cfg);
    REQUIRE(res.pairs.size() == 15);
    int d1 = 0, d3 = 0, d4 = 0;
    for (const auto& p : res.pairs) {
        CHECK(p.audit.wl1_indistinguishable);
        CHECK(p.audit.non_isomorphic);
        if (p.wl_difficulty == "1WL") ++d1;
        if (p.wl_difficulty == "3WL") ++d3;
        if (p.wl_difficulty == "4WL") ++d4;
    }
    CHECK(d1 == 9);
    CHECK(d3 == 5);
    CHECK(d4 == 1);  // the K5 backbone
}

TEST_CASE("dataset files round-trip with the sidecar") {
    AssembleConfig cfg;
    cfg.max_n = 7;
    cfg.count = 4;
    auto res = assemble_category(Category::Basic, cfg);
    REQUIRE(res.pairs.size() == 4);
    write_dataset("grex_test_ds", res.pairs);
    auto back = read_dataset("grex_test_ds.g6", "grex_test_ds.json");
    REQUIRE(back.size() == 4);
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].pair_id == res.pairs[i].pair_id);
        CHECK(back[i].category == "basic");
        CHECK(back[i].g == res.pairs[i].g);
        CHECK(back[i].h == res.pairs[i].h);
        CHECK(back[i].audit.non_isomorphic);
    }
    auto bare = read_dataset("grex_test_ds.g6");
    CHECK(bare.size() == 4);
    CHECK(bare[0].category == "all");
    std::remove("grex_test_ds.g6");
    std::remove("grex_test_ds.json");
}
