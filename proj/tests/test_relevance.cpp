#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "samrec/relevance.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace samrec;
using samrec::testing::oracle_relevance;

namespace {

ContextGraph widget_fixture() {
    ContextGraph g;
    g.add_person("u", "user");
    g.add_asset("root", AssetKind::root, "root");
    g.add_asset("wa", AssetKind::sub, "a");
    g.add_structural_edge(EdgeKind::is_root_asset_of, "root", "wa");
    return g;
}

} // namespace

TEST_CASE("explicit weight of the effective slot") {
    ContextGraph g = widget_fixture();
    CHECK(explicit_weight(g, "u", "root") == 0.0);

    g.record_interaction({"u", "root", InteractionType::like, 0, 0, "", 1});
    CHECK(explicit_weight(g, "u", "root") == 1.0);

    g.record_interaction({"u", "root", InteractionType::comment, -0.8, 0.6, "", 2});
    CHECK(explicit_weight(g, "u", "root") == doctest::Approx(-0.6));

    CHECK_THROWS_AS(explicit_weight(g, "u", "nope"), Error);
}

TEST_CASE("implicit weight follows polarity / (t - 1)") {
    EngineConfig cfg;
    Interaction scroll{"u", "w", InteractionType::scroll, 1.0, 0, "", 1};
    Interaction dismiss{"u", "w", InteractionType::dismiss, -1.0, 0, "", 1};
    Interaction consume{"u", "r", InteractionType::consume, 1.0, 0, "", 1};
    CHECK(implicit_weight(scroll, AssetKind::sub, cfg) == doctest::Approx(0.25));
    CHECK(implicit_weight(dismiss, AssetKind::sub, cfg) == doctest::Approx(-0.25));
    CHECK(implicit_weight(consume, AssetKind::root, cfg) == doctest::Approx(0.2));

    Interaction like{"u", "w", InteractionType::like, 1.0, 0, "", 1};
    CHECK_THROWS_AS(implicit_weight(like, AssetKind::sub, cfg), Error);
}

TEST_CASE("direct weight sums the pair's own contributions") {
    EngineConfig cfg;
    ContextGraph g = widget_fixture();

    CHECK(direct_weight(g, "u", "wa", cfg).total == 0.0);

    g.record_interaction({"u", "wa", InteractionType::like, 0, 0, "", 1});
    g.record_interaction({"u", "wa", InteractionType::dismiss, 0, 0, "", 2});
    WeightBreakdown b = direct_weight(g, "u", "wa", cfg);
    CHECK(b.total == doctest::Approx(0.75));
    CHECK(b.explicit_part == doctest::Approx(1.0));
    CHECK(b.implicit_sum == doctest::Approx(-0.25));
    CHECK(b.contributing_terms == 2);

    g.record_interaction({"u", "root", InteractionType::dislike, 0, 0, "", 3});
    g.record_interaction({"u", "root", InteractionType::scroll, 0, 0, "", 4});
    g.record_interaction({"u", "root", InteractionType::fullscreen, 0, 0, "", 5});
    CHECK(direct_weight(g, "u", "root", cfg).total == doctest::Approx(-0.6));
}

TEST_CASE("config validation") {
    ContextGraph g = widget_fixture();
    EngineConfig cfg;
    cfg.max_depth = 0;
    CHECK_THROWS_AS(asset_relevance(g, "u", "root", cfg), Error);
    cfg.max_depth = 2;
    cfg.t_widget = 1;
    CHECK_THROWS_AS(asset_relevance(g, "u", "root", cfg), Error);
}

TEST_CASE("relevance with no nearby interactions is exactly zero") {
    EngineConfig cfg;
    ContextGraph g = widget_fixture();
    WeightBreakdown b = asset_relevance(g, "u", "root", cfg);
    CHECK(b.total == 0.0);
    CHECK(b.contributing_terms == 0);
}

TEST_CASE("a liked neighbor contributes 1/(n+1)") {
    EngineConfig cfg;
    ContextGraph g;
    g.add_person("u", "user");
    g.add_asset("root", AssetKind::root, "r");
    for (int w = 0; w < 5; w++) {
        std::string id = "w" + std::to_string(w);
        g.add_asset(id, AssetKind::sub, "w");
        g.add_structural_edge(EdgeKind::is_root_asset_of, "root", id);
    }
    g.record_interaction({"u", "w2", InteractionType::like, 0, 0, "", 1});

    WeightBreakdown b = asset_relevance(g, "u", "root", cfg);
    CHECK(b.total == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(b.explicit_part == 0.0);
    CHECK(b.indirect_sum == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(b.contributing_terms == 1);
}

TEST_CASE("a liked asset with inert neighbors scores exactly +1") {
    EngineConfig cfg;
    ContextGraph g = widget_fixture();
    std::string kw = g.add_keyword("inert");
    g.add_structural_edge(EdgeKind::has_keywords, "root", kw);
    g.record_interaction({"u", "root", InteractionType::like, 0, 0, "", 1});
    WeightBreakdown b = asset_relevance(g, "u", "root", cfg);
    CHECK(b.total == 1.0);
    CHECK(b.indirect_sum == 0.0);
}

TEST_CASE("breakdown identity and determinism on random graphs") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 40; trial++) {
        auto rg = samrec::testing::random_graph(rng);
        EngineConfig cfg;
        for (const std::string& person : rg.persons) {
            for (const std::string& asset : rg.assets) {
                WeightBreakdown b = asset_relevance(rg.graph, person, asset, cfg);
                CHECK(std::abs(b.total - (b.explicit_part + b.implicit_sum + b.indirect_sum)) <=
                      1e-12);
                WeightBreakdown again = asset_relevance(rg.graph, person, asset, cfg);
                CHECK(b.total == again.total);
                CHECK(b.explicit_part == again.explicit_part);
                CHECK(b.implicit_sum == again.implicit_sum);
                CHECK(b.indirect_sum == again.indirect_sum);
                CHECK(b.contributing_terms == again.contributing_terms);
            }
        }
    }
}

TEST_CASE("direct part keeps the explicit polarity") {
    // root: at most 3 implicit terms of 1/5 each; widget: at most 2 of 1/4
    std::mt19937 rng(55);
    for (int trial = 0; trial < 200; trial++) {
        ContextGraph g = widget_fixture();
        bool use_root = trial % 2 == 0;
        std::string asset = use_root ? "root" : "wa";
        bool like = trial % 4 < 2;
        g.record_interaction({"u", asset, like ? InteractionType::like : InteractionType::dislike,
                              0, 0, "", 1});
        std::vector<InteractionType> implicits =
            use_root ? std::vector<InteractionType>{InteractionType::consume, InteractionType::scroll,
                                                    InteractionType::fullscreen}
                     : std::vector<InteractionType>{InteractionType::scroll, InteractionType::dismiss};
        for (InteractionType t : implicits) {
            if (rng() % 2 == 0) g.record_interaction({"u", asset, t, 0, 0, "", 2});
        }
        EngineConfig cfg;
        WeightBreakdown b = direct_weight(g, "u", asset, cfg);
        CHECK(std::abs(b.implicit_sum) < 1.0);
        CHECK((b.total > 0) == like);
    }
}

TEST_CASE("engine matches the path-enumeration oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; trial++) {
        auto rg = samrec::testing::random_graph(rng);
        EngineConfig cfg;
        cfg.max_depth = 1 + static_cast<int>(rng() % 3);
        for (const std::string& person : rg.persons) {
            for (const std::string& asset : rg.assets) {
                double expected = oracle_relevance(rg.graph, person, asset, cfg);
                WeightBreakdown got = asset_relevance(rg.graph, person, asset, cfg);
                CHECK(std::abs(got.total - expected) <= 1e-12);
            }
        }
    }
}

TEST_CASE("scores and visit counts ignore far-away graph growth") {
    std::mt19937 rng(303);
    for (int trial = 0; trial < 15; trial++) {
        auto rg = samrec::testing::random_graph(rng);
        EngineConfig cfg;
        struct Probe { std::string person, asset; double total; std::uint64_t visits; };
        std::vector<Probe> probes;
        for (const std::string& person : rg.persons) {
            for (const std::string& asset : rg.assets) {
                RelevanceStats stats;
                WeightBreakdown b = asset_relevance(rg.graph, person, asset, cfg, &stats);
                probes.push_back({person, asset, b.total, stats.nodes_visited});
            }
        }
        for (int c = 0; c < 4; c++) {
            samrec::testing::add_inert_component(rg, rng, "inert" + std::to_string(c), 2, 4);
        }
        for (const Probe& p : probes) {
            RelevanceStats stats;
            WeightBreakdown b = asset_relevance(rg.graph, p.person, p.asset, cfg, &stats);
            CHECK(b.total == p.total);
            CHECK(stats.nodes_visited == p.visits);
        }
    }
}

TEST_CASE("the indirect sum of n unit-relevance neighbors stays below one") {
    // n liked widgets contribute n/(n+1)
    EngineConfig cfg;
    for (int n = 1; n <= 8; n++) {
        ContextGraph g;
        g.add_person("u", "user");
        g.add_asset("root", AssetKind::root, "r");
        for (int w = 0; w < n; w++) {
            std::string id = "w" + std::to_string(w);
            g.add_asset(id, AssetKind::sub, "w");
            g.add_structural_edge(EdgeKind::is_root_asset_of, "root", id);
            g.record_interaction({"u", id, InteractionType::like, 0, 0, "", 1});
        }
        WeightBreakdown b = asset_relevance(g, "u", "root", cfg);
        CHECK(b.indirect_sum ==
              doctest::Approx(static_cast<double>(n) / (n + 1)).epsilon(1e-12));
        CHECK(b.indirect_sum < 1.0);
    }
}

TEST_CASE("visits are bounded by the depth-2 neighborhood") {
    std::mt19937 rng(404);
    auto rg = samrec::testing::random_graph(rng);
    EngineConfig cfg;
    for (const std::string& asset : rg.assets) {
        RelevanceStats stats;
        asset_relevance(rg.graph, rg.persons[0], asset, cfg, &stats);
        std::uint64_t bound = 1;
        for (const NeighborRef& nb : rg.graph.neighbors(asset)) {
            bound += 1 + rg.graph.neighbors(nb.id).size();
        }
        CHECK(stats.nodes_visited <= bound);
    }
}
