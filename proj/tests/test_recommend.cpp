#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "samrec/recommend.hpp"
#include "support/generators.hpp"

using namespace samrec;

namespace {

// Three root assets rated 0.8 / -0.2 / 0.5 via comments, no structure.
ContextGraph three_roots() {
    ContextGraph g;
    g.add_person("u", "user");
    g.add_asset("A", AssetKind::root, "a");
    g.add_asset("B", AssetKind::root, "b");
    g.add_asset("C", AssetKind::root, "c");
    g.record_interaction({"u", "A", InteractionType::comment, 1.0, 0.8, "", 1});
    g.record_interaction({"u", "B", InteractionType::comment, -1.0, 0.2, "", 2});
    g.record_interaction({"u", "C", InteractionType::comment, 1.0, 0.5, "", 3});
    return g;
}

} // namespace

TEST_CASE("graph score wins when the traversal finds signal") {
    ContextGraph g;
    g.add_person("u", "user");
    g.add_asset("A", AssetKind::root, "a");
    g.record_interaction({"u", "A", InteractionType::like, 0, 0, "", 1});
    Recommender rec(g);
    RelevanceScore s = rec.score("u", "A");
    CHECK(s.value == 1.0);
    CHECK(s.source == ScoreSource::graph);
}

TEST_CASE("clipping keeps scores inside [-1, 1]") {
    ContextGraph g;
    g.add_person("u", "user");
    g.add_asset("R", AssetKind::root, "r");
    g.add_asset("W", AssetKind::sub, "w");
    g.add_structural_edge(EdgeKind::is_root_asset_of, "R", "W");
    g.record_interaction({"u", "R", InteractionType::like, 0, 0, "", 1});
    g.record_interaction({"u", "W", InteractionType::like, 0, 0, "", 2});
    Recommender rec(g);
    // raw total is 1 + 1/2
    CHECK(rec.score("u", "R").value == 1.0);
}

TEST_CASE("cf fallback fires only with zero graph signal") {
    ContextGraph g;
    g.add_person("a", "a");
    g.add_person("u", "u");
    g.add_asset("X", AssetKind::root, "x");
    g.add_asset("Y", AssetKind::root, "y");
    g.add_asset("Z", AssetKind::root, "z");
    g.add_asset("j", AssetKind::root, "j");
    // a rated X, Y; u rated X, Y, Z and j; j is structurally isolated from X/Y
    g.record_interaction({"a", "X", InteractionType::comment, 1.0, 0.4, "", 1});
    g.record_interaction({"a", "Y", InteractionType::comment, 1.0, 0.0, "", 2});
    g.record_interaction({"u", "X", InteractionType::comment, 1.0, 0.7, "", 3});
    g.record_interaction({"u", "Y", InteractionType::comment, 1.0, 0.3, "", 4});
    g.record_interaction({"u", "j", InteractionType::comment, 1.0, 0.9, "", 5});
    g.record_interaction({"u", "Z", InteractionType::comment, 1.0, 0.1, "", 6});

    Recommender rec(g);
    RelevanceScore s = rec.score("a", "j");
    CHECK(s.source == ScoreSource::cf_fallback);
    CHECK(s.value == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("user mean source when nothing to go on") {
    ContextGraph g;
    g.add_person("new", "n");
    g.add_asset("A", AssetKind::root, "a");
    Recommender rec(g);
    RelevanceScore s = rec.score("new", "A");
    CHECK(s.value == 0.0);
    CHECK(s.source == ScoreSource::user_mean);
}

TEST_CASE("root recommendations sort and cut deterministically") {
    ContextGraph g = three_roots();
    Recommender rec(g);

    RankedList top2 = rec.recommend_roots("u", 2);
    REQUIRE(top2.entries.size() == 2);
    CHECK(top2.entries[0].asset == "A");
    CHECK(top2.entries[1].asset == "C");
    CHECK(top2.level == ListLevel::root);

    RankedList all = rec.recommend_roots("u", 10);
    REQUIRE(all.entries.size() == 3);
    CHECK(all.entries[2].asset == "B");

    CHECK_THROWS_AS(rec.recommend_roots("u", 0), Error);
    CHECK_THROWS_AS(rec.recommend_roots("ghost", 2), Error);
}

TEST_CASE("consumed roots are filtered unless asked for") {
    ContextGraph g = three_roots();
    g.record_interaction({"u", "A", InteractionType::consume, 0, 0, "", 9});
    Recommender rec(g);

    RankedList without = rec.recommend_roots("u", 2, false);
    REQUIRE(without.entries.size() == 2);
    CHECK(without.entries[0].asset == "C");
    CHECK(without.entries[1].asset == "B");

    RankedList with = rec.recommend_roots("u", 2, true);
    CHECK(with.entries[0].asset == "A");
    CHECK(with.entries[1].asset == "C");
}

TEST_CASE("widget list covers every widget of the root, fully sorted") {
    ContextGraph g;
    g.add_person("u", "user");
    g.add_asset("R", AssetKind::root, "r");
    for (const char* w : {"W1", "W2", "W3"}) {
        g.add_asset(w, AssetKind::sub, "w");
        g.add_structural_edge(EdgeKind::is_root_asset_of, "R", w);
    }
    g.record_interaction({"u", "W1", InteractionType::like, 0, 0, "", 1});
    g.record_interaction({"u", "W3", InteractionType::dismiss, 0, 0, "", 2});

    Recommender rec(g);
    RankedList list = rec.recommend_widgets("u", "R");
    CHECK(list.level == ListLevel::widget);
    REQUIRE(list.scope.has_value());
    CHECK(*list.scope == "R");
    REQUIRE(list.entries.size() == 3);
    CHECK(list.entries[0].asset == "W1");
    CHECK(list.entries[1].asset == "W2");
    CHECK(list.entries[2].asset == "W3");
    CHECK(list.entries[0].value > list.entries[1].value);
    CHECK(list.entries[1].value > list.entries[2].value);

    g.add_asset("lonely", AssetKind::root, "l");
    CHECK(rec.recommend_widgets("u", "lonely").entries.empty());

    try {
        rec.recommend_widgets("u", "W1");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kind_mismatch);
    }
}

TEST_CASE("ranked lists are reproducible and in range") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 25; trial++) {
        auto rg = samrec::testing::random_graph(rng);
        Recommender rec(rg.graph);
        for (const std::string& person : rg.persons) {
            RankedList a = rec.recommend_roots(person, 10, true);
            RankedList b = rec.recommend_roots(person, 10, true);
            REQUIRE(a.entries.size() == b.entries.size());
            for (std::size_t i = 0; i < a.entries.size(); i++) {
                CHECK(a.entries[i].asset == b.entries[i].asset);
                CHECK(a.entries[i].value == b.entries[i].value);
                CHECK(a.entries[i].value >= -1.0);
                CHECK(a.entries[i].value <= 1.0);
                if (i > 0) {
                    bool ordered = a.entries[i - 1].value > a.entries[i].value ||
                                   (a.entries[i - 1].value == a.entries[i].value &&
                                    a.entries[i - 1].asset < a.entries[i].asset);
                    CHECK(ordered);
                }
            }
        }
    }
}

TEST_CASE("graph source whenever an interaction sits within reach") {
    std::mt19937 rng(88);
    samrec::testing::GraphGenOptions opts;
    opts.continuous_weights = true;   // exact cancellations would defeat the gate
    int close_pairs = 0;
    for (int trial = 0; trial < 40; trial++) {
        auto rg = samrec::testing::random_graph(rng, opts);
        Recommender rec(rg.graph);
        for (const std::string& person : rg.persons) {
            for (const std::string& asset : rg.assets) {
                // distance from asset to any asset the person touched, in hops
                bool within = false;
                std::vector<std::string> frontier{asset};
                std::vector<std::string> seen{asset};
                for (int depth = 0; depth <= rec.config().max_depth && !within; depth++) {
                    for (const std::string& node : frontier) {
                        if (rg.graph.node_kind(node) == NodeKind::asset &&
                            !rg.graph.interactions_between(person, node).empty()) {
                            within = true;
                            break;
                        }
                    }
                    if (within || depth == rec.config().max_depth) break;
                    std::vector<std::string> next;
                    for (const std::string& node : frontier) {
                        for (const NeighborRef& nb : rg.graph.neighbors(node)) {
                            if (std::find(seen.begin(), seen.end(), nb.id) == seen.end()) {
                                seen.push_back(nb.id);
                                next.push_back(nb.id);
                            }
                        }
                    }
                    frontier = next;
                }
                if (within) {
                    close_pairs++;
                    CHECK(rec.score(person, asset).source == ScoreSource::graph);
                }
            }
        }
    }
    CHECK(close_pairs > 100);
}

TEST_CASE("a fresh like never lowers the asset's score") {
    // case 1: prior signal was negative graph evidence
    {
        ContextGraph g;
        g.add_person("u", "user");
        g.add_asset("R", AssetKind::root, "r");
        g.add_asset("W", AssetKind::sub, "w");
        g.add_structural_edge(EdgeKind::is_root_asset_of, "R", "W");
        g.record_interaction({"u", "W", InteractionType::dislike, 0, 0, "", 1});
        Recommender rec(g);
        double before = rec.score("u", "R").value;
        g.record_interaction({"u", "R", InteractionType::like, 0, 0, "", 2});
        double after = rec.score("u", "R").value;
        CHECK(after >= before);
    }
    // case 2: prior score came from the CF fallback
    {
        ContextGraph g;
        g.add_person("a", "a");
        g.add_person("u", "u");
        g.add_asset("X", AssetKind::root, "x");
        g.add_asset("Y", AssetKind::root, "y");
        g.add_asset("j", AssetKind::root, "j");
        g.record_interaction({"a", "X", InteractionType::comment, 1.0, 0.9, "", 1});
        g.record_interaction({"a", "Y", InteractionType::comment, 1.0, 0.1, "", 2});
        g.record_interaction({"u", "X", InteractionType::comment, 1.0, 0.8, "", 3});
        g.record_interaction({"u", "Y", InteractionType::comment, 1.0, 0.2, "", 4});
        g.record_interaction({"u", "j", InteractionType::comment, 1.0, 0.9, "", 5});
        Recommender rec(g);
        RelevanceScore before = rec.score("a", "j");
        CHECK(before.source == ScoreSource::cf_fallback);
        g.record_interaction({"a", "j", InteractionType::like, 0, 0, "", 6});
        RelevanceScore after = rec.score("a", "j");
        CHECK(after.source == ScoreSource::graph);
        CHECK(after.value >= before.value);
    }
}
