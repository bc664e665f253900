#include "generators.hpp"

#include <algorithm>

namespace samrec::testing {

namespace {

int rand_int(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double rand_real(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool chance(std::mt19937& rng, double p) {
    return rand_real(rng, 0.0, 1.0) < p;
}

} // namespace

Interaction random_interaction(std::mt19937& rng, const ContextGraph& graph,
                               const std::string& person, const std::string& asset,
                               bool continuous_weights) {
    const bool root = graph.asset_kind(asset) == AssetKind::root;
    static const std::vector<InteractionType> root_types = {
        InteractionType::consume, InteractionType::scroll, InteractionType::fullscreen,
        InteractionType::comment, InteractionType::like, InteractionType::dislike};
    static const std::vector<InteractionType> widget_types = {
        InteractionType::scroll, InteractionType::dismiss, InteractionType::like,
        InteractionType::dislike, InteractionType::comment};

    Interaction i;
    i.person = person;
    i.asset = asset;
    if (continuous_weights) {
        i.type = InteractionType::comment;
    } else {
        const auto& pool = root ? root_types : widget_types;
        i.type = pool[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(pool.size()) - 1))];
    }
    if (i.type == InteractionType::comment) {
        i.polarity = chance(rng, 0.5) ? 1.0 : -1.0;
        i.intensity = rand_real(rng, 0.05, 1.0);
        i.text = "t";
    }
    i.timestamp_ms = rand_int(rng, 1, 1000000);
    return i;
}

RandomGraph random_graph(std::mt19937& rng, const GraphGenOptions& opts) {
    RandomGraph rg;
    ContextGraph& g = rg.graph;

    int n_persons = rand_int(rng, opts.min_persons, opts.max_persons);
    for (int p = 0; p < n_persons; p++) {
        rg.persons.push_back(g.add_person("p" + std::to_string(p), "person " + std::to_string(p)));
    }

    int budget = opts.max_nodes - n_persons;
    int n_roots = std::min(rand_int(rng, 1, opts.max_roots), budget);
    budget -= n_roots;
    for (int r = 0; r < n_roots; r++) {
        std::string id = g.add_asset("r" + std::to_string(r), AssetKind::root,
                                     "root " + std::to_string(r));
        rg.roots.push_back(id);
        rg.assets.push_back(id);
    }
    int widget_counter = 0;
    for (const std::string& root : rg.roots) {
        int n_widgets = std::min(rand_int(rng, 0, opts.max_widgets_per_root), budget);
        budget -= n_widgets;
        for (int w = 0; w < n_widgets; w++) {
            std::string id = g.add_asset("w" + std::to_string(widget_counter++), AssetKind::sub,
                                         "widget");
            g.add_structural_edge(EdgeKind::is_root_asset_of, root, id);
            rg.assets.push_back(id);
        }
    }
    int n_keywords = std::min(rand_int(rng, 0, opts.max_keywords), budget);
    std::vector<std::string> keywords;
    for (int k = 0; k < n_keywords; k++) {
        keywords.push_back(g.add_keyword("kw" + std::to_string(k)));
    }
    for (const std::string& asset : rg.assets) {
        for (const std::string& kw : keywords) {
            if (chance(rng, opts.keyword_edge_prob)) {
                g.add_structural_edge(EdgeKind::has_keywords, asset, kw);
            }
        }
    }
    for (const std::string& person : rg.persons) {
        for (const std::string& asset : rg.assets) {
            if (!chance(rng, opts.interaction_prob)) continue;
            int records = rand_int(rng, 1, 3);
            for (int n = 0; n < records; n++) {
                g.record_interaction(
                    random_interaction(rng, g, person, asset, opts.continuous_weights));
            }
        }
    }
    return rg;
}

void add_inert_component(RandomGraph& rg, std::mt19937& rng, const std::string& tag,
                         int persons, int assets) {
    ContextGraph& g = rg.graph;
    std::vector<std::string> new_persons;
    std::vector<std::string> new_assets;
    for (int p = 0; p < persons; p++) {
        new_persons.push_back(g.add_person(tag + "p" + std::to_string(p), "inert"));
    }
    for (int a = 0; a < assets; a++) {
        std::string id = g.add_asset(tag + "r" + std::to_string(a), AssetKind::root, "inert");
        new_assets.push_back(id);
        if (chance(rng, 0.5)) {
            std::string w = g.add_asset(tag + "w" + std::to_string(a), AssetKind::sub, "inert");
            g.add_structural_edge(EdgeKind::is_root_asset_of, id, w);
            new_assets.push_back(w);
        }
    }
    std::string kw = g.add_keyword(tag + "-kw");
    for (const std::string& asset : new_assets) {
        if (chance(rng, 0.6)) {
            g.add_structural_edge(EdgeKind::has_keywords, asset, kw);
        }
    }
    for (const std::string& person : new_persons) {
        for (const std::string& asset : new_assets) {
            if (chance(rng, 0.4)) {
                g.record_interaction(random_interaction(rng, g, person, asset, false));
            }
        }
    }
}

} // namespace samrec::testing
