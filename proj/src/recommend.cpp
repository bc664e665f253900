#include "samrec/recommend.hpp"

#include <algorithm>

namespace samrec {

const char* to_string(ScoreSource s) {
    switch (s) {
    case ScoreSource::graph: return "graph";
    case ScoreSource::cf_fallback: return "cf_fallback";
    case ScoreSource::user_mean: return "user_mean";
    }
    return "?";
}

const char* to_string(ListLevel l) {
    return l == ListLevel::root ? "root" : "widget";
}

void sort_entries(std::vector<RelevanceScore>& entries) {
    std::sort(entries.begin(), entries.end(), [](const RelevanceScore& a, const RelevanceScore& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.asset < b.asset;
    });
}

Recommender::Recommender(const ContextGraph& graph, EngineConfig config)
    : graph_(graph), config_(std::move(config)) {
    validate(config_);
}

RelevanceScore Recommender::score_one(const std::string& person, const std::string& asset,
                                      std::optional<RatingMatrix>& scratch) const {
    WeightBreakdown breakdown = asset_relevance(graph_, person, asset, config_);
    RelevanceScore out;
    out.asset = asset;
    if (breakdown.contributing_terms > 0) {
        out.value = std::clamp(breakdown.total, -1.0, 1.0);
        out.source = ScoreSource::graph;
        return out;
    }
    if (!scratch) scratch = extract_ratings(graph_);
    const RatingVector* self = scratch->find(person);
    static const RatingVector empty_vector;
    CfPrediction p = predict_detail(self ? *self : empty_vector, asset, scratch->users);
    out.value = p.value;
    out.source = p.contributors > 0 ? ScoreSource::cf_fallback : ScoreSource::user_mean;
    return out;
}

RelevanceScore Recommender::score(const std::string& person, const std::string& asset) const {
    std::optional<RatingMatrix> scratch;
    return score_one(person, asset, scratch);
}

RankedList Recommender::recommend_roots(const std::string& person, int k, bool include_consumed) const {
    if (k < 1) {
        throw Error(ErrorCode::invalid_argument, "k must be >= 1");
    }
    if (!graph_.has_node(person)) {
        throw Error(ErrorCode::not_found, "person node not found: " + person);
    }
    RankedList list;
    list.person = person;
    list.level = ListLevel::root;
    std::optional<RatingMatrix> scratch;
    for (const std::string& root : graph_.root_asset_ids()) {
        if (!include_consumed && graph_.has_interaction(person, root, InteractionType::consume)) {
            continue;
        }
        list.entries.push_back(score_one(person, root, scratch));
    }
    sort_entries(list.entries);
    if (static_cast<int>(list.entries.size()) > k) {
        list.entries.resize(static_cast<std::size_t>(k));
    }
    return list;
}

RankedList Recommender::recommend_widgets(const std::string& person, const std::string& root_asset) const {
    if (!graph_.has_node(person)) {
        throw Error(ErrorCode::not_found, "person node not found: " + person);
    }
    if (!graph_.has_node(root_asset)) {
        throw Error(ErrorCode::not_found, "asset node not found: " + root_asset);
    }
    if (graph_.node_kind(root_asset) != NodeKind::asset ||
        graph_.asset_kind(root_asset) != AssetKind::root) {
        throw Error(ErrorCode::kind_mismatch, "not a root asset: " + root_asset);
    }
    RankedList list;
    list.person = person;
    list.level = ListLevel::widget;
    list.scope = root_asset;
    std::optional<RatingMatrix> scratch;
    for (const std::string& widget : graph_.widgets_of(root_asset)) {
        list.entries.push_back(score_one(person, widget, scratch));
    }
    sort_entries(list.entries);
    return list;
}

} // namespace samrec
