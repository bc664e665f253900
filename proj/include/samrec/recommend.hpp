#pragma once

#include <optional>
#include <string>
#include <vector>

#include "samrec/collab.hpp"
#include "samrec/relevance.hpp"

namespace samrec {

enum class ScoreSource { graph, cf_fallback, user_mean };

const char* to_string(ScoreSource s);

struct RelevanceScore {
    std::string asset;
    double value = 0.0;   // clipped to [-1, 1]
    ScoreSource source = ScoreSource::graph;
};

enum class ListLevel { root, widget };

const char* to_string(ListLevel l);

struct RankedList {
    std::string person;
    ListLevel level = ListLevel::root;
    std::optional<std::string> scope;   // owning root asset when level == widget
    std::vector<RelevanceScore> entries;
};

// Hybrid scorer: graph relevance when the traversal finds any contributing
// term, Pearson CF otherwise, the user's mean rating when CF has no
// contributors either. Read-only over the graph; rating vectors needed for a
// fallback are extracted per call.
class Recommender {
public:
    explicit Recommender(const ContextGraph& graph, EngineConfig config = {});

    RelevanceScore score(const std::string& person, const std::string& asset) const;

    // Top-k root assets by score, ties broken by ascending asset id. Roots the
    // person already consumed are skipped unless include_consumed is set.
    RankedList recommend_roots(const std::string& person, int k, bool include_consumed = false) const;

    // Every sub asset of root_asset, fully sorted; display cutoff is the
    // caller's concern.
    RankedList recommend_widgets(const std::string& person, const std::string& root_asset) const;

    const EngineConfig& config() const { return config_; }

private:
    RelevanceScore score_one(const std::string& person, const std::string& asset,
                             std::optional<RatingMatrix>& scratch) const;

    const ContextGraph& graph_;
    EngineConfig config_;
};

void sort_entries(std::vector<RelevanceScore>& entries);

} // namespace samrec
