#pragma once

#include <cstdint>
#include <map>

#include "samrec/graph.hpp"

namespace samrec {

std::map<InteractionType, double> default_implicit_polarities();

struct EngineConfig {
    int max_depth = 2;      // asset-to-asset hops contributing to a score
    int t_root = 6;         // interaction type count for root assets
    int t_widget = 5;       // interaction type count for sub assets
    std::map<InteractionType, double> implicit_polarities = default_implicit_polarities();
};

void validate(const EngineConfig& config);

// Decomposition of a relevance weight. explicit_part and implicit_sum come
// from the (person, asset) pair itself; indirect_sum aggregates neighbor
// relevance scaled by 1/(n+1). total is their exact sum and is not clipped.
struct WeightBreakdown {
    double explicit_part = 0.0;
    double implicit_sum = 0.0;
    double indirect_sum = 0.0;
    double total = 0.0;
    int contributing_terms = 0;
};

struct RelevanceStats {
    std::uint64_t nodes_visited = 0;
};

// Weight of the effective explicit interaction: +1 like, -1 dislike,
// sign(polarity) * intensity for a comment, 0 when the slot is empty.
double explicit_weight(const ContextGraph& graph, const std::string& person,
                       const std::string& asset);

// Down-weighted implicit contribution: polarity / (t - 1) with t taken from
// the asset kind.
double implicit_weight(const Interaction& interaction, AssetKind kind, const EngineConfig& config);

// Explicit plus implicit contributions of the pair itself; no traversal.
WeightBreakdown direct_weight(const ContextGraph& graph, const std::string& person,
                              const std::string& asset, const EngineConfig& config);

// Full relevance: direct weight plus recursive neighbor contributions
// r_x / (n + 1), neighbors being sub assets, parent roots and keywords.
// Assets already on the recursion path are excluded, and recursion stops at
// config.max_depth hops. Work is bounded by the depth-limited neighborhood,
// not by graph size; stats (when given) reports nodes visited for the query.
WeightBreakdown asset_relevance(const ContextGraph& graph, const std::string& person,
                                const std::string& asset, const EngineConfig& config,
                                RelevanceStats* stats = nullptr);

} // namespace samrec
