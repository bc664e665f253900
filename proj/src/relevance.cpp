#include "samrec/relevance.hpp"

#include <algorithm>
#include <vector>

namespace samrec {

std::map<InteractionType, double> default_implicit_polarities() {
    return {
        {InteractionType::consume, 1.0},
        {InteractionType::scroll, 1.0},
        {InteractionType::fullscreen, 1.0},
        {InteractionType::dismiss, -1.0},
    };
}

void validate(const EngineConfig& config) {
    if (config.max_depth < 1) {
        throw Error(ErrorCode::invalid_argument, "max_depth must be >= 1");
    }
    if (config.t_root < 2 || config.t_widget < 2) {
        throw Error(ErrorCode::invalid_argument, "interaction type counts must be >= 2");
    }
}

double explicit_weight(const ContextGraph& graph, const std::string& person,
                       const std::string& asset) {
    ContextGraph::NodeIndex p = graph.index_of(person);
    ContextGraph::NodeIndex a = graph.index_of(asset);
    if (p == ContextGraph::npos) throw Error(ErrorCode::not_found, "person node not found: " + person);
    if (a == ContextGraph::npos) throw Error(ErrorCode::not_found, "asset node not found: " + asset);
    const ContextGraph::InteractionSlot* slot = graph.slot_for(p, a);
    if (!slot || !slot->explicit_slot) return 0.0;
    return explicit_weight_of(*slot->explicit_slot);
}

double implicit_weight(const Interaction& interaction, AssetKind kind, const EngineConfig& config) {
    if (interaction_is_explicit(interaction.type)) {
        throw Error(ErrorCode::invalid_argument,
                    std::string("implicit_weight called with explicit type ") + to_string(interaction.type));
    }
    auto it = config.implicit_polarities.find(interaction.type);
    double polarity = it != config.implicit_polarities.end() ? it->second : interaction.polarity;
    int t = kind == AssetKind::root ? config.t_root : config.t_widget;
    return polarity / static_cast<double>(t - 1);
}

namespace {

struct Scorer {
    const ContextGraph& graph;
    const EngineConfig& config;
    // the person's interaction slots, resolved once per query so per-visit
    // lookups stay independent of total graph size
    const std::unordered_map<ContextGraph::NodeIndex, ContextGraph::InteractionSlot>* slots;
    std::vector<ContextGraph::NodeIndex> path;
    std::uint64_t visits = 0;

    double direct(ContextGraph::NodeIndex node, int* terms) const {
        if (!slots) return 0.0;
        if (graph.node_kind(node) != NodeKind::asset) return 0.0;   // keywords carry no interactions
        auto it = slots->find(node);
        if (it == slots->end()) return 0.0;
        const ContextGraph::InteractionSlot& slot = it->second;
        double sum = 0.0;
        if (slot.explicit_slot) {
            double w = explicit_weight_of(*slot.explicit_slot);
            if (terms && w != 0.0) (*terms)++;
            sum += w;
        }
        AssetKind kind = graph.asset_kind(node);
        for (const Interaction& i : slot.implicits) {
            double w = implicit_weight(i, kind, config);
            if (terms && w != 0.0) (*terms)++;
            sum += w;
        }
        return sum;
    }

    bool on_path(ContextGraph::NodeIndex node) const {
        return std::find(path.begin(), path.end(), node) != path.end();
    }

    double relevance(ContextGraph::NodeIndex node, int depth) {
        visits++;
        double value = direct(node, nullptr);
        if (depth < config.max_depth) {
            value += indirect(node, depth, nullptr);
        }
        return value;
    }

    // Neighbor contributions of `node`, skipping nodes already on the path.
    // The denominator counts only in-scope neighbors, matching the recursion
    // over the asset-removed graph.
    double indirect(ContextGraph::NodeIndex node, int depth, int* terms) {
        const auto& adj = graph.adjacency(node);
        std::vector<ContextGraph::NodeIndex> in_scope;
        in_scope.reserve(adj.size());
        for (const ContextGraph::AdjEntry& e : adj) {
            if (!on_path(e.neighbor)) in_scope.push_back(e.neighbor);
        }
        if (in_scope.empty()) return 0.0;
        double divisor = static_cast<double>(in_scope.size()) + 1.0;
        double sum = 0.0;
        for (ContextGraph::NodeIndex x : in_scope) {
            path.push_back(x);
            double term = relevance(x, depth + 1) / divisor;
            path.pop_back();
            if (terms && term != 0.0) (*terms)++;
            sum += term;
        }
        return sum;
    }
};

} // namespace

WeightBreakdown direct_weight(const ContextGraph& graph, const std::string& person,
                              const std::string& asset, const EngineConfig& config) {
    validate(config);
    ContextGraph::NodeIndex p = graph.index_of(person);
    ContextGraph::NodeIndex a = graph.index_of(asset);
    if (p == ContextGraph::npos) throw Error(ErrorCode::not_found, "person node not found: " + person);
    if (a == ContextGraph::npos) throw Error(ErrorCode::not_found, "asset node not found: " + asset);

    WeightBreakdown out;
    const ContextGraph::InteractionSlot* slot = graph.slot_for(p, a);
    if (slot) {
        if (slot->explicit_slot) {
            out.explicit_part = explicit_weight_of(*slot->explicit_slot);
            if (out.explicit_part != 0.0) out.contributing_terms++;
        }
        AssetKind kind = graph.asset_kind(a);
        for (const Interaction& i : slot->implicits) {
            double w = implicit_weight(i, kind, config);
            if (w != 0.0) out.contributing_terms++;
            out.implicit_sum += w;
        }
    }
    out.total = out.explicit_part + out.implicit_sum;
    return out;
}

WeightBreakdown asset_relevance(const ContextGraph& graph, const std::string& person,
                                const std::string& asset, const EngineConfig& config,
                                RelevanceStats* stats) {
    validate(config);
    ContextGraph::NodeIndex p = graph.index_of(person);
    ContextGraph::NodeIndex a = graph.index_of(asset);
    if (p == ContextGraph::npos) throw Error(ErrorCode::not_found, "person node not found: " + person);
    if (a == ContextGraph::npos) throw Error(ErrorCode::not_found, "asset node not found: " + asset);

    WeightBreakdown out = direct_weight(graph, person, asset, config);

    Scorer scorer{graph, config, graph.slots_of(p), {a}, 1};
    out.indirect_sum = scorer.indirect(a, 0, &out.contributing_terms);
    out.total = out.explicit_part + out.implicit_sum + out.indirect_sum;
    if (stats) stats->nodes_visited = scorer.visits;
    return out;
}

} // namespace samrec
