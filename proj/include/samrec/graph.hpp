#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>
#include <unordered_map>

#include "samrec/error.hpp"

namespace samrec {

enum class NodeKind { person, asset, keyword };

enum class AssetKind { root, sub };

enum class InteractionType { consume, scroll, fullscreen, comment, like, dislike, dismiss };

// comment, like and dislike are explicit judgments; the rest are behavioral signals.
bool interaction_is_explicit(InteractionType t);

const char* to_string(NodeKind k);
const char* to_string(AssetKind k);
const char* to_string(InteractionType t);
InteractionType interaction_type_from_string(const std::string& s);

struct Interaction {
    std::string person;
    std::string asset;
    InteractionType type = InteractionType::comment;
    double polarity = 0.0;      // [-1, 1]; fixed per type except comment
    double intensity = 0.0;     // [0, 1]; comment strength, unused otherwise
    std::string text;           // stored verbatim, never analyzed
    std::int64_t timestamp_ms = 0;
};

// like -> +1, dislike -> -1, comment -> sign(polarity) * intensity, implicit -> 0.
double explicit_weight_of(const Interaction& i);

enum class EdgeKind { is_root_asset_of, has_keywords };

const char* to_string(EdgeKind k);
EdgeKind edge_kind_from_string(const std::string& s);

struct NeighborRef {
    std::string id;
    EdgeKind kind;
};

// In-memory property graph of persons, assets (root/sub), keywords, structural
// links and user interactions. Explicit interactions follow latest-wins: one
// slot per (person, asset), the newest like/dislike/comment replaces whatever
// was there. Implicit interactions are deduplicated per type; a repeat only
// refreshes the timestamp.
//
// Mutations require exclusive access; all const queries may run concurrently.
class ContextGraph {
public:
    using NodeIndex = std::int32_t;
    static constexpr NodeIndex npos = -1;

    std::string add_person(const std::string& id, const std::string& name,
                           std::map<std::string, std::string> attributes = {});
    std::string add_asset(const std::string& id, AssetKind kind, const std::string& title,
                          std::map<std::string, std::string> attributes = {});
    // Keywords are deduplicated by normalized label; returns the node id either way.
    std::string add_keyword(const std::string& label);

    void add_structural_edge(EdgeKind kind, const std::string& from, const std::string& to);
    void record_interaction(Interaction i);

    bool has_node(const std::string& id) const;
    NodeIndex index_of(const std::string& id) const;        // npos when absent
    const std::string& id_of(NodeIndex idx) const;
    NodeKind node_kind(const std::string& id) const;
    NodeKind node_kind(NodeIndex idx) const;
    AssetKind asset_kind(const std::string& id) const;
    AssetKind asset_kind(NodeIndex idx) const;
    const std::string& title_of(const std::string& asset_id) const;

    // Distance-1 nodes via structural edges, traversed in both directions,
    // ordered by ascending node id.
    std::vector<NeighborRef> neighbors(const std::string& id) const;
    std::vector<NeighborRef> neighbors(const std::string& id,
                                       const std::vector<EdgeKind>& filter) const;

    // Current effective interactions: the explicit slot (if any) first, then
    // implicit ones in type order.
    std::vector<Interaction> interactions_between(const std::string& person,
                                                  const std::string& asset) const;

    bool has_interaction(const std::string& person, const std::string& asset,
                         InteractionType type) const;

    std::vector<std::string> person_ids() const;
    std::vector<std::string> root_asset_ids() const;
    // Sub assets attached to this root via is_root_asset_of, ascending id.
    std::vector<std::string> widgets_of(const std::string& root_id) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t interaction_count() const { return interaction_count_; }

    // JSONL snapshot: one record per line, kinds "node" | "edge" | "interaction".
    void snapshot(const std::string& path) const;
    std::string snapshot_string() const;
    static ContextGraph restore(const std::string& path);
    static ContextGraph restore_string(const std::string& content, const std::string& origin);

    // Index-based accessors for traversal-heavy callers.
    struct AdjEntry {
        NodeIndex neighbor;
        EdgeKind kind;
        bool outgoing;
    };
    const std::vector<AdjEntry>& adjacency(NodeIndex idx) const;

    struct InteractionSlot {
        std::optional<Interaction> explicit_slot;
        std::vector<Interaction> implicits;   // at most one per implicit type
    };
    const InteractionSlot* slot_for(NodeIndex person, NodeIndex asset) const;
    const std::unordered_map<NodeIndex, InteractionSlot>* slots_of(NodeIndex person) const;

private:
    struct Node {
        std::string id;
        NodeKind kind;
        AssetKind asset_kind = AssetKind::root;
        std::string label;   // person name / asset title / keyword label
        std::map<std::string, std::string> attributes;
    };

    NodeIndex require_node(const std::string& id, const char* role) const;
    NodeIndex insert_node(Node node);
    void insert_adjacency(NodeIndex from, NodeIndex to, EdgeKind kind);
    void validate_interaction(const Interaction& i, NodeIndex person, NodeIndex asset) const;

    std::vector<Node> nodes_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::unordered_map<std::string, NodeIndex> keyword_by_label_;
    std::vector<std::vector<AdjEntry>> adjacency_;
    // (person, asset) -> effective interactions, keyed by person then asset.
    std::unordered_map<NodeIndex, std::unordered_map<NodeIndex, InteractionSlot>> interactions_;
    std::size_t edge_count_ = 0;
    std::size_t interaction_count_ = 0;
};

std::string normalize_keyword(const std::string& label);

} // namespace samrec
