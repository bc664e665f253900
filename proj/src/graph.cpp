#include "samrec/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace samrec {

using nlohmann::json;

bool interaction_is_explicit(InteractionType t) {
    switch (t) {
    case InteractionType::comment:
    case InteractionType::like:
    case InteractionType::dislike:
        return true;
    default:
        return false;
    }
}

const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::person: return "person";
    case NodeKind::asset: return "asset";
    case NodeKind::keyword: return "keyword";
    }
    return "?";
}

const char* to_string(AssetKind k) {
    return k == AssetKind::root ? "root" : "sub";
}

const char* to_string(InteractionType t) {
    switch (t) {
    case InteractionType::consume: return "consume";
    case InteractionType::scroll: return "scroll";
    case InteractionType::fullscreen: return "fullscreen";
    case InteractionType::comment: return "comment";
    case InteractionType::like: return "like";
    case InteractionType::dislike: return "dislike";
    case InteractionType::dismiss: return "dismiss";
    }
    return "?";
}

InteractionType interaction_type_from_string(const std::string& s) {
    if (s == "consume") return InteractionType::consume;
    if (s == "scroll") return InteractionType::scroll;
    if (s == "fullscreen") return InteractionType::fullscreen;
    if (s == "comment") return InteractionType::comment;
    if (s == "like") return InteractionType::like;
    if (s == "dislike") return InteractionType::dislike;
    if (s == "dismiss") return InteractionType::dismiss;
    throw Error(ErrorCode::invalid_argument, "unknown interaction type: " + s);
}

const char* to_string(EdgeKind k) {
    return k == EdgeKind::is_root_asset_of ? "is_root_asset_of" : "has_keywords";
}

EdgeKind edge_kind_from_string(const std::string& s) {
    if (s == "is_root_asset_of") return EdgeKind::is_root_asset_of;
    if (s == "has_keywords") return EdgeKind::has_keywords;
    throw Error(ErrorCode::invalid_argument, "unknown edge kind: " + s);
}

double explicit_weight_of(const Interaction& i) {
    switch (i.type) {
    case InteractionType::like: return 1.0;
    case InteractionType::dislike: return -1.0;
    case InteractionType::comment:
        if (i.polarity > 0.0) return i.intensity;
        if (i.polarity < 0.0) return -i.intensity;
        return 0.0;
    default:
        return 0.0;
    }
}

std::string normalize_keyword(const std::string& label) {
    std::size_t begin = 0;
    std::size_t end = label.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(label[begin]))) begin++;
    while (end > begin && std::isspace(static_cast<unsigned char>(label[end - 1]))) end--;
    std::string out = label.substr(begin, end - begin);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

namespace {

// Fixed polarity the graph stores per interaction type. The engine's own
// polarity map is configurable; these are what the record carries.
double stored_polarity(InteractionType t, double comment_polarity) {
    switch (t) {
    case InteractionType::like: return 1.0;
    case InteractionType::dislike: return -1.0;
    case InteractionType::consume:
    case InteractionType::scroll:
    case InteractionType::fullscreen:
        return 1.0;
    case InteractionType::dismiss: return -1.0;
    case InteractionType::comment: return comment_polarity;
    }
    return 0.0;
}

bool type_valid_for(AssetKind kind, InteractionType t) {
    if (kind == AssetKind::root) return t != InteractionType::dismiss;
    // widgets: no consume / fullscreen
    return t != InteractionType::consume && t != InteractionType::fullscreen;
}

} // namespace

ContextGraph::NodeIndex ContextGraph::require_node(const std::string& id, const char* role) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw Error(ErrorCode::not_found, std::string(role) + " node not found: " + id);
    }
    return it->second;
}

ContextGraph::NodeIndex ContextGraph::insert_node(Node node) {
    if (index_.count(node.id)) {
        throw Error(ErrorCode::duplicate_id, "node id already present: " + node.id);
    }
    NodeIndex idx = static_cast<NodeIndex>(nodes_.size());
    index_.emplace(node.id, idx);
    nodes_.push_back(std::move(node));
    adjacency_.emplace_back();
    return idx;
}

std::string ContextGraph::add_person(const std::string& id, const std::string& name,
                                     std::map<std::string, std::string> attributes) {
    Node n;
    n.id = id;
    n.kind = NodeKind::person;
    n.label = name;
    n.attributes = std::move(attributes);
    insert_node(std::move(n));
    return id;
}

std::string ContextGraph::add_asset(const std::string& id, AssetKind kind, const std::string& title,
                                    std::map<std::string, std::string> attributes) {
    Node n;
    n.id = id;
    n.kind = NodeKind::asset;
    n.asset_kind = kind;
    n.label = title;
    n.attributes = std::move(attributes);
    insert_node(std::move(n));
    return id;
}

std::string ContextGraph::add_keyword(const std::string& label) {
    std::string normalized = normalize_keyword(label);
    if (normalized.empty()) {
        throw Error(ErrorCode::invalid_argument, "keyword label is empty");
    }
    auto it = keyword_by_label_.find(normalized);
    if (it != keyword_by_label_.end()) {
        return nodes_[it->second].id;
    }
    Node n;
    n.id = "kw:" + normalized;
    n.kind = NodeKind::keyword;
    n.label = normalized;
    NodeIndex idx = insert_node(std::move(n));
    keyword_by_label_.emplace(normalized, idx);
    return nodes_[idx].id;
}

void ContextGraph::insert_adjacency(NodeIndex from, NodeIndex to, EdgeKind kind) {
    auto& list = adjacency_[from];
    AdjEntry entry{to, kind, true};
    auto pos = std::lower_bound(list.begin(), list.end(), entry,
                                [this](const AdjEntry& a, const AdjEntry& b) {
                                    return nodes_[a.neighbor].id < nodes_[b.neighbor].id;
                                });
    list.insert(pos, entry);

    auto& rev = adjacency_[to];
    AdjEntry back{from, kind, false};
    auto rpos = std::lower_bound(rev.begin(), rev.end(), back,
                                 [this](const AdjEntry& a, const AdjEntry& b) {
                                     return nodes_[a.neighbor].id < nodes_[b.neighbor].id;
                                 });
    rev.insert(rpos, back);
}

void ContextGraph::add_structural_edge(EdgeKind kind, const std::string& from, const std::string& to) {
    NodeIndex f = require_node(from, "edge source");
    NodeIndex t = require_node(to, "edge target");
    if (kind == EdgeKind::is_root_asset_of) {
        if (nodes_[f].kind != NodeKind::asset || nodes_[f].asset_kind != AssetKind::root) {
            throw Error(ErrorCode::kind_mismatch, "is_root_asset_of source must be a root asset: " + from);
        }
        if (nodes_[t].kind != NodeKind::asset || nodes_[t].asset_kind != AssetKind::sub) {
            throw Error(ErrorCode::kind_mismatch, "is_root_asset_of target must be a sub asset: " + to);
        }
    } else {
        if (nodes_[f].kind != NodeKind::asset) {
            throw Error(ErrorCode::kind_mismatch, "has_keywords source must be an asset: " + from);
        }
        if (nodes_[t].kind != NodeKind::keyword) {
            throw Error(ErrorCode::kind_mismatch, "has_keywords target must be a keyword: " + to);
        }
    }
    for (const AdjEntry& e : adjacency_[f]) {
        if (e.neighbor == t && e.kind == kind && e.outgoing) {
            return;   // duplicate (kind, from, to): no-op
        }
    }
    if (kind == EdgeKind::is_root_asset_of) {
        // a sub asset has exactly one root parent
        for (const AdjEntry& e : adjacency_[t]) {
            if (e.kind == EdgeKind::is_root_asset_of && !e.outgoing && e.neighbor != f) {
                throw Error(ErrorCode::invalid_argument,
                            "sub asset " + to + " already has root parent " + nodes_[e.neighbor].id);
            }
        }
    }
    insert_adjacency(f, t, kind);
    edge_count_++;
}

void ContextGraph::validate_interaction(const Interaction& i, NodeIndex person, NodeIndex asset) const {
    if (nodes_[person].kind != NodeKind::person) {
        throw Error(ErrorCode::kind_mismatch, "interaction source is not a person: " + i.person);
    }
    if (nodes_[asset].kind != NodeKind::asset) {
        throw Error(ErrorCode::kind_mismatch, "interaction target is not an asset: " + i.asset);
    }
    if (!type_valid_for(nodes_[asset].asset_kind, i.type)) {
        throw Error(ErrorCode::invalid_interaction_type,
                    std::string(to_string(i.type)) + " is not valid for a " +
                        to_string(nodes_[asset].asset_kind) + " asset");
    }
    if (i.type == InteractionType::comment) {
        if (i.polarity < -1.0 || i.polarity > 1.0) {
            throw Error(ErrorCode::invalid_argument, "comment polarity outside [-1, 1]");
        }
        if (i.intensity < 0.0 || i.intensity > 1.0) {
            throw Error(ErrorCode::invalid_argument, "comment intensity outside [0, 1]");
        }
    }
}

void ContextGraph::record_interaction(Interaction i) {
    NodeIndex person = require_node(i.person, "person");
    NodeIndex asset = require_node(i.asset, "asset");
    validate_interaction(i, person, asset);

    i.polarity = stored_polarity(i.type, i.polarity);
    if (i.type != InteractionType::comment) {
        i.intensity = 0.0;
    }

    InteractionSlot& slot = interactions_[person][asset];
    if (interaction_is_explicit(i.type)) {
        if (!slot.explicit_slot) interaction_count_++;
        slot.explicit_slot = std::move(i);
        return;
    }
    for (Interaction& existing : slot.implicits) {
        if (existing.type == i.type) {
            existing.timestamp_ms = i.timestamp_ms;
            return;
        }
    }
    auto pos = std::lower_bound(slot.implicits.begin(), slot.implicits.end(), i,
                                [](const Interaction& a, const Interaction& b) {
                                    return static_cast<int>(a.type) < static_cast<int>(b.type);
                                });
    slot.implicits.insert(pos, std::move(i));
    interaction_count_++;
}

bool ContextGraph::has_node(const std::string& id) const {
    return index_.count(id) != 0;
}

ContextGraph::NodeIndex ContextGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? npos : it->second;
}

const std::string& ContextGraph::id_of(NodeIndex idx) const {
    return nodes_.at(static_cast<std::size_t>(idx)).id;
}

NodeKind ContextGraph::node_kind(const std::string& id) const {
    return nodes_[require_node(id, "query")].kind;
}

NodeKind ContextGraph::node_kind(NodeIndex idx) const {
    return nodes_.at(static_cast<std::size_t>(idx)).kind;
}

AssetKind ContextGraph::asset_kind(const std::string& id) const {
    NodeIndex idx = require_node(id, "asset");
    if (nodes_[idx].kind != NodeKind::asset) {
        throw Error(ErrorCode::kind_mismatch, "node is not an asset: " + id);
    }
    return nodes_[idx].asset_kind;
}

AssetKind ContextGraph::asset_kind(NodeIndex idx) const {
    return nodes_.at(static_cast<std::size_t>(idx)).asset_kind;
}

const std::string& ContextGraph::title_of(const std::string& asset_id) const {
    return nodes_[require_node(asset_id, "asset")].label;
}

std::vector<NeighborRef> ContextGraph::neighbors(const std::string& id) const {
    NodeIndex idx = require_node(id, "query");
    std::vector<NeighborRef> out;
    out.reserve(adjacency_[idx].size());
    for (const AdjEntry& e : adjacency_[idx]) {
        out.push_back({nodes_[e.neighbor].id, e.kind});
    }
    return out;
}

std::vector<NeighborRef> ContextGraph::neighbors(const std::string& id,
                                                 const std::vector<EdgeKind>& filter) const {
    NodeIndex idx = require_node(id, "query");
    std::vector<NeighborRef> out;
    for (const AdjEntry& e : adjacency_[idx]) {
        if (std::find(filter.begin(), filter.end(), e.kind) != filter.end()) {
            out.push_back({nodes_[e.neighbor].id, e.kind});
        }
    }
    return out;
}

std::vector<Interaction> ContextGraph::interactions_between(const std::string& person,
                                                            const std::string& asset) const {
    NodeIndex p = require_node(person, "person");
    NodeIndex a = require_node(asset, "asset");
    std::vector<Interaction> out;
    const InteractionSlot* slot = slot_for(p, a);
    if (!slot) return out;
    if (slot->explicit_slot) out.push_back(*slot->explicit_slot);
    out.insert(out.end(), slot->implicits.begin(), slot->implicits.end());
    return out;
}

bool ContextGraph::has_interaction(const std::string& person, const std::string& asset,
                                   InteractionType type) const {
    NodeIndex p = require_node(person, "person");
    NodeIndex a = require_node(asset, "asset");
    const InteractionSlot* slot = slot_for(p, a);
    if (!slot) return false;
    if (slot->explicit_slot && slot->explicit_slot->type == type) return true;
    for (const Interaction& i : slot->implicits) {
        if (i.type == type) return true;
    }
    return false;
}

std::vector<std::string> ContextGraph::person_ids() const {
    std::vector<std::string> out;
    for (const Node& n : nodes_) {
        if (n.kind == NodeKind::person) out.push_back(n.id);
    }
    return out;
}

std::vector<std::string> ContextGraph::root_asset_ids() const {
    std::vector<std::string> out;
    for (const Node& n : nodes_) {
        if (n.kind == NodeKind::asset && n.asset_kind == AssetKind::root) out.push_back(n.id);
    }
    return out;
}

std::vector<std::string> ContextGraph::widgets_of(const std::string& root_id) const {
    NodeIndex idx = require_node(root_id, "root asset");
    std::vector<std::string> out;
    for (const AdjEntry& e : adjacency_[idx]) {
        if (e.kind == EdgeKind::is_root_asset_of && e.outgoing) {
            out.push_back(nodes_[e.neighbor].id);
        }
    }
    return out;
}

const std::vector<ContextGraph::AdjEntry>& ContextGraph::adjacency(NodeIndex idx) const {
    return adjacency_.at(static_cast<std::size_t>(idx));
}

const ContextGraph::InteractionSlot* ContextGraph::slot_for(NodeIndex person, NodeIndex asset) const {
    auto pit = interactions_.find(person);
    if (pit == interactions_.end()) return nullptr;
    auto ait = pit->second.find(asset);
    if (ait == pit->second.end()) return nullptr;
    return &ait->second;
}

const std::unordered_map<ContextGraph::NodeIndex, ContextGraph::InteractionSlot>*
ContextGraph::slots_of(NodeIndex person) const {
    auto pit = interactions_.find(person);
    if (pit == interactions_.end()) return nullptr;
    return &pit->second;
}

namespace {

json interaction_to_json(const Interaction& i) {
    json j;
    j["record"] = "interaction";
    j["person"] = i.person;
    j["asset"] = i.asset;
    j["type"] = to_string(i.type);
    j["polarity"] = i.polarity;
    j["intensity"] = i.intensity;
    j["text"] = i.text;
    j["timestamp"] = i.timestamp_ms;
    return j;
}

} // namespace

std::string ContextGraph::snapshot_string() const {
    std::ostringstream out;
    for (const Node& n : nodes_) {
        json j;
        j["record"] = "node";
        j["kind"] = to_string(n.kind);
        j["id"] = n.id;
        switch (n.kind) {
        case NodeKind::person:
            j["name"] = n.label;
            j["attributes"] = json(n.attributes);
            break;
        case NodeKind::asset:
            j["asset_kind"] = to_string(n.asset_kind);
            j["title"] = n.label;
            j["attributes"] = json(n.attributes);
            break;
        case NodeKind::keyword:
            j["label"] = n.label;
            break;
        }
        out << j.dump() << '\n';
    }

    struct EdgeRec { EdgeKind kind; const std::string* from; const std::string* to; };
    std::vector<EdgeRec> edges;
    edges.reserve(edge_count_);
    for (NodeIndex idx = 0; idx < static_cast<NodeIndex>(nodes_.size()); idx++) {
        for (const AdjEntry& e : adjacency_[idx]) {
            if (e.outgoing) edges.push_back({e.kind, &nodes_[idx].id, &nodes_[e.neighbor].id});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeRec& a, const EdgeRec& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (*a.from != *b.from) return *a.from < *b.from;
        return *a.to < *b.to;
    });
    for (const EdgeRec& e : edges) {
        json j;
        j["record"] = "edge";
        j["kind"] = to_string(e.kind);
        j["from"] = *e.from;
        j["to"] = *e.to;
        out << j.dump() << '\n';
    }

    std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
    for (const auto& [person, per_asset] : interactions_) {
        for (const auto& [asset, slot] : per_asset) {
            (void)slot;
            pairs.emplace_back(person, asset);
        }
    }
    std::sort(pairs.begin(), pairs.end(), [this](const auto& a, const auto& b) {
        if (nodes_[a.first].id != nodes_[b.first].id) return nodes_[a.first].id < nodes_[b.first].id;
        return nodes_[a.second].id < nodes_[b.second].id;
    });
    for (const auto& [person, asset] : pairs) {
        const InteractionSlot& slot = interactions_.at(person).at(asset);
        if (slot.explicit_slot) {
            out << interaction_to_json(*slot.explicit_slot).dump() << '\n';
        }
        for (const Interaction& i : slot.implicits) {
            out << interaction_to_json(i).dump() << '\n';
        }
    }
    return out.str();
}

void ContextGraph::snapshot(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::io, "cannot open snapshot file for writing: " + path);
    }
    f << snapshot_string();
    if (!f) {
        throw Error(ErrorCode::io, "failed writing snapshot to " + path);
    }
}

ContextGraph ContextGraph::restore_string(const std::string& content, const std::string& origin) {
    ContextGraph g;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line == "\r") continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::parse,
                        origin + ":" + std::to_string(line_no) + ": malformed snapshot record: " + e.what());
        }
        try {
            const std::string record = j.at("record").get<std::string>();
            if (record == "node") {
                const std::string kind = j.at("kind").get<std::string>();
                if (kind == "person") {
                    g.add_person(j.at("id").get<std::string>(), j.at("name").get<std::string>(),
                                 j.at("attributes").get<std::map<std::string, std::string>>());
                } else if (kind == "asset") {
                    const std::string ak = j.at("asset_kind").get<std::string>();
                    g.add_asset(j.at("id").get<std::string>(),
                                ak == "root" ? AssetKind::root : AssetKind::sub,
                                j.at("title").get<std::string>(),
                                j.at("attributes").get<std::map<std::string, std::string>>());
                } else if (kind == "keyword") {
                    // preserve the stored id exactly
                    Node n;
                    n.id = j.at("id").get<std::string>();
                    n.kind = NodeKind::keyword;
                    n.label = j.at("label").get<std::string>();
                    if (g.keyword_by_label_.count(n.label)) {
                        throw Error(ErrorCode::duplicate_id, "duplicate keyword label: " + n.label);
                    }
                    NodeIndex idx = g.insert_node(std::move(n));
                    g.keyword_by_label_.emplace(g.nodes_[idx].label, idx);
                } else {
                    throw Error(ErrorCode::parse, "unknown node kind: " + kind);
                }
            } else if (record == "edge") {
                g.add_structural_edge(edge_kind_from_string(j.at("kind").get<std::string>()),
                                      j.at("from").get<std::string>(), j.at("to").get<std::string>());
            } else if (record == "interaction") {
                Interaction i;
                i.person = j.at("person").get<std::string>();
                i.asset = j.at("asset").get<std::string>();
                i.type = interaction_type_from_string(j.at("type").get<std::string>());
                i.polarity = j.at("polarity").get<double>();
                i.intensity = j.at("intensity").get<double>();
                i.text = j.at("text").get<std::string>();
                i.timestamp_ms = j.at("timestamp").get<std::int64_t>();
                g.record_interaction(std::move(i));
            } else {
                throw Error(ErrorCode::parse, "unknown record kind: " + record);
            }
        } catch (const json::exception& e) {
            throw Error(ErrorCode::parse,
                        origin + ":" + std::to_string(line_no) + ": malformed snapshot record: " + e.what());
        } catch (const Error& e) {
            if (e.code() == ErrorCode::parse) {
                throw Error(ErrorCode::parse, origin + ":" + std::to_string(line_no) + ": " + e.what());
            }
            throw Error(e.code(), origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return g;
}

ContextGraph ContextGraph::restore(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::io, "cannot open snapshot file: " + path);
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return restore_string(buf.str(), path);
}

} // namespace samrec
