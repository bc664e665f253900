#include "samrec/wire.hpp"

#include <cstdio>

#include <json.hpp>

namespace samrec {

using nlohmann::json;

namespace {

std::string quoted(const std::string& s) {
    return json(s).dump();
}

std::string fixed6(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

} // namespace

std::string ranked_entries_json(const RankedList& list) {
    std::string out = "[";
    bool first = true;
    for (const RelevanceScore& e : list.entries) {
        if (!first) out += ",";
        first = false;
        out += "{\"asset\":" + quoted(e.asset) + ",\"score\":" + fixed6(e.value) +
               ",\"source\":\"" + to_string(e.source) + "\"}";
    }
    out += "]";
    return out;
}

std::string ranked_list_json(const RankedList& list) {
    return "{\"user\":" + quoted(list.person) + ",\"level\":\"" + to_string(list.level) +
           "\",\"entries\":" + ranked_entries_json(list) + "}";
}

std::string eval_report_json(const EvalReport& report) {
    json counts;
    for (ScoreSource s : {ScoreSource::graph, ScoreSource::cf_fallback, ScoreSource::user_mean}) {
        auto it = report.per_source_counts.find(s);
        counts[to_string(s)] = it == report.per_source_counts.end() ? 0 : it->second;
    }
    json j;
    j["mae"] = report.mae;
    j["rmse"] = report.rmse;
    j["mpe_percent"] = report.mpe_percent;
    j["n"] = report.n;
    j["per_source_counts"] = counts;
    return j.dump();
}

std::string latency_report_json(const std::map<std::string, LatencyStats>& stats) {
    json j;
    for (const auto& [engine, s] : stats) {
        json e;
        e["mean_us"] = s.mean_us;
        e["median_us"] = s.median_us;
        e["p95_us"] = s.p95_us;
        e["p99_us"] = s.p99_us;
        e["count"] = s.count;
        e["warmup"] = s.warmup;
        e["errors"] = s.errors;
        j[engine] = e;
    }
    return j.dump();
}

std::string graph_stats_json(const ContextGraph& graph) {
    json j;
    j["nodes"] = graph.node_count();
    j["edges"] = graph.edge_count();
    j["interactions"] = graph.interaction_count();
    return j.dump();
}

std::string interactions_json(const std::vector<Interaction>& list) {
    json arr = json::array();
    for (const Interaction& i : list) {
        json j;
        j["person"] = i.person;
        j["asset"] = i.asset;
        j["type"] = to_string(i.type);
        j["polarity"] = i.polarity;
        j["intensity"] = i.intensity;
        j["text"] = i.text;
        j["timestamp"] = i.timestamp_ms;
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

std::string neighbors_json(const std::vector<NeighborRef>& list) {
    json arr = json::array();
    for (const NeighborRef& n : list) {
        json j;
        j["id"] = n.id;
        j["kind"] = to_string(n.kind);
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

Interaction interaction_from_json(const std::string& body) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse, std::string("malformed interaction body: ") + e.what());
    }
    try {
        Interaction i;
        i.person = j.at("user").get<std::string>();
        i.asset = j.at("asset").get<std::string>();
        i.type = interaction_type_from_string(j.at("type").get<std::string>());
        i.polarity = j.value("polarity", 0.0);
        i.intensity = j.value("intensity", 0.0);
        i.text = j.value("text", std::string());
        i.timestamp_ms = j.at("timestamp").get<std::int64_t>();
        return i;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse, std::string("malformed interaction body: ") + e.what());
    }
}

} // namespace samrec
