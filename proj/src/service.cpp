#include "samrec/service.hpp"

#include <algorithm>
#include <climits>

#include <httplib.h>
#include <json.hpp>

#include "samrec/wire.hpp"

namespace samrec {

namespace {

int http_status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::state: return 409;
    case ErrorCode::io: return 500;
    default: return 400;
    }
}

std::string error_body(const std::string& message) {
    return nlohmann::json{{"error", message}}.dump();
}

void require_engine_name(const std::string& name) {
    if (name != "sam" && name != "knn") {
        throw Error(ErrorCode::invalid_argument, "unknown engine: " + name);
    }
}

} // namespace

RankedList ranked_roots(const SharedEngine& engine, const std::string& engine_name,
                        const std::string& person, int limit, bool include_consumed) {
    require_engine_name(engine_name);
    if (engine_name == "sam") {
        Recommender rec(engine.graph, engine.config);
        return rec.recommend_roots(person, limit, include_consumed);
    }
    if (limit < 1) {
        throw Error(ErrorCode::invalid_argument, "k must be >= 1");
    }
    if (!engine.graph.has_node(person)) {
        throw Error(ErrorCode::not_found, "person node not found: " + person);
    }
    RatingMatrix matrix = extract_ratings(engine.graph);
    Predictor predictor = make_knn_predictor(matrix, engine.knn_k);
    RankedList list;
    list.person = person;
    list.level = ListLevel::root;
    for (const std::string& root : engine.graph.root_asset_ids()) {
        if (!include_consumed &&
            engine.graph.has_interaction(person, root, InteractionType::consume)) {
            continue;
        }
        auto [value, source] = predictor(person, root);
        list.entries.push_back({root, std::clamp(value, -1.0, 1.0), source});
    }
    sort_entries(list.entries);
    if (static_cast<int>(list.entries.size()) > limit) {
        list.entries.resize(static_cast<std::size_t>(limit));
    }
    return list;
}

RankedList ranked_widgets(const SharedEngine& engine, const std::string& engine_name,
                          const std::string& person, const std::string& root_asset) {
    require_engine_name(engine_name);
    if (engine_name == "sam") {
        Recommender rec(engine.graph, engine.config);
        return rec.recommend_widgets(person, root_asset);
    }
    if (!engine.graph.has_node(person)) {
        throw Error(ErrorCode::not_found, "person node not found: " + person);
    }
    if (!engine.graph.has_node(root_asset)) {
        throw Error(ErrorCode::not_found, "asset node not found: " + root_asset);
    }
    if (engine.graph.node_kind(root_asset) != NodeKind::asset ||
        engine.graph.asset_kind(root_asset) != AssetKind::root) {
        throw Error(ErrorCode::kind_mismatch, "not a root asset: " + root_asset);
    }
    RatingMatrix matrix = extract_ratings(engine.graph);
    Predictor predictor = make_knn_predictor(matrix, engine.knn_k);
    RankedList list;
    list.person = person;
    list.level = ListLevel::widget;
    list.scope = root_asset;
    for (const std::string& widget : engine.graph.widgets_of(root_asset)) {
        auto [value, source] = predictor(person, widget);
        list.entries.push_back({widget, std::clamp(value, -1.0, 1.0), source});
    }
    sort_entries(list.entries);
    return list;
}

RecommendService::RecommendService(SharedEngine& engine)
    : engine_(engine), server_(std::make_unique<httplib::Server>()) {
    routes();
}

RecommendService::~RecommendService() {
    stop();
}

bool RecommendService::start(const std::string& host, int port) {
    if (thread_.joinable()) {
        throw Error(ErrorCode::state, "service already running");
    }
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
        if (port_ < 0) return false;
    } else {
        if (!server_->bind_to_port(host, port)) return false;
        port_ = port;
    }
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return true;
}

void RecommendService::stop() {
    if (thread_.joinable()) {
        server_->stop();
        thread_.join();
    }
}

bool RecommendService::running() const {
    return server_->is_running();
}

void RecommendService::save_snapshot(const std::string& path) {
    pause_writes();
    try {
        std::shared_lock lock(engine_.mutex);
        engine_.graph.snapshot(path);
    } catch (...) {
        resume_writes();
        throw;
    }
    resume_writes();
}

namespace {

int parse_limit(const httplib::Request& req) {
    if (!req.has_param("limit")) return INT_MAX;
    const std::string raw = req.get_param_value("limit");
    try {
        std::size_t used = 0;
        int limit = std::stoi(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return limit;
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument, "limit is not an integer: " + raw);
    }
}

bool parse_flag(const httplib::Request& req, const std::string& name, bool fallback) {
    if (!req.has_param(name)) return fallback;
    const std::string raw = req.get_param_value(name);
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw Error(ErrorCode::invalid_argument, name + " must be true or false");
}

} // namespace

void RecommendService::routes() {
    auto guarded = [this](const std::function<void(const httplib::Request&, httplib::Response&)>& fn) {
        return [this, fn](const httplib::Request& req, httplib::Response& res) {
            try {
                fn(req, res);
            } catch (const Error& e) {
                res.status = http_status_for(e.code());
                res.set_content(error_body(e.what()), "application/json");
            } catch (const std::exception& e) {
                res.status = 500;
                res.set_content(error_body(e.what()), "application/json");
            }
        };
    };

    server_->Get("/health", guarded([this](const httplib::Request&, httplib::Response& res) {
        std::shared_lock lock(engine_.mutex);
        res.set_content(graph_stats_json(engine_.graph), "application/json");
    }));

    server_->Get(R"(/users/([^/]+)/recommendations/roots)",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                     std::string person = req.matches[1];
                     std::string engine_name = req.has_param("engine")
                                                   ? req.get_param_value("engine")
                                                   : "sam";
                     int limit = parse_limit(req);
                     bool include_consumed = parse_flag(req, "include_consumed", false);
                     std::shared_lock lock(engine_.mutex);
                     RankedList list =
                         ranked_roots(engine_, engine_name, person, limit, include_consumed);
                     res.set_content(ranked_list_json(list), "application/json");
                 }));

    server_->Get(R"(/users/([^/]+)/roots/([^/]+)/widgets)",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                     std::string person = req.matches[1];
                     std::string root = req.matches[2];
                     std::string engine_name = req.has_param("engine")
                                                   ? req.get_param_value("engine")
                                                   : "sam";
                     std::shared_lock lock(engine_.mutex);
                     RankedList list = ranked_widgets(engine_, engine_name, person, root);
                     res.set_content(ranked_list_json(list), "application/json");
                 }));

    server_->Post("/interactions",
                  guarded([this](const httplib::Request& req, httplib::Response& res) {
                      if (snapshotting_) {
                          throw Error(ErrorCode::state, "snapshot in progress, write rejected");
                      }
                      Interaction i = interaction_from_json(req.body);
                      {
                          std::unique_lock lock(engine_.mutex);
                          engine_.graph.record_interaction(std::move(i));
                      }
                      res.status = 204;
                  }));
}

} // namespace samrec
