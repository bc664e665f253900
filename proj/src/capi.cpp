#include "samrec.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "samrec/eval.hpp"
#include "samrec/ingest.hpp"
#include "samrec/service.hpp"
#include "samrec/wire.hpp"

using namespace samrec;

struct samrec_engine {
    SharedEngine impl;
    std::string last_error;
};

struct samrec_server {
    explicit samrec_server(samrec_engine* e) : engine(e), service(e->impl) {}
    samrec_engine* engine;
    RecommendService service;
};

namespace {

thread_local std::string g_last_error;

const char* SAMREC_VERSION = "1.0.0";

int status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument: return SAMREC_ERR_USAGE;
    case ErrorCode::not_found: return SAMREC_ERR_NOT_FOUND;
    case ErrorCode::duplicate_id: return SAMREC_ERR_DUPLICATE;
    case ErrorCode::kind_mismatch: return SAMREC_ERR_KIND_MISMATCH;
    case ErrorCode::invalid_interaction_type: return SAMREC_ERR_USAGE;
    case ErrorCode::parse: return SAMREC_ERR_DATA;
    case ErrorCode::io: return SAMREC_ERR_IO;
    case ErrorCode::empty_input: return SAMREC_ERR_DATA;
    case ErrorCode::state: return SAMREC_ERR_STATE;
    }
    return SAMREC_ERR_INTERNAL;
}

void set_error(samrec_engine* engine, const std::string& message) {
    if (engine) {
        engine->last_error = message;
    } else {
        g_last_error = message;
    }
}

template <typename Fn>
int wrap(samrec_engine* engine, Fn&& fn) {
    try {
        fn();
        return SAMREC_OK;
    } catch (const Error& e) {
        set_error(engine, e.what());
        return status_for(e.code());
    } catch (const std::exception& e) {
        set_error(engine, e.what());
        return SAMREC_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int require(samrec_engine* engine, bool ok, const char* what) {
    if (ok) return SAMREC_OK;
    set_error(engine, std::string("missing required argument: ") + what);
    return SAMREC_ERR_USAGE;
}

} // namespace

extern "C" {

const char* samrec_version(void) {
    return SAMREC_VERSION;
}

samrec_engine* samrec_engine_new(void) {
    return new (std::nothrow) samrec_engine();
}

samrec_engine* samrec_engine_open(const char* snapshot_path) {
    if (!snapshot_path) {
        g_last_error = "missing required argument: snapshot_path";
        return nullptr;
    }
    try {
        auto engine = std::make_unique<samrec_engine>();
        engine->impl.graph = ContextGraph::restore(snapshot_path);
        return engine.release();
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void samrec_engine_free(samrec_engine* engine) {
    delete engine;
}

const char* samrec_last_error(const samrec_engine* engine) {
    return engine ? engine->last_error.c_str() : g_last_error.c_str();
}

int samrec_engine_save(samrec_engine* engine, const char* path) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, path, "path")) return rc;
    return wrap(engine, [&] {
        std::shared_lock lock(engine->impl.mutex);
        engine->impl.graph.snapshot(path);
    });
}

int samrec_engine_set_option(samrec_engine* engine, const char* name, double value) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, name, "name")) return rc;
    return wrap(engine, [&] {
        std::unique_lock lock(engine->impl.mutex);
        std::string key(name);
        int int_value = static_cast<int>(value);
        if (key == "max_depth") {
            EngineConfig candidate = engine->impl.config;
            candidate.max_depth = int_value;
            validate(candidate);
            engine->impl.config = candidate;
        } else if (key == "t_root") {
            EngineConfig candidate = engine->impl.config;
            candidate.t_root = int_value;
            validate(candidate);
            engine->impl.config = candidate;
        } else if (key == "t_widget") {
            EngineConfig candidate = engine->impl.config;
            candidate.t_widget = int_value;
            validate(candidate);
            engine->impl.config = candidate;
        } else if (key == "knn_k") {
            if (int_value < 1) {
                throw Error(ErrorCode::invalid_argument, "knn_k must be >= 1");
            }
            engine->impl.knn_k = int_value;
        } else {
            throw Error(ErrorCode::invalid_argument, "unknown option: " + key);
        }
    });
}

int samrec_graph_stats(samrec_engine* engine, char** json_out) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, json_out, "json_out")) return rc;
    return wrap(engine, [&] {
        std::shared_lock lock(engine->impl.mutex);
        *json_out = dup_string(graph_stats_json(engine->impl.graph));
    });
}

int samrec_add_person(samrec_engine* engine, const char* id, const char* name) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, id, "id")) return rc;
    return wrap(engine, [&] {
        std::unique_lock lock(engine->impl.mutex);
        engine->impl.graph.add_person(id, name ? name : id);
    });
}

int samrec_add_root_asset(samrec_engine* engine, const char* id, const char* title) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, id, "id")) return rc;
    return wrap(engine, [&] {
        std::unique_lock lock(engine->impl.mutex);
        engine->impl.graph.add_asset(id, AssetKind::root, title ? title : id);
    });
}

int samrec_add_sub_asset(samrec_engine* engine, const char* id, const char* title,
                         const char* root_id) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, id && root_id, "id, root_id")) return rc;
    return wrap(engine, [&] {
        std::unique_lock lock(engine->impl.mutex);
        ContextGraph& g = engine->impl.graph;
        // validate the parent first so a failure leaves no orphan node behind
        if (!g.has_node(root_id)) {
            throw Error(ErrorCode::not_found, std::string("root asset not found: ") + root_id);
        }
        if (g.node_kind(root_id) != NodeKind::asset || g.asset_kind(root_id) != AssetKind::root) {
            throw Error(ErrorCode::kind_mismatch, std::string("not a root asset: ") + root_id);
        }
        g.add_asset(id, AssetKind::sub, title ? title : id);
        g.add_structural_edge(EdgeKind::is_root_asset_of, root_id, id);
    });
}

int samrec_add_keyword(samrec_engine* engine, const char* asset_id, const char* label) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, asset_id && label, "asset_id, label")) return rc;
    return wrap(engine, [&] {
        std::unique_lock lock(engine->impl.mutex);
        ContextGraph& g = engine->impl.graph;
        if (!g.has_node(asset_id)) {
            throw Error(ErrorCode::not_found, std::string("asset not found: ") + asset_id);
        }
        if (g.node_kind(asset_id) != NodeKind::asset) {
            throw Error(ErrorCode::kind_mismatch, std::string("not an asset: ") + asset_id);
        }
        std::string kw = g.add_keyword(label);
        g.add_structural_edge(EdgeKind::has_keywords, asset_id, kw);
    });
}

int samrec_record_interaction(samrec_engine* engine, const char* user, const char* asset,
                              const char* type, double polarity, double intensity,
                              const char* text, long long timestamp_ms) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, user && asset && type, "user, asset, type")) return rc;
    return wrap(engine, [&] {
        Interaction i;
        i.person = user;
        i.asset = asset;
        i.type = interaction_type_from_string(type);
        i.polarity = polarity;
        i.intensity = intensity;
        i.text = text ? text : "";
        i.timestamp_ms = timestamp_ms;
        std::unique_lock lock(engine->impl.mutex);
        engine->impl.graph.record_interaction(std::move(i));
    });
}

int samrec_record_interaction_json(samrec_engine* engine, const char* body) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, body, "body")) return rc;
    return wrap(engine, [&] {
        Interaction i = interaction_from_json(body);
        std::unique_lock lock(engine->impl.mutex);
        engine->impl.graph.record_interaction(std::move(i));
    });
}

int samrec_score(samrec_engine* engine, const char* user, const char* asset,
                 const char* engine_name, double* value_out, char* source_buf,
                 size_t source_buf_size) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, user && asset && value_out, "user, asset, value_out")) return rc;
    return wrap(engine, [&] {
        std::string name = engine_name ? engine_name : "sam";
        std::shared_lock lock(engine->impl.mutex);
        double value = 0.0;
        ScoreSource source = ScoreSource::graph;
        if (name == "sam") {
            Recommender rec(engine->impl.graph, engine->impl.config);
            RelevanceScore s = rec.score(user, asset);
            value = s.value;
            source = s.source;
        } else if (name == "knn") {
            if (!engine->impl.graph.has_node(user)) {
                throw Error(ErrorCode::not_found, std::string("person node not found: ") + user);
            }
            if (!engine->impl.graph.has_node(asset)) {
                throw Error(ErrorCode::not_found, std::string("asset node not found: ") + asset);
            }
            RatingMatrix matrix = extract_ratings(engine->impl.graph);
            auto [v, s] = make_knn_predictor(matrix, engine->impl.knn_k)(user, asset);
            value = std::clamp(v, -1.0, 1.0);
            source = s;
        } else {
            throw Error(ErrorCode::invalid_argument, "unknown engine: " + name);
        }
        *value_out = value;
        if (source_buf && source_buf_size > 0) {
            std::snprintf(source_buf, source_buf_size, "%s", to_string(source));
        }
    });
}

int samrec_recommend_roots(samrec_engine* engine, const char* user, int limit,
                           int include_consumed, const char* engine_name, char** json_out) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, user && json_out, "user, json_out")) return rc;
    return wrap(engine, [&] {
        std::shared_lock lock(engine->impl.mutex);
        RankedList list = ranked_roots(engine->impl, engine_name ? engine_name : "sam", user,
                                       limit, include_consumed != 0);
        *json_out = dup_string(ranked_list_json(list));
    });
}

int samrec_recommend_widgets(samrec_engine* engine, const char* user, const char* root_asset,
                             const char* engine_name, char** json_out) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, user && root_asset && json_out, "user, root_asset, json_out")) {
        return rc;
    }
    return wrap(engine, [&] {
        std::shared_lock lock(engine->impl.mutex);
        RankedList list =
            ranked_widgets(engine->impl, engine_name ? engine_name : "sam", user, root_asset);
        *json_out = dup_string(ranked_list_json(list));
    });
}

int samrec_interactions(samrec_engine* engine, const char* user, const char* asset,
                        char** json_out) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, user && asset && json_out, "user, asset, json_out")) return rc;
    return wrap(engine, [&] {
        std::shared_lock lock(engine->impl.mutex);
        *json_out = dup_string(interactions_json(engine->impl.graph.interactions_between(user, asset)));
    });
}

int samrec_neighbors(samrec_engine* engine, const char* node_id, char** json_out) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, node_id && json_out, "node_id, json_out")) return rc;
    return wrap(engine, [&] {
        std::shared_lock lock(engine->impl.mutex);
        *json_out = dup_string(neighbors_json(engine->impl.graph.neighbors(node_id)));
    });
}

int samrec_ingest_movielens(samrec_engine* engine, const char* ratings_csv, const char* tags_csv,
                            const char* movies_csv, int n_movies, int keywords_per_movie,
                            double train_fraction, unsigned long long seed, double scale_min,
                            double scale_max, const char* test_csv_out) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, ratings_csv && tags_csv && movies_csv,
                         "ratings_csv, tags_csv, movies_csv")) {
        return rc;
    }
    return wrap(engine, [&] {
        SamplePlan plan;
        plan.n_movies = n_movies;
        plan.keywords_per_movie = keywords_per_movie;
        plan.train_fraction = train_fraction;
        plan.rng_seed = seed;
        RatingScale scale{scale_min, scale_max};
        IngestResult result = ingest_dataset(ratings_csv, tags_csv, movies_csv, plan, scale);
        if (test_csv_out) {
            write_test_csv(test_csv_out, result.test, scale);
        }
        std::unique_lock lock(engine->impl.mutex);
        engine->impl.graph = std::move(result.graph);
    });
}

int samrec_evaluate(samrec_engine* engine, const char* test_csv, const char* engine_name,
                    char** json_out) {
    if (!engine) return SAMREC_ERR_USAGE;
    if (int rc = require(engine, test_csv && json_out, "test_csv, json_out")) return rc;
    return wrap(engine, [&] {
        std::string name = engine_name ? engine_name : "both";
        bool want_sam = name == "sam" || name == "both";
        bool want_knn = name == "knn" || name == "both";
        if (!want_sam && !want_knn) {
            throw Error(ErrorCode::invalid_argument, "unknown engine: " + name);
        }
        std::vector<TestRating> test = load_test_csv(test_csv);
        std::shared_lock lock(engine->impl.mutex);
        std::string out = "{";
        if (want_sam) {
            Recommender rec(engine->impl.graph, engine->impl.config);
            EvalReport report = evaluate(make_sam_predictor(rec), test, engine->impl.graph);
            out += "\"sam\":" + eval_report_json(report);
        }
        if (want_knn) {
            RatingMatrix matrix = extract_ratings(engine->impl.graph);
            EvalReport report = evaluate(make_knn_predictor(matrix, engine->impl.knn_k), test,
                                         engine->impl.graph);
            if (want_sam) out += ",";
            out += "\"knn\":" + eval_report_json(report);
        }
        out += "}";
        *json_out = dup_string(out);
    });
}

samrec_server* samrec_server_start(samrec_engine* engine, const char* host, int port) {
    if (!engine) {
        g_last_error = "missing required argument: engine";
        return nullptr;
    }
    try {
        auto server = std::make_unique<samrec_server>(engine);
        std::string bind_host = host ? host : "127.0.0.1";
        if (!server->service.start(bind_host, port)) {
            set_error(engine, "cannot bind " + bind_host + ":" + std::to_string(port));
            return nullptr;
        }
        return server.release();
    } catch (const std::exception& e) {
        set_error(engine, e.what());
        return nullptr;
    }
}

int samrec_server_port(const samrec_server* server) {
    return server ? server->service.port() : -1;
}

int samrec_server_save_snapshot(samrec_server* server, const char* path) {
    if (!server) return SAMREC_ERR_USAGE;
    if (int rc = require(server->engine, path, "path")) return rc;
    return wrap(server->engine, [&] { server->service.save_snapshot(path); });
}

void samrec_server_stop(samrec_server* server) {
    if (!server) return;
    server->service.stop();
    delete server;
}

int samrec_latency_bench(const char* host, int port, const char* test_csv, const char* engines,
                         int limit, int requests, int warmup, const char* series_csv,
                         char** json_out) {
    if (!test_csv || !json_out) {
        g_last_error = "missing required argument: test_csv, json_out";
        return SAMREC_ERR_USAGE;
    }
    return wrap(nullptr, [&] {
        std::vector<TestRating> stream = load_test_csv(test_csv);
        std::vector<std::string> engine_list;
        std::stringstream names(engines ? engines : "sam,knn");
        std::string item;
        while (std::getline(names, item, ',')) {
            if (!item.empty()) engine_list.push_back(item);
        }
        BenchOptions options;
        options.limit = limit;
        options.requests = requests;
        options.warmup = warmup;
        auto stats = latency_bench(host ? host : "127.0.0.1", port, stream, engine_list, options,
                                   series_csv ? series_csv : "");
        *json_out = dup_string(latency_report_json(stats));
    });
}

void samrec_string_free(char* s) {
    std::free(s);
}

} // extern "C"
