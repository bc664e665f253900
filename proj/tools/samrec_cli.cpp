// samrec command line: dataset ingestion, recommendations, evaluation,
// latency benchmarking and the HTTP service, all through the shared C API.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "samrec.h"

namespace {

using nlohmann::json;

int exit_code_for(int status) {
    switch (status) {
    case SAMREC_OK: return 0;
    case SAMREC_ERR_USAGE: return 1;
    case SAMREC_ERR_IO: return 2;
    default: return 3;
    }
}

int fail(int status, const samrec_engine* engine) {
    std::fprintf(stderr, "error: %s\n", samrec_last_error(engine));
    return exit_code_for(status);
}

struct EngineHandle {
    samrec_engine* ptr = nullptr;
    ~EngineHandle() { samrec_engine_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { samrec_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

int open_engine(EngineHandle& engine, const std::string& graph_path) {
    engine.ptr = samrec_engine_open(graph_path.c_str());
    if (!engine.ptr) {
        std::fprintf(stderr, "error: %s\n", samrec_last_error(nullptr));
        return 2;
    }
    return 0;
}

bool write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    return static_cast<bool>(f);
}

void print_eval_table(const json& reports) {
    std::fprintf(stderr, "%-8s %10s %10s %9s %8s\n", "engine", "mae", "rmse", "mpe", "n");
    for (auto& [engine, r] : reports.items()) {
        std::fprintf(stderr, "%-8s %10.4f %10.4f %8.2f%% %8d\n", engine.c_str(),
                     r.at("mae").get<double>(), r.at("rmse").get<double>(),
                     r.at("mpe_percent").get<double>(), r.at("n").get<int>());
    }
}

volatile std::sig_atomic_t g_stop = 0;

void handle_stop(int) {
    g_stop = 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"samrec: graph-based social TV recommendation engine"};
    app.require_subcommand(1);

    // scoring knobs shared by the graph-consuming subcommands
    int max_depth = 2, t_root = 6, t_widget = 5;
    auto add_engine_options = [&](CLI::App* cmd) {
        cmd->add_option("--max-depth", max_depth, "graph traversal depth")
            ->capture_default_str();
        cmd->add_option("--t-root", t_root, "interaction type count for root assets")
            ->capture_default_str();
        cmd->add_option("--t-widget", t_widget, "interaction type count for widgets")
            ->capture_default_str();
    };
    auto apply_engine_options = [&](samrec_engine* engine) {
        if (int rc = samrec_engine_set_option(engine, "max_depth", max_depth)) return rc;
        if (int rc = samrec_engine_set_option(engine, "t_root", t_root)) return rc;
        return samrec_engine_set_option(engine, "t_widget", t_widget);
    };

    // ingest
    auto* ingest = app.add_subcommand("ingest", "build a graph snapshot from rating CSVs");
    std::string ratings_csv, tags_csv, movies_csv, out_path, test_out;
    int n_movies = 30, keywords = 5;
    double train_fraction = 0.7, scale_min = 0.5, scale_max = 5.0;
    std::uint64_t seed = 42;
    ingest->add_option("--ratings", ratings_csv, "ratings.csv path")
        ->required()
        ->envname("SAMREC_RATINGS");
    ingest->add_option("--tags", tags_csv, "tags.csv path")->required()->envname("SAMREC_TAGS");
    ingest->add_option("--movies", movies_csv, "movies.csv path")
        ->required()
        ->envname("SAMREC_MOVIES");
    ingest->add_option("--out", out_path, "graph snapshot output path")
        ->required()
        ->envname("SAMREC_OUT");
    ingest->add_option("--test-out", test_out,
                       "held-out split output path (default: test.csv next to --out)");
    ingest->add_option("--n-movies", n_movies, "most-rated movies to keep")
        ->capture_default_str();
    ingest->add_option("--keywords", keywords, "keywords per movie")->capture_default_str();
    ingest->add_option("--train-fraction", train_fraction, "per-user training share")
        ->capture_default_str();
    ingest->add_option("--seed", seed, "split seed")->capture_default_str()->envname("SAMREC_SEED");
    ingest->add_option("--scale-min", scale_min, "dataset rating minimum")->capture_default_str();
    ingest->add_option("--scale-max", scale_max, "dataset rating maximum")->capture_default_str();

    // recommend
    auto* recommend = app.add_subcommand("recommend", "print a ranked list for a user");
    std::string graph_path, user, level = "roots", root_asset, engine_name = "sam";
    int k = 10;
    bool include_consumed = false;
    recommend->add_option("--graph", graph_path, "graph snapshot")->required()->envname(
        "SAMREC_GRAPH");
    recommend->add_option("--user", user, "person node id")->required();
    recommend->add_option("--level", level, "roots | widgets")->capture_default_str();
    recommend->add_option("--root", root_asset, "root asset id (level widgets)");
    recommend->add_option("--k", k, "list size (level roots)")->capture_default_str();
    recommend->add_option("--engine", engine_name, "sam | knn")
        ->capture_default_str()
        ->envname("SAMREC_ENGINE");
    recommend->add_flag("--include-consumed", include_consumed,
                        "keep already-consumed root assets");
    add_engine_options(recommend);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "error metrics over a held-out split");
    std::string eval_graph, test_csv, eval_engines = "both", report_out;
    int knn_k = 10;
    evaluate->add_option("--graph", eval_graph, "graph snapshot")->required()->envname(
        "SAMREC_GRAPH");
    evaluate->add_option("--test", test_csv, "held-out split csv")->required();
    evaluate->add_option("--engine", eval_engines, "sam | knn | both")->capture_default_str();
    evaluate->add_option("--knn-k", knn_k, "neighbors for the baseline")->capture_default_str();
    evaluate->add_option("--out", report_out, "also write the JSON report here");
    add_engine_options(evaluate);

    // bench
    auto* bench = app.add_subcommand("bench", "latency comparison over the http service");
    std::string bench_graph, bench_test, bench_engines = "sam,knn", series_out, summary_out;
    std::string host = "127.0.0.1", attach;
    int requests = 1000, warmup = 50, limit = 10, bench_knn_k = 10;
    bench->add_option("--graph", bench_graph, "graph snapshot")->envname("SAMREC_GRAPH");
    bench->add_option("--test", bench_test, "request stream source csv")->required();
    bench->add_option("--engines", bench_engines, "comma-separated endpoints")
        ->capture_default_str();
    bench->add_option("--requests", requests, "measured requests per endpoint")
        ->capture_default_str();
    bench->add_option("--warmup", warmup, "leading requests excluded from summaries")
        ->capture_default_str();
    bench->add_option("--limit", limit, "recommendation list size per request")
        ->capture_default_str();
    bench->add_option("--knn-k", bench_knn_k, "neighbors for the baseline")->capture_default_str();
    bench->add_option("--host", host, "bind host for the embedded service")->capture_default_str();
    bench->add_option("--attach", attach, "bench a running service at host:port instead");
    bench->add_option("--series-out", series_out, "per-request latency csv");
    bench->add_option("--out", summary_out, "also write the JSON summary here");
    add_engine_options(bench);

    // serve
    auto* serve = app.add_subcommand("serve", "run the recommendation http service");
    std::string serve_graph, serve_host = "127.0.0.1", save_on_exit;
    int port = 8080, serve_knn_k = 10;
    serve->add_option("--graph", serve_graph, "graph snapshot")->required()->envname(
        "SAMREC_GRAPH");
    serve->add_option("--host", serve_host, "bind host")->capture_default_str()->envname(
        "SAMREC_HOST");
    serve->add_option("--port", port, "bind port (0 = ephemeral)")
        ->capture_default_str()
        ->envname("SAMREC_PORT");
    serve->add_option("--knn-k", serve_knn_k, "neighbors for the baseline endpoint")
        ->capture_default_str();
    serve->add_option("--save-on-exit", save_on_exit, "write a snapshot here on shutdown");
    add_engine_options(serve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;   // usage errors exit 1; --help exits 0
    }

    if (ingest->parsed()) {
        EngineHandle engine;
        engine.ptr = samrec_engine_new();
        if (!engine.ptr) return 2;
        if (test_out.empty()) {
            test_out = (std::filesystem::path(out_path).parent_path() / "test.csv").string();
        }
        int rc = samrec_ingest_movielens(engine.ptr, ratings_csv.c_str(), tags_csv.c_str(),
                                         movies_csv.c_str(), n_movies, keywords, train_fraction,
                                         seed, scale_min, scale_max, test_out.c_str());
        if (rc != SAMREC_OK) return fail(rc, engine.ptr);
        rc = samrec_engine_save(engine.ptr, out_path.c_str());
        if (rc != SAMREC_OK) return fail(rc, engine.ptr);
        OwnedString stats;
        samrec_graph_stats(engine.ptr, &stats.ptr);
        std::fprintf(stderr, "graph: %s\n", stats.str().c_str());
        std::printf("%s\n%s\n", out_path.c_str(), test_out.c_str());
        return 0;
    }

    if (recommend->parsed()) {
        EngineHandle engine;
        if (int rc = open_engine(engine, graph_path)) return rc;
        if (int rc = apply_engine_options(engine.ptr)) return fail(rc, engine.ptr);
        OwnedString out;
        int rc;
        if (level == "roots") {
            rc = samrec_recommend_roots(engine.ptr, user.c_str(), k, include_consumed ? 1 : 0,
                                        engine_name.c_str(), &out.ptr);
        } else if (level == "widgets") {
            if (root_asset.empty()) {
                std::fprintf(stderr, "error: --root is required with --level widgets\n");
                return 1;
            }
            rc = samrec_recommend_widgets(engine.ptr, user.c_str(), root_asset.c_str(),
                                          engine_name.c_str(), &out.ptr);
        } else {
            std::fprintf(stderr, "error: unknown level '%s'\n", level.c_str());
            return 1;
        }
        if (rc != SAMREC_OK) return fail(rc, engine.ptr);
        json list = json::parse(out.str());
        std::printf("%s\n", list.at("entries").dump().c_str());
        return 0;
    }

    if (evaluate->parsed()) {
        EngineHandle engine;
        if (int rc = open_engine(engine, eval_graph)) return rc;
        if (int rc = apply_engine_options(engine.ptr)) return fail(rc, engine.ptr);
        if (int rc = samrec_engine_set_option(engine.ptr, "knn_k", knn_k)) {
            return fail(rc, engine.ptr);
        }
        OwnedString out;
        int rc = samrec_evaluate(engine.ptr, test_csv.c_str(), eval_engines.c_str(), &out.ptr);
        if (rc != SAMREC_OK) return fail(rc, engine.ptr);
        std::printf("%s\n", out.str().c_str());
        print_eval_table(json::parse(out.str()));
        if (!report_out.empty() && !write_text(report_out, out.str() + "\n")) {
            std::fprintf(stderr, "error: cannot write %s\n", report_out.c_str());
            return 2;
        }
        return 0;
    }

    if (bench->parsed()) {
        EngineHandle engine;
        samrec_server* server = nullptr;
        std::string bench_host = host;
        int bench_port = 0;
        if (!attach.empty()) {
            auto colon = attach.rfind(':');
            if (colon == std::string::npos) {
                std::fprintf(stderr, "error: --attach expects host:port\n");
                return 1;
            }
            bench_host = attach.substr(0, colon);
            bench_port = std::atoi(attach.c_str() + colon + 1);
        } else {
            if (bench_graph.empty()) {
                std::fprintf(stderr, "error: --graph is required unless --attach is given\n");
                return 1;
            }
            if (int rc = open_engine(engine, bench_graph)) return rc;
            if (int rc = apply_engine_options(engine.ptr)) return fail(rc, engine.ptr);
            if (int rc = samrec_engine_set_option(engine.ptr, "knn_k", bench_knn_k)) {
                return fail(rc, engine.ptr);
            }
            server = samrec_server_start(engine.ptr, bench_host.c_str(), 0);
            if (!server) return fail(SAMREC_ERR_IO, engine.ptr);
            bench_port = samrec_server_port(server);
            std::fprintf(stderr, "embedded service on %s:%d\n", bench_host.c_str(), bench_port);
        }
        OwnedString out;
        int rc = samrec_latency_bench(bench_host.c_str(), bench_port, bench_test.c_str(),
                                      bench_engines.c_str(), limit, requests, warmup,
                                      series_out.empty() ? nullptr : series_out.c_str(),
                                      &out.ptr);
        if (server) samrec_server_stop(server);
        if (rc != SAMREC_OK) return fail(rc, nullptr);
        std::printf("%s\n", out.str().c_str());
        if (!summary_out.empty() && !write_text(summary_out, out.str() + "\n")) {
            std::fprintf(stderr, "error: cannot write %s\n", summary_out.c_str());
            return 2;
        }
        return 0;
    }

    if (serve->parsed()) {
        EngineHandle engine;
        if (int rc = open_engine(engine, serve_graph)) return rc;
        if (int rc = apply_engine_options(engine.ptr)) return fail(rc, engine.ptr);
        if (int rc = samrec_engine_set_option(engine.ptr, "knn_k", serve_knn_k)) {
            return fail(rc, engine.ptr);
        }
        samrec_server* server = samrec_server_start(engine.ptr, serve_host.c_str(), port);
        if (!server) return fail(SAMREC_ERR_IO, engine.ptr);
        std::fprintf(stderr, "listening on %s:%d\n", serve_host.c_str(),
                     samrec_server_port(server));

        std::signal(SIGINT, handle_stop);
        std::signal(SIGTERM, handle_stop);
        while (!g_stop) {
            struct timespec ts = {0, 200 * 1000 * 1000};
            nanosleep(&ts, nullptr);
        }
        std::fprintf(stderr, "shutting down\n");
        if (!save_on_exit.empty()) {
            if (int rc = samrec_server_save_snapshot(server, save_on_exit.c_str())) {
                std::fprintf(stderr, "error: %s\n", samrec_last_error(engine.ptr));
                samrec_server_stop(server);
                return exit_code_for(rc);
            }
            std::fprintf(stderr, "snapshot written to %s\n", save_on_exit.c_str());
        }
        samrec_server_stop(server);
        return 0;
    }

    return 1;
}
