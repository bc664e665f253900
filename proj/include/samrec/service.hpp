#pragma once

#include <atomic>
#include <memory>
#include <shared_mutex>
#include <string>
#include <thread>

#include "samrec/eval.hpp"
#include "samrec/recommend.hpp"

namespace httplib {
class Server;
}

namespace samrec {

// Graph plus scoring configuration under the single-writer/multi-reader
// contract: queries take the shared lock, mutations the exclusive one.
struct SharedEngine {
    ContextGraph graph;
    EngineConfig config;
    int knn_k = 10;
    mutable std::shared_mutex mutex;
};

// Embedded HTTP service over a SharedEngine:
//   GET  /users/{id}/recommendations/roots?limit=k&engine=sam|knn
//   GET  /users/{id}/roots/{assetId}/widgets?engine=sam|knn
//   POST /interactions
//   GET  /health
// Both engines share the URL shapes; `engine` defaults to sam. Writes arriving
// while a snapshot is streamed out are rejected with 409.
class RecommendService {
public:
    explicit RecommendService(SharedEngine& engine);
    ~RecommendService();

    RecommendService(const RecommendService&) = delete;
    RecommendService& operator=(const RecommendService&) = delete;

    // Binds and serves on a background thread. port 0 picks an ephemeral port.
    bool start(const std::string& host, int port);
    void stop();
    bool running() const;
    int port() const { return port_; }

    // Blocks until the writer gate is open, then snapshots under the read lock
    // while concurrent POSTs see 409.
    void save_snapshot(const std::string& path);

    // The write gate save_snapshot uses; exposed so the gate is testable.
    void pause_writes() { snapshotting_ = true; }
    void resume_writes() { snapshotting_ = false; }

private:
    void routes();

    SharedEngine& engine_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::atomic<bool> snapshotting_{false};
    int port_ = 0;
};

// Ranked list computed by the requested engine name ("sam" or "knn"); used by
// the service handlers and the C surface so both emit identical payloads.
RankedList ranked_roots(const SharedEngine& engine, const std::string& engine_name,
                        const std::string& person, int limit, bool include_consumed);
RankedList ranked_widgets(const SharedEngine& engine, const std::string& engine_name,
                          const std::string& person, const std::string& root_asset);

} // namespace samrec
