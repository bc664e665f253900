#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "samrec/collab.hpp"
#include "samrec/recommend.hpp"

namespace samrec {

struct EvalReport {
    double mae = 0.0;
    double rmse = 0.0;
    double mpe_percent = 0.0;   // mae normalized by the [-1, 1] range width
    int n = 0;
    std::map<ScoreSource, int> per_source_counts;
};

struct TestRating {
    std::string user;
    std::string asset;
    double weight = 0.0;   // ground truth in [-1, 1]
};

std::vector<TestRating> load_test_csv(const std::string& path);

using Predictor = std::function<std::pair<double, ScoreSource>(const std::string& user,
                                                               const std::string& asset)>;

// MAE / RMSE / MPE of a predictor over the held-out ratings. Every test pair
// must reference nodes present in the graph.
EvalReport evaluate(const Predictor& predictor, const std::vector<TestRating>& test,
                    const ContextGraph& graph);

// User-based K-NN baseline: the k raters of the asset best correlated with the
// person, prediction = correlation-weighted mean of their ratings (no mean
// centering). Falls back to the person's mean rating.
double knn_predict(const std::string& person, const std::string& asset, int k,
                   const RatingMatrix& matrix);
double knn_predict(const std::string& person, const std::string& asset, int k,
                   const ContextGraph& graph);

Predictor make_sam_predictor(const Recommender& recommender);
// Tagged cf_fallback for the weighted path, user_mean when falling back.
Predictor make_knn_predictor(const RatingMatrix& matrix, int k);

struct LatencyStats {
    double mean_us = 0.0;
    double median_us = 0.0;
    double p95_us = 0.0;
    double p99_us = 0.0;
    int count = 0;      // measured requests (after warmup)
    int warmup = 0;
    int errors = 0;     // non-2xx responses, counted separately
};

struct BenchOptions {
    int requests = 1000;       // measured requests per endpoint, after warmup
    int warmup = 50;           // leading requests excluded from the summary
    int limit = 10;            // recommendation list size requested
    int connect_retries = 20;  // ~100ms apart before giving up
};

// Replays root-recommendation requests sequentially against a running service,
// one pass per engine. The request stream is the test split's user column,
// cycled if shorter than warmup + requests. Raw per-request series (warmup
// included) goes to series_csv_path as request_index,endpoint,micros rows when
// a path is given.
std::map<std::string, LatencyStats> latency_bench(const std::string& host, int port,
                                                  const std::vector<TestRating>& stream,
                                                  const std::vector<std::string>& engines,
                                                  const BenchOptions& options,
                                                  const std::string& series_csv_path = "");

} // namespace samrec
