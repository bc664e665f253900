#include "samrec/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "samrec/csv.hpp"

namespace samrec {

std::vector<TestRating> load_test_csv(const std::string& path) {
    CsvFile file(path);
    std::size_t c_user = file.column("user");
    std::size_t c_movie = file.column("movie");
    std::size_t c_weight = file.column("weight");
    std::vector<TestRating> out;
    std::vector<std::string> fields;
    while (file.next(fields)) {
        TestRating t;
        t.user = fields[c_user];
        t.asset = fields[c_movie];
        try {
            t.weight = std::stod(fields[c_weight]);
        } catch (const std::exception&) {
            file.fail("not a number: '" + fields[c_weight] + "'");
        }
        if (t.weight < -1.0 || t.weight > 1.0) {
            file.fail("weight outside [-1, 1]");
        }
        out.push_back(std::move(t));
    }
    return out;
}

EvalReport evaluate(const Predictor& predictor, const std::vector<TestRating>& test,
                    const ContextGraph& graph) {
    if (test.empty()) {
        throw Error(ErrorCode::empty_input, "test set is empty");
    }
    for (const TestRating& t : test) {
        if (!graph.has_node(t.user)) {
            throw Error(ErrorCode::not_found, "test user missing from graph: " + t.user);
        }
        if (!graph.has_node(t.asset)) {
            throw Error(ErrorCode::not_found, "test asset missing from graph: " + t.asset);
        }
    }

    EvalReport report;
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (const TestRating& t : test) {
        auto [prediction, source] = predictor(t.user, t.asset);
        double err = prediction - t.weight;
        abs_sum += std::abs(err);
        sq_sum += err * err;
        report.per_source_counts[source]++;
    }
    report.n = static_cast<int>(test.size());
    report.mae = abs_sum / report.n;
    report.rmse = std::sqrt(sq_sum / report.n);
    report.mpe_percent = report.mae / 2.0 * 100.0;
    return report;
}

namespace {

struct KnnPrediction {
    double value = 0.0;
    int neighbors_used = 0;
};

KnnPrediction knn_predict_detail(const std::string& person, const std::string& asset, int k,
                                 const RatingMatrix& matrix) {
    if (k < 1) {
        throw Error(ErrorCode::invalid_argument, "k must be >= 1");
    }
    static const RatingVector empty_vector;
    const RatingVector* self = matrix.find(person);
    const RatingVector& a = self ? *self : empty_vector;

    struct Neighbor { double correlation; const RatingVector* user; double rating; };
    std::vector<Neighbor> neighbors;
    for (const RatingVector& u : matrix.users) {
        if (u.person == person) continue;
        auto r = u.ratings.find(asset);
        if (r == u.ratings.end()) continue;
        CorrelationResult c = pearson(a, u);
        if (!c.defined || c.value <= 0.0) continue;
        neighbors.push_back({c.value, &u, r->second});
    }
    std::sort(neighbors.begin(), neighbors.end(), [](const Neighbor& x, const Neighbor& y) {
        if (x.correlation != y.correlation) return x.correlation > y.correlation;
        return x.user->person < y.user->person;
    });
    if (static_cast<int>(neighbors.size()) > k) {
        neighbors.resize(static_cast<std::size_t>(k));
    }
    if (neighbors.empty()) {
        return {a.mean, 0};
    }
    double num = 0.0, den = 0.0;
    for (const Neighbor& n : neighbors) {
        num += n.correlation * n.rating;
        den += n.correlation;
    }
    return {num / den, static_cast<int>(neighbors.size())};
}

} // namespace

double knn_predict(const std::string& person, const std::string& asset, int k,
                   const RatingMatrix& matrix) {
    return knn_predict_detail(person, asset, k, matrix).value;
}

double knn_predict(const std::string& person, const std::string& asset, int k,
                   const ContextGraph& graph) {
    return knn_predict(person, asset, k, extract_ratings(graph));
}

Predictor make_sam_predictor(const Recommender& recommender) {
    return [&recommender](const std::string& user, const std::string& asset) {
        RelevanceScore s = recommender.score(user, asset);
        return std::make_pair(s.value, s.source);
    };
}

Predictor make_knn_predictor(const RatingMatrix& matrix, int k) {
    return [&matrix, k](const std::string& user, const std::string& asset) {
        KnnPrediction p = knn_predict_detail(user, asset, k, matrix);
        ScoreSource source =
            p.neighbors_used > 0 ? ScoreSource::cf_fallback : ScoreSource::user_mean;
        return std::make_pair(p.value, source);
    };
}

namespace {

double percentile(std::vector<double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    double idx = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(idx);
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

LatencyStats summarize(const std::vector<double>& series, int warmup, int errors) {
    std::vector<double> measured(series.begin() + warmup, series.end());
    LatencyStats stats;
    stats.count = static_cast<int>(measured.size());
    stats.warmup = warmup;
    stats.errors = errors;
    double sum = 0.0;
    for (double v : measured) sum += v;
    stats.mean_us = sum / static_cast<double>(measured.size());
    std::sort(measured.begin(), measured.end());
    stats.median_us = percentile(measured, 0.5);
    stats.p95_us = percentile(measured, 0.95);
    stats.p99_us = percentile(measured, 0.99);
    return stats;
}

} // namespace

std::map<std::string, LatencyStats> latency_bench(const std::string& host, int port,
                                                  const std::vector<TestRating>& stream,
                                                  const std::vector<std::string>& engines,
                                                  const BenchOptions& options,
                                                  const std::string& series_csv_path) {
    if (stream.empty()) {
        throw Error(ErrorCode::empty_input, "empty request stream");
    }
    if (options.requests < 1 || options.warmup < 0) {
        throw Error(ErrorCode::invalid_argument, "requests must be >= 1 and warmup >= 0");
    }

    httplib::Client probe(host, port);
    probe.set_connection_timeout(2, 0);
    bool up = false;
    for (int attempt = 0; attempt < options.connect_retries && !up; attempt++) {
        if (auto res = probe.Get("/health")) {
            up = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    if (!up) {
        throw Error(ErrorCode::io,
                    "service at " + host + ":" + std::to_string(port) + " is not reachable");
    }

    std::ofstream csv;
    if (!series_csv_path.empty()) {
        csv.open(series_csv_path, std::ios::binary);
        if (!csv) {
            throw Error(ErrorCode::io, "cannot open series csv for writing: " + series_csv_path);
        }
        csv << "request_index,endpoint,micros\n";
    }

    std::map<std::string, LatencyStats> out;
    int total = options.warmup + options.requests;
    for (const std::string& engine : engines) {
        httplib::Client client(host, port);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(30, 0);
        client.set_keep_alive(true);

        std::vector<double> series;
        series.reserve(static_cast<std::size_t>(total));
        int errors = 0;
        for (int n = 0; n < total; n++) {
            const TestRating& t = stream[static_cast<std::size_t>(n) % stream.size()];
            std::string path = "/users/" + t.user + "/recommendations/roots?limit=" +
                               std::to_string(options.limit) + "&engine=" + engine;
            auto start = std::chrono::steady_clock::now();
            auto res = client.Get(path);
            auto stop = std::chrono::steady_clock::now();
            if (!res) {
                throw Error(ErrorCode::io, "request failed against engine " + engine +
                                               ": " + httplib::to_string(res.error()));
            }
            if (res->status < 200 || res->status >= 300) errors++;
            double micros =
                std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count() / 1000.0;
            series.push_back(micros);
            if (csv.is_open()) {
                csv << n << ',' << engine << ',' << micros << '\n';
            }
        }
        out[engine] = summarize(series, options.warmup, errors);
    }
    return out;
}

} // namespace samrec
