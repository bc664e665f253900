#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "samrec/graph.hpp"

namespace samrec {

struct RatingScale {
    double min = 0.5;
    double max = 5.0;
};

struct RatingRecord {
    std::int64_t user_id = 0;
    std::int64_t movie_id = 0;
    double rating = 0.0;        // on the dataset's native scale
    std::int64_t timestamp = 0; // epoch seconds
};

struct MovieInfo {
    std::int64_t id = 0;
    std::string title;
    std::vector<std::string> genres;
};

struct KeywordCandidate {
    std::string keyword;
    int frequency = 0;   // 0 marks a genre backfill entry
};

struct SamplePlan {
    int n_movies = 30;
    int keywords_per_movie = 5;
    double train_fraction = 0.7;
    std::uint64_t rng_seed = 42;
};

void validate(const SamplePlan& plan);

std::string person_node_id(std::int64_t user_id);
std::string asset_node_id(std::int64_t movie_id);

// ratings.csv: userId,movieId,rating,timestamp. Ratings outside the scale are
// rejected with a file/line reference.
std::vector<RatingRecord> load_ratings(const std::string& path, const RatingScale& scale);

// movies.csv: movieId,title,genres (pipe separated; "(no genres listed)" means none).
std::map<std::int64_t, MovieInfo> load_movies(const std::string& path);

// tags.csv: userId,movieId,tag,timestamp. Produces per-movie keyword candidates:
// distinct lowercased tags with their frequencies; movies with fewer than
// keywords_per_movie distinct tags get their genres appended (frequency 0).
std::map<std::int64_t, std::vector<KeywordCandidate>> load_keywords(
    const std::string& tags_path, const std::map<std::int64_t, MovieInfo>& movies,
    int keywords_per_movie);

struct Sample {
    std::vector<std::int64_t> movies;   // by rating count desc, id asc
    std::vector<std::int64_t> users;    // ascending
    std::vector<RatingRecord> ratings;  // all ratings on the selected movies, input order
    std::map<std::int64_t, std::vector<std::string>> keywords;
};

// The most-rated n_movies, everyone who rated them, and the top
// keywords_per_movie keywords per movie (ties: ascending id / lexicographic).
Sample sample(const std::vector<RatingRecord>& records,
              const std::map<std::int64_t, std::vector<KeywordCandidate>>& keywords,
              const SamplePlan& plan);

// Affine map from the native scale onto [-1, 1]; endpoints hit exactly +-1.
double rating_to_weight(double rating, double scale_min, double scale_max);

// A rating becomes a comment whose sign/intensity carry the scaled weight.
Interaction map_rating(const RatingRecord& record, double scale_min, double scale_max);

struct Split {
    std::vector<RatingRecord> train;
    std::vector<RatingRecord> test;
};

// Per-user split: each user's ratings are shuffled with the plan seed and the
// first ceil(train_fraction * n) go to train. Users are processed in ascending
// id order, so the same seed always yields the same split.
Split split(const std::vector<RatingRecord>& ratings, const SamplePlan& plan);

// Persons, root assets with their keywords, and one comment per train rating.
ContextGraph build_graph(const std::vector<RatingRecord>& train,
                         const std::map<std::int64_t, MovieInfo>& movies,
                         const std::map<std::int64_t, std::vector<std::string>>& keywords,
                         const std::vector<std::int64_t>& movie_order,
                         const std::vector<std::int64_t>& users,
                         const RatingScale& scale);

// Held-out ratings as "user,movie,weight" rows with graph node ids.
void write_test_csv(const std::string& path, const std::vector<RatingRecord>& test,
                    const RatingScale& scale);
std::string test_csv_string(const std::vector<RatingRecord>& test, const RatingScale& scale);

struct IngestResult {
    ContextGraph graph;
    std::vector<RatingRecord> test;
    std::size_t sampled_ratings = 0;
    std::size_t sampled_users = 0;
    std::size_t sampled_movies = 0;
};

IngestResult ingest_dataset(const std::string& ratings_path, const std::string& tags_path,
                            const std::string& movies_path, const SamplePlan& plan,
                            const RatingScale& scale);

} // namespace samrec
