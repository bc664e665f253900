#include "samrec/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "samrec/csv.hpp"

namespace samrec {

void validate(const SamplePlan& plan) {
    if (plan.n_movies < 1) {
        throw Error(ErrorCode::invalid_argument, "n_movies must be >= 1");
    }
    if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "train_fraction must be in (0, 1)");
    }
    if (plan.keywords_per_movie < 0) {
        throw Error(ErrorCode::invalid_argument, "keywords_per_movie must be >= 0");
    }
}

std::string person_node_id(std::int64_t user_id) {
    return "u" + std::to_string(user_id);
}

std::string asset_node_id(std::int64_t movie_id) {
    return "m" + std::to_string(movie_id);
}

namespace {

std::int64_t parse_int(const CsvFile& file, const std::string& s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        file.fail("not an integer: '" + s + "'");
    }
    return value;
}

double parse_double(const CsvFile& file, const std::string& s) {
    try {
        std::size_t used = 0;
        double value = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        file.fail("not a number: '" + s + "'");
    }
}

} // namespace

std::vector<RatingRecord> load_ratings(const std::string& path, const RatingScale& scale) {
    if (!(scale.min < scale.max)) {
        throw Error(ErrorCode::invalid_argument, "rating scale min must be below max");
    }
    CsvFile file(path);
    std::size_t c_user = file.column("userId");
    std::size_t c_movie = file.column("movieId");
    std::size_t c_rating = file.column("rating");
    std::size_t c_ts = file.column("timestamp");

    std::vector<RatingRecord> out;
    std::vector<std::string> fields;
    while (file.next(fields)) {
        RatingRecord r;
        r.user_id = parse_int(file, fields[c_user]);
        r.movie_id = parse_int(file, fields[c_movie]);
        r.rating = parse_double(file, fields[c_rating]);
        r.timestamp = parse_int(file, fields[c_ts]);
        if (r.rating < scale.min || r.rating > scale.max) {
            file.fail("rating " + fields[c_rating] + " outside scale [" +
                      std::to_string(scale.min) + ", " + std::to_string(scale.max) + "]");
        }
        out.push_back(r);
    }
    return out;
}

std::map<std::int64_t, MovieInfo> load_movies(const std::string& path) {
    CsvFile file(path);
    std::size_t c_id = file.column("movieId");
    std::size_t c_title = file.column("title");
    std::size_t c_genres = file.column("genres");

    std::map<std::int64_t, MovieInfo> out;
    std::vector<std::string> fields;
    while (file.next(fields)) {
        MovieInfo m;
        m.id = parse_int(file, fields[c_id]);
        m.title = fields[c_title];
        std::stringstream genres(fields[c_genres]);
        std::string genre;
        while (std::getline(genres, genre, '|')) {
            std::string normalized = normalize_keyword(genre);
            if (!normalized.empty() && normalized != "(no genres listed)") {
                m.genres.push_back(normalized);
            }
        }
        out[m.id] = std::move(m);
    }
    return out;
}

std::map<std::int64_t, std::vector<KeywordCandidate>> load_keywords(
    const std::string& tags_path, const std::map<std::int64_t, MovieInfo>& movies,
    int keywords_per_movie) {
    CsvFile file(tags_path);
    std::size_t c_movie = file.column("movieId");
    std::size_t c_tag = file.column("tag");

    std::map<std::int64_t, std::map<std::string, int>> counts;
    std::vector<std::string> fields;
    while (file.next(fields)) {
        std::string tag = normalize_keyword(fields[c_tag]);
        if (tag.empty()) continue;
        counts[parse_int(file, fields[c_movie])][tag]++;
    }

    std::map<std::int64_t, std::vector<KeywordCandidate>> out;
    for (const auto& [movie_id, info] : movies) {
        std::vector<KeywordCandidate> candidates;
        auto it = counts.find(movie_id);
        if (it != counts.end()) {
            for (const auto& [tag, freq] : it->second) {
                candidates.push_back({tag, freq});
            }
            std::sort(candidates.begin(), candidates.end(),
                      [](const KeywordCandidate& a, const KeywordCandidate& b) {
                          if (a.frequency != b.frequency) return a.frequency > b.frequency;
                          return a.keyword < b.keyword;
                      });
        }
        if (static_cast<int>(candidates.size()) < keywords_per_movie) {
            std::set<std::string> present;
            for (const KeywordCandidate& c : candidates) present.insert(c.keyword);
            for (const std::string& genre : info.genres) {
                if (present.insert(genre).second) {
                    candidates.push_back({genre, 0});
                }
            }
        }
        if (!candidates.empty()) {
            out[movie_id] = std::move(candidates);
        }
    }
    return out;
}

Sample sample(const std::vector<RatingRecord>& records,
              const std::map<std::int64_t, std::vector<KeywordCandidate>>& keywords,
              const SamplePlan& plan) {
    validate(plan);
    if (records.empty()) {
        throw Error(ErrorCode::empty_input, "no rating records to sample from");
    }

    std::unordered_map<std::int64_t, std::int64_t> counts;
    for (const RatingRecord& r : records) counts[r.movie_id]++;
    std::vector<std::pair<std::int64_t, std::int64_t>> by_count(counts.begin(), counts.end());
    std::sort(by_count.begin(), by_count.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Sample out;
    std::unordered_set<std::int64_t> selected;
    for (const auto& [movie, count] : by_count) {
        (void)count;
        if (static_cast<int>(out.movies.size()) >= plan.n_movies) break;
        out.movies.push_back(movie);
        selected.insert(movie);
    }

    std::set<std::int64_t> users;
    for (const RatingRecord& r : records) {
        if (selected.count(r.movie_id)) {
            out.ratings.push_back(r);
            users.insert(r.user_id);
        }
    }
    out.users.assign(users.begin(), users.end());

    for (std::int64_t movie : out.movies) {
        auto it = keywords.find(movie);
        if (it == keywords.end()) continue;
        std::vector<KeywordCandidate> candidates = it->second;
        std::sort(candidates.begin(), candidates.end(),
                  [](const KeywordCandidate& a, const KeywordCandidate& b) {
                      if (a.frequency != b.frequency) return a.frequency > b.frequency;
                      return a.keyword < b.keyword;
                  });
        std::vector<std::string> top;
        for (const KeywordCandidate& c : candidates) {
            if (static_cast<int>(top.size()) >= plan.keywords_per_movie) break;
            top.push_back(c.keyword);
        }
        out.keywords[movie] = std::move(top);
    }
    return out;
}

double rating_to_weight(double rating, double scale_min, double scale_max) {
    if (!(scale_min < scale_max)) {
        throw Error(ErrorCode::invalid_argument, "rating scale min must be below max");
    }
    if (rating < scale_min || rating > scale_max) {
        throw Error(ErrorCode::invalid_argument,
                    "rating " + std::to_string(rating) + " outside scale");
    }
    return 2.0 * (rating - scale_min) / (scale_max - scale_min) - 1.0;
}

Interaction map_rating(const RatingRecord& record, double scale_min, double scale_max) {
    double w = rating_to_weight(record.rating, scale_min, scale_max);
    Interaction i;
    i.person = person_node_id(record.user_id);
    i.asset = asset_node_id(record.movie_id);
    i.type = InteractionType::comment;
    i.polarity = w >= 0.0 ? 1.0 : -1.0;
    i.intensity = std::abs(w);
    i.timestamp_ms = record.timestamp * 1000;
    return i;
}

namespace {

// Unbiased bounded draw, written out so split results do not depend on the
// standard library's distribution internals.
std::uint32_t bounded_rand(std::mt19937& rng, std::uint32_t n) {
    std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() -
                          std::numeric_limits<std::uint32_t>::max() % n;
    std::uint32_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

void shuffle_records(std::vector<RatingRecord>& records, std::mt19937& rng) {
    for (std::size_t i = records.size(); i > 1; i--) {
        std::uint32_t j = bounded_rand(rng, static_cast<std::uint32_t>(i));
        std::swap(records[i - 1], records[j]);
    }
}

} // namespace

Split split(const std::vector<RatingRecord>& ratings, const SamplePlan& plan) {
    validate(plan);
    std::map<std::int64_t, std::vector<RatingRecord>> by_user;
    for (const RatingRecord& r : ratings) {
        by_user[r.user_id].push_back(r);
    }
    std::mt19937 rng(static_cast<std::mt19937::result_type>(plan.rng_seed));
    Split out;
    for (auto& [user, records] : by_user) {
        (void)user;
        shuffle_records(records, rng);
        std::size_t n = records.size();
        auto train_count = static_cast<std::size_t>(
            std::ceil(plan.train_fraction * static_cast<double>(n) - 1e-9));
        train_count = std::min(train_count, n);
        if (n == 1) train_count = 1;
        for (std::size_t i = 0; i < n; i++) {
            (i < train_count ? out.train : out.test).push_back(records[i]);
        }
    }
    return out;
}

ContextGraph build_graph(const std::vector<RatingRecord>& train,
                         const std::map<std::int64_t, MovieInfo>& movies,
                         const std::map<std::int64_t, std::vector<std::string>>& keywords,
                         const std::vector<std::int64_t>& movie_order,
                         const std::vector<std::int64_t>& users,
                         const RatingScale& scale) {
    ContextGraph g;
    for (std::int64_t user : users) {
        std::string id = person_node_id(user);
        g.add_person(id, id);
    }
    for (std::int64_t movie : movie_order) {
        auto info = movies.find(movie);
        std::string title = info != movies.end() ? info->second.title : asset_node_id(movie);
        std::map<std::string, std::string> attributes;
        if (info != movies.end() && !info->second.genres.empty()) {
            std::string joined;
            for (const std::string& genre : info->second.genres) {
                if (!joined.empty()) joined += "|";
                joined += genre;
            }
            attributes["genres"] = joined;
        }
        g.add_asset(asset_node_id(movie), AssetKind::root, title, std::move(attributes));
    }
    for (std::int64_t movie : movie_order) {
        auto it = keywords.find(movie);
        if (it == keywords.end()) continue;
        for (const std::string& keyword : it->second) {
            std::string kw_id = g.add_keyword(keyword);
            g.add_structural_edge(EdgeKind::has_keywords, asset_node_id(movie), kw_id);
        }
    }
    for (const RatingRecord& r : train) {
        g.record_interaction(map_rating(r, scale.min, scale.max));
    }
    return g;
}

namespace {

std::string format_weight(double w) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

std::string test_csv_string(const std::vector<RatingRecord>& test, const RatingScale& scale) {
    std::string out = "user,movie,weight\n";
    for (const RatingRecord& r : test) {
        out += person_node_id(r.user_id);
        out += ',';
        out += asset_node_id(r.movie_id);
        out += ',';
        out += format_weight(rating_to_weight(r.rating, scale.min, scale.max));
        out += '\n';
    }
    return out;
}

void write_test_csv(const std::string& path, const std::vector<RatingRecord>& test,
                    const RatingScale& scale) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::io, "cannot open test csv for writing: " + path);
    }
    f << test_csv_string(test, scale);
    if (!f) {
        throw Error(ErrorCode::io, "failed writing test csv to " + path);
    }
}

IngestResult ingest_dataset(const std::string& ratings_path, const std::string& tags_path,
                            const std::string& movies_path, const SamplePlan& plan,
                            const RatingScale& scale) {
    validate(plan);
    std::vector<RatingRecord> records = load_ratings(ratings_path, scale);
    std::map<std::int64_t, MovieInfo> movies = load_movies(movies_path);
    auto keywords = load_keywords(tags_path, movies, plan.keywords_per_movie);
    Sample sampled = sample(records, keywords, plan);
    Split parts = split(sampled.ratings, plan);

    IngestResult out;
    out.graph = build_graph(parts.train, movies, sampled.keywords, sampled.movies,
                            sampled.users, scale);
    out.test = std::move(parts.test);
    out.sampled_ratings = sampled.ratings.size();
    out.sampled_users = sampled.users.size();
    out.sampled_movies = sampled.movies.size();
    return out;
}

} // namespace samrec
