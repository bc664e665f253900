#include "fixture_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace samrec::fixture {

namespace {

// Hand-rolled draws keep the output stable across standard library versions.
double u01(std::mt19937& rng) {
    return static_cast<double>(rng()) / 4294967296.0;
}

std::uint32_t bounded(std::mt19937& rng, std::uint32_t n) {
    std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() -
                          std::numeric_limits<std::uint32_t>::max() % n;
    std::uint32_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

double normal(std::mt19937& rng, double mean, double sd) {
    double u1 = u01(rng);
    double u2 = u01(rng);
    if (u1 < 1e-12) u1 = 1e-12;
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

const char* GENRES[] = {"drama",   "comedy",  "thriller", "romance", "sci-fi",  "action",
                        "crime",   "mystery", "horror",   "fantasy", "war",     "western",
                        "musical", "animation"};
constexpr int N_GENRES = 14;

const char* TAG_SUFFIXES[] = {"classic", "gem", "slow-burn"};

// Rating model constants, in rating points on the 0.5-5.0 scale.
constexpr double BASE = 2.95;
constexpr double USER_BIAS_SD = 0.55;    // strong per-user bias
constexpr double MOVIE_QUALITY_SD = 0.18;
constexpr double AFFINITY_SCALE = 0.18;  // user-genre taste contribution
constexpr double NOISE_SD = 0.20;

constexpr int HEAVY_CORE = 30;           // popular movies every heavy user rates
constexpr double HEAVY_SHARE = 0.68;
constexpr double HEAVY_EXTRA_PROB = 0.35; // chance per non-core movie
constexpr int CASUAL_MIN = 16;
constexpr int CASUAL_MAX = 30;

struct Movie {
    int id;
    std::string title;
    std::vector<int> genres;
    double quality;
    double popularity;
};

double rate(std::mt19937& rng, const Movie& movie, double bias,
            const std::vector<double>& taste) {
    double affinity = 0.0;
    for (int g : movie.genres) affinity += taste[static_cast<std::size_t>(g)];
    affinity /= static_cast<double>(movie.genres.size());
    double raw = BASE + bias + movie.quality + AFFINITY_SCALE * affinity +
                 normal(rng, 0.0, NOISE_SD);
    double snapped = std::round(raw * 2.0) / 2.0;
    return std::clamp(snapped, 0.5, 5.0);
}

} // namespace

void write_dataset(const std::string& dir, const FixtureSpec& spec) {
    std::filesystem::create_directories(dir);
    std::mt19937 rng(spec.seed);

    std::vector<Movie> movies;
    movies.reserve(static_cast<std::size_t>(spec.movies));
    for (int m = 1; m <= spec.movies; m++) {
        Movie movie;
        movie.id = m;
        movie.title = "Sample Movie " + std::to_string(m) + " (" +
                      std::to_string(1980 + static_cast<int>(bounded(rng, 40))) + ")";
        int n_genres = 2 + static_cast<int>(bounded(rng, 3));
        std::set<int> picked;
        while (static_cast<int>(picked.size()) < n_genres) {
            picked.insert(static_cast<int>(bounded(rng, N_GENRES)));
        }
        movie.genres.assign(picked.begin(), picked.end());
        movie.quality = normal(rng, 0.0, MOVIE_QUALITY_SD);
        movies.push_back(std::move(movie));
    }

    // popularity decays with a shuffled rank, so movie id carries no meaning
    std::vector<int> rank(static_cast<std::size_t>(spec.movies));
    for (int i = 0; i < spec.movies; i++) rank[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = rank.size(); i > 1; i--) {
        std::swap(rank[i - 1], rank[bounded(rng, static_cast<std::uint32_t>(i))]);
    }
    std::vector<int> by_popularity(static_cast<std::size_t>(spec.movies));
    for (int i = 0; i < spec.movies; i++) {
        movies[static_cast<std::size_t>(rank[static_cast<std::size_t>(i)])].popularity =
            1.0 / std::pow(1.0 + i, 0.85);
        by_popularity[static_cast<std::size_t>(i)] = rank[static_cast<std::size_t>(i)];
    }

    // movies.csv
    {
        std::ofstream f(dir + "/movies.csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + dir + "/movies.csv");
        f << "movieId,title,genres\n";
        for (const Movie& m : movies) {
            f << m.id << ",\"" << m.title << "\",";
            for (std::size_t g = 0; g < m.genres.size(); g++) {
                if (g) f << '|';
                std::string name = GENRES[m.genres[g]];
                name[0] = static_cast<char>(std::toupper(name[0]));
                f << name;
            }
            f << '\n';
        }
    }

    // tags.csv: tag names come from genre pools, so movies sharing a genre
    // share tag vocabulary; most movies keep fewer than five distinct tags and
    // lean on genre backfill
    {
        std::ofstream f(dir + "/tags.csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + dir + "/tags.csv");
        f << "userId,movieId,tag,timestamp\n";
        long long ts = 1200000000;
        for (const Movie& m : movies) {
            int tag_rows = 2 + static_cast<int>(m.popularity * 12.0);
            for (int n = 0; n < tag_rows; n++) {
                int genre = m.genres[bounded(rng, static_cast<std::uint32_t>(m.genres.size()))];
                const char* suffix = TAG_SUFFIXES[bounded(rng, 3)];
                int user = 1 + static_cast<int>(bounded(rng, static_cast<std::uint32_t>(spec.users)));
                f << user << ',' << m.id << ',' << GENRES[genre] << '-' << suffix << ','
                  << ts++ << '\n';
            }
        }
    }

    // ratings.csv
    {
        std::ofstream f(dir + "/ratings.csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + dir + "/ratings.csv");
        f << "userId,movieId,rating,timestamp\n";
        long long ts = 1300000000;
        char buf[16];
        for (int u = 1; u <= spec.users; u++) {
            double bias = normal(rng, 0.0, USER_BIAS_SD);
            std::vector<double> taste;
            for (int g = 0; g < N_GENRES; g++) taste.push_back(normal(rng, 0.0, 1.0));

            std::set<int> chosen;   // indices into movies
            if (u01(rng) < HEAVY_SHARE) {
                for (int i = 0; i < HEAVY_CORE && i < spec.movies; i++) {
                    chosen.insert(by_popularity[static_cast<std::size_t>(i)]);
                }
                for (int i = HEAVY_CORE; i < spec.movies; i++) {
                    if (u01(rng) < HEAVY_EXTRA_PROB) {
                        chosen.insert(by_popularity[static_cast<std::size_t>(i)]);
                    }
                }
            } else {
                int want = CASUAL_MIN +
                           static_cast<int>(bounded(rng, CASUAL_MAX - CASUAL_MIN + 1));
                int guard = 0;
                while (static_cast<int>(chosen.size()) < want && guard++ < 10000) {
                    // popularity-weighted pick
                    double x = u01(rng);
                    auto idx = static_cast<std::size_t>(
                        std::pow(x, 2.2) * static_cast<double>(spec.movies));
                    if (idx >= by_popularity.size()) idx = by_popularity.size() - 1;
                    chosen.insert(by_popularity[idx]);
                }
            }
            for (int index : chosen) {
                const Movie& m = movies[static_cast<std::size_t>(index)];
                double r = rate(rng, m, bias, taste);
                std::snprintf(buf, sizeof(buf), "%.1f", r);
                f << u << ',' << m.id << ',' << buf << ',' << ts++ << '\n';
            }
        }
    }
}

} // namespace samrec::fixture
