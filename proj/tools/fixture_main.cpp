// Generates the sample MovieLens-layout dataset used by the demos and the
// acceptance suite.
#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "fixture_data.hpp"

int main(int argc, char** argv) {
    CLI::App app{"samrec-fixture: write a deterministic sample rating dataset"};
    std::string out = "fixture-data";
    samrec::fixture::FixtureSpec spec;
    app.add_option("-o,--out", out, "output directory")->capture_default_str();
    app.add_option("--movies", spec.movies, "number of movies")->capture_default_str();
    app.add_option("--users", spec.users, "number of users")->capture_default_str();
    app.add_option("--seed", spec.seed, "generator seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        samrec::fixture::write_dataset(out, spec);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    std::printf("wrote %s/ratings.csv, tags.csv, movies.csv\n", out.c_str());
    return 0;
}
