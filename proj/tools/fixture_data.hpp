#pragma once

#include <cstdint>
#include <string>

namespace samrec::fixture {

// Knobs for the generated MovieLens-layout sample dataset. The defaults give a
// dense popular-movie submatrix with strong per-user bias, a shared keyword
// vocabulary, and half-step ratings on the 0.5-5.0 scale.
struct FixtureSpec {
    int movies = 60;
    int users = 450;
    std::uint32_t seed = 987654321;
};

// Writes ratings.csv, tags.csv and movies.csv into `dir` (created when
// absent). Output is byte-deterministic for a given spec.
void write_dataset(const std::string& dir, const FixtureSpec& spec = {});

} // namespace samrec::fixture
