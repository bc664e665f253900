#pragma once

#include <map>
#include <string>
#include <vector>

#include "samrec/graph.hpp"

namespace samrec {

// Effective explicit weights of one user, plus their mean over rated assets
// (0 for an empty vector).
struct RatingVector {
    std::string person;
    std::map<std::string, double> ratings;
    double mean = 0.0;
};

RatingVector make_rating_vector(std::string person, std::map<std::string, double> ratings);

struct CorrelationResult {
    double value = 0.0;
    int overlap = 0;        // co-rated asset count h
    bool defined = false;   // false when h < 2 or a co-rated sub-vector has no variance
};

// Pearson correlation over the co-rated asset set, deviations taken from each
// user's full-vector mean. Symmetric in its arguments.
CorrelationResult pearson(const RatingVector& a, const RatingVector& u);

struct CfPrediction {
    double value = 0.0;
    int contributors = 0;   // users with defined positive correlation who rated the asset
};

// Correlation-weighted prediction of a's rating for asset_j. Only users with
// defined, strictly positive correlation contribute; with none, the result is
// a's mean. Clipped to [-1, 1].
CfPrediction predict_detail(const RatingVector& a, const std::string& asset_j,
                            const std::vector<RatingVector>& others);
double predict(const RatingVector& a, const std::string& asset_j,
               const std::vector<RatingVector>& others);

// All users' rating vectors, ordered by person id.
struct RatingMatrix {
    std::vector<RatingVector> users;

    const RatingVector* find(const std::string& person) const;
};

RatingMatrix extract_ratings(const ContextGraph& graph);

} // namespace samrec
