#include "samrec/collab.hpp"

#include <algorithm>
#include <cmath>

namespace samrec {

RatingVector make_rating_vector(std::string person, std::map<std::string, double> ratings) {
    RatingVector v;
    v.person = std::move(person);
    v.ratings = std::move(ratings);
    if (!v.ratings.empty()) {
        double sum = 0.0;
        for (const auto& [asset, r] : v.ratings) {
            (void)asset;
            sum += r;
        }
        v.mean = sum / static_cast<double>(v.ratings.size());
    }
    return v;
}

CorrelationResult pearson(const RatingVector& a, const RatingVector& u) {
    CorrelationResult out;
    double num = 0.0;
    double den_a = 0.0;
    double den_u = 0.0;
    // both maps are ordered by asset id, so the co-rated walk is symmetric
    auto ia = a.ratings.begin();
    auto iu = u.ratings.begin();
    while (ia != a.ratings.end() && iu != u.ratings.end()) {
        if (ia->first < iu->first) {
            ++ia;
        } else if (iu->first < ia->first) {
            ++iu;
        } else {
            double da = ia->second - a.mean;
            double du = iu->second - u.mean;
            num += da * du;
            den_a += da * da;
            den_u += du * du;
            out.overlap++;
            ++ia;
            ++iu;
        }
    }
    if (out.overlap < 2 || den_a <= 0.0 || den_u <= 0.0) {
        return out;   // defined stays false, value 0
    }
    out.defined = true;
    out.value = num / std::sqrt(den_a * den_u);
    out.value = std::clamp(out.value, -1.0, 1.0);
    return out;
}

CfPrediction predict_detail(const RatingVector& a, const std::string& asset_j,
                            const std::vector<RatingVector>& others) {
    CfPrediction out;
    double num = 0.0;
    double den = 0.0;
    for (const RatingVector& u : others) {
        if (u.person == a.person) continue;
        auto r = u.ratings.find(asset_j);
        if (r == u.ratings.end()) continue;
        CorrelationResult c = pearson(a, u);
        if (!c.defined || c.value <= 0.0) continue;
        num += (r->second - u.mean) * c.value;
        den += c.value;
        out.contributors++;
    }
    double p = a.mean;
    if (out.contributors > 0) {
        p += num / den;
    }
    out.value = std::clamp(p, -1.0, 1.0);
    return out;
}

double predict(const RatingVector& a, const std::string& asset_j,
               const std::vector<RatingVector>& others) {
    return predict_detail(a, asset_j, others).value;
}

const RatingVector* RatingMatrix::find(const std::string& person) const {
    auto it = std::lower_bound(users.begin(), users.end(), person,
                               [](const RatingVector& v, const std::string& p) {
                                   return v.person < p;
                               });
    if (it == users.end() || it->person != person) return nullptr;
    return &*it;
}

RatingMatrix extract_ratings(const ContextGraph& graph) {
    RatingMatrix matrix;
    std::vector<std::string> persons = graph.person_ids();
    std::sort(persons.begin(), persons.end());
    matrix.users.reserve(persons.size());
    for (const std::string& person : persons) {
        const auto* slots = graph.slots_of(graph.index_of(person));
        std::map<std::string, double> ratings;
        if (slots) {
            for (const auto& [asset, slot] : *slots) {
                if (slot.explicit_slot) {
                    ratings[graph.id_of(asset)] = explicit_weight_of(*slot.explicit_slot);
                }
            }
        }
        matrix.users.push_back(make_rating_vector(person, std::move(ratings)));
    }
    return matrix;
}

} // namespace samrec
