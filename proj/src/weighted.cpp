#include "pcoreset/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pcoreset {

std::string to_string(BuildMode mode) {
    switch (mode) {
        case BuildMode::fixed_p:
            return "fixed-p";
        case BuildMode::oneshot:
            return "one-shot";
        case BuildMode::uniform:
            return "uniform";
    }
    return "fixed-p";
}

BuildMode build_mode_from_string(const std::string& s) {
    if (s == "fixed-p") return BuildMode::fixed_p;
    if (s == "one-shot") return BuildMode::oneshot;
    if (s == "uniform") return BuildMode::uniform;
    throw ValidationError("unknown build mode: " + s);
}

double WeightedCoreset::total_weight() const {
    CompensatedSum total;
    for (const auto& e : entries) {
        total.add(e.weight);
    }
    return total.value();
}

namespace {

double nearest_coords(std::span<const double> point, const Query& q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < q.size(); ++j) {
        auto c = q.center_coords(j);
        double sq = 0.0;
        for (std::size_t t = 0; t < c.size(); ++t) {
            const double diff = point[t] - c[t];
            sq += diff * diff;
        }
        best = std::min(best, std::sqrt(sq));
    }
    return best;
}

}  // namespace

double weighted_cost(const WeightedCoreset& c, const Query& q, double p) {
    if (q.empty()) {
        throw ValidationError("query must have at least one center");
    }
    if (q.uses_indices()) {
        throw ValidationError("index queries need the dataset; use the dataset overload");
    }
    CompensatedSum total;
    for (const auto& e : c.entries) {
        if (e.coords.size() != q.dim()) {
            throw ValidationError("dimension mismatch between coreset entry and query");
        }
        total.add(e.weight * pow_distance(nearest_coords(e.coords, q), p));
    }
    return total.value();
}

double weighted_cost(const Dataset& data, const WeightedCoreset& c, const Query& q, double p) {
    validate_query(data, q);
    CompensatedSum total;
    for (const auto& e : c.entries) {
        total.add(e.weight * pow_distance(point_to_query_distance(data, e.index, q), p));
    }
    return total.value();
}

WeightedCoreset identity_coreset(const Dataset& data) {
    WeightedCoreset out;
    const double n = static_cast<double>(data.size());
    out.entries.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CoresetEntry e;
        e.index = i;
        e.weight = 1.0 / n;
        e.prob = 1.0 / n;
        if (data.is_euclidean()) {
            auto row = data.point(i);
            e.coords.assign(row.begin(), row.end());
        }
        out.entries.push_back(std::move(e));
    }
    out.provenance.mode = BuildMode::uniform;
    out.provenance.space = data.mode();
    out.provenance.n = data.size();
    out.provenance.dim = data.dim();
    return out;
}

WeightedCoreset compact(const WeightedCoreset& c) {
    std::map<std::size_t, std::size_t> slot;
    WeightedCoreset out;
    out.provenance = c.provenance;
    for (const auto& e : c.entries) {
        auto [it, inserted] = slot.emplace(e.index, out.entries.size());
        if (inserted) {
            out.entries.push_back(e);
        } else {
            out.entries[it->second].weight += e.weight;
        }
    }
    return out;
}

void check_weight_identity(const WeightedCoreset& c, double rel_tol) {
    const double n = static_cast<double>(c.provenance.n);
    const double m = static_cast<double>(c.m());
    for (const auto& e : c.entries) {
        if (!(e.weight > 0.0) || !(e.prob > 0.0)) {
            throw ValidationError("coreset entry with non-positive weight or probability");
        }
        const double id = e.weight * n * m * e.prob;
        if (std::abs(id - 1.0) > rel_tol) {
            throw ValidationError("coreset entry violates the weight identity w*n*m*q = 1");
        }
    }
}

}  // namespace pcoreset
