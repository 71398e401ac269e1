#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pcoreset/metric.hpp"

namespace pcoreset {

enum class BuildMode { fixed_p, oneshot, uniform };

std::string to_string(BuildMode mode);
BuildMode build_mode_from_string(const std::string& s);

/// Where a coreset came from. Fields that do not apply to a mode stay at
/// their defaults (e.g. `grid` is empty for fixed-p builds).
struct Provenance {
    BuildMode mode = BuildMode::fixed_p;
    SpaceMode space = SpaceMode::euclidean;
    std::size_t n = 0;
    std::size_t dim = 0;
    std::size_t k = 0;
    double p = 0.0;
    double p_max = 0.0;
    double grid_spacing = 0.0;
    std::vector<double> grid;
    std::vector<double> grid_mean_s;
    double delta = 0.0;
    std::uint64_t seed = 0;
    double mean_s = 0.0;
};

struct CoresetEntry {
    std::size_t index = 0;
    double weight = 0.0;
    /// Sampling probability q(x) the weight was derived from.
    double prob = 0.0;
    /// Materialized coordinates; empty in metric mode.
    std::vector<double> coords;
};

/// m importance-sampled points with weights 1/(n m q(x)). Duplicate draws are
/// kept as separate entries.
struct WeightedCoreset {
    std::vector<CoresetEntry> entries;
    Provenance provenance;

    std::size_t m() const { return entries.size(); }
    double total_weight() const;
};

/// sum_{x in C} w(x) d(x, Q)^p using the entries' materialized coordinates.
/// Euclidean coresets only.
double weighted_cost(const WeightedCoreset& c, const Query& q, double p);

/// Same, resolving entries through their indices into `data`. Works in both
/// modes; in Euclidean mode the result equals the coordinate-based overload.
double weighted_cost(const Dataset& data, const WeightedCoreset& c, const Query& q, double p);

/// The full dataset with every weight 1/n (q = 1/n).
WeightedCoreset identity_coreset(const Dataset& data);

/// Merges entries with equal indices by summing their weights. Leaves the
/// weighted cost unchanged for every query; `prob` of merged entries is kept.
WeightedCoreset compact(const WeightedCoreset& c);

/// Throws ValidationError when some entry violates w * n * m * q = 1 beyond
/// `rel_tol`, or has a non-positive weight.
void check_weight_identity(const WeightedCoreset& c, double rel_tol = 1e-12);

}  // namespace pcoreset
