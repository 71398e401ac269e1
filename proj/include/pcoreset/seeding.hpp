#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcoreset/metric.hpp"
#include "pcoreset/rng.hpp"

namespace pcoreset {

/// D^p-sampling: first center uniform, each further center drawn with
/// probability proportional to d(x, B)^p. If the remaining mass is zero
/// before k centers are chosen, the rest are drawn uniformly.
std::vector<std::size_t> dp_sample(const Dataset& data, std::size_t k, double p, Rng& rng);

/// Number of seeding repetitions for failure probability delta:
/// max(1, ceil(ln(1/delta))).
std::size_t seeding_runs(double delta);

struct SeedSolution {
    std::vector<std::size_t> centers;
    double cost_at_p = 0.0;
    std::size_t runs_used = 0;
    std::uint64_t seed = 0;
    /// Cost of every individual run, in run order.
    std::vector<double> run_costs;

    Query query() const { return Query::at_indices(centers); }
};

/// Best (lowest cost) of seeding_runs(delta) independent dp_sample runs.
/// Run r draws from derive_seed(seed, r); ties go to the lowest run. Centers
/// coinciding with an earlier center are dropped, so the solution has
/// min(k, #distinct points) centers.
SeedSolution best_of_runs(const Dataset& data, std::size_t k, double p, double delta,
                          std::uint64_t seed);

}  // namespace pcoreset
