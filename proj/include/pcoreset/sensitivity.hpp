#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcoreset/metric.hpp"
#include "pcoreset/seeding.hpp"

namespace pcoreset {

/**
 * Per-point sensitivity upper bounds together with the bicriteria solution
 * they were derived from.
 *
 * For one-shot profiles `s` is the inflated sum over the grid, `p` is the
 * grid's p_max and `solution` / `partition` belong to the first grid point.
 */
struct SensitivityProfile {
    std::vector<double> s;
    double mean_s = 0.0;
    SeedSolution solution;
    Partition partition;
    double p = 0.0;
    double alpha = 0.0;

    double total() const;
};

/// alpha = 2^{p+3} (log2 k + 2), with the exact real-valued binary log.
double bicriteria_alpha(std::size_t k, double p);

/// Upper bound on the sensitivity of every point for power p:
///
///   s(x) = alpha 2^p d(x,b_i)^p / (2 phi(B))
///        + alpha 4^p phi_{B_i}(b_i) / (4 phi(B))
///        + 4^p n / (4 |B_i|)
///
/// where B is the best of seeding_runs(delta) D^p-sampling runs and B_i the
/// cluster owning x. When phi(B) = 0 the first two terms are taken as 0.
SensitivityProfile sensitivity_bound(const Dataset& data, std::size_t k, double p, double delta,
                                     std::uint64_t seed);

/// Same bound for an already chosen solution B.
SensitivityProfile sensitivity_from_solution(const Dataset& data, std::size_t k, double p,
                                             SeedSolution solution);

inline double mean_sensitivity(const SensitivityProfile& profile) { return profile.mean_s; }

/// Closed form of the mean bound: alpha 2^{p-1} + alpha 4^{p-1} + 4^{p-1} c,
/// c = number of non-empty clusters. Holds whenever phi(B) > 0.
double mean_sensitivity_identity(std::size_t k, double p, std::size_t nonempty_clusters);

/// 8^{p+2} k, the proven ceiling on the mean bound.
double mean_sensitivity_ceiling(std::size_t k, double p);

}  // namespace pcoreset
