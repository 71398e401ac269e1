#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "pcoreset/metric.hpp"
#include "pcoreset/rng.hpp"
#include "pcoreset/sensitivity.hpp"
#include "pcoreset/weighted.hpp"

namespace pcoreset {

/// m i.i.d. draws with q(x) = s(x) / sum s, each carrying weight 1/(n m q(x)).
/// Only entries and the size fields of the provenance are filled in.
WeightedCoreset importance_sample(const Dataset& data, std::span<const double> s, std::size_t m,
                                  Rng& rng);

inline WeightedCoreset importance_sample(const Dataset& data, const SensitivityProfile& profile,
                                         std::size_t m, Rng& rng) {
    return importance_sample(data, profile.s, m, rng);
}

/// Seed streams shared by the fixed-p and one-shot builders: the sampling
/// pass always draws from stream 0, the sensitivity run for grid point g
/// (fixed-p: g = 0) from stream 1 + g.
inline std::uint64_t sampling_seed(std::uint64_t seed) { return derive_seed(seed, 0); }
inline std::uint64_t sensitivity_seed(std::uint64_t seed, std::size_t grid_index = 0) {
    return derive_seed(seed, 1 + grid_index);
}

/// Fixed-p coreset: sensitivity bound at failure budget delta/2, then
/// importance sampling.
WeightedCoreset build_fixed_p(const Dataset& data, std::size_t k, double p, double delta,
                              std::size_t m, std::uint64_t seed);

/// Uniform subsample of m points with weight 1/m each.
WeightedCoreset build_uniform(const Dataset& data, std::size_t m, std::uint64_t seed);

enum class SampleSizeSpace { metric, euclidean };

/**
 * Advisory sample size from the worst-case guarantees (natural logs).
 *
 * metric:    8^{p+3} k / (3 eps^2) * (1 + k ln n + ln(2/delta))
 * euclidean: c 8^p p k ln k / eps^2 * (d k ln k + ln(1/delta)), with c = 1
 *
 * Returns the ceiling, at least 1. `n` is real so the formula can be probed
 * at non-integral sizes.
 */
std::uint64_t theoretical_sample_size(double n, std::size_t k, double p, double eps, double delta,
                                      SampleSizeSpace space, std::size_t dim = 1);

/// Unrounded right-hand side of theoretical_sample_size.
double theoretical_sample_size_raw(double n, std::size_t k, double p, double eps, double delta,
                                   SampleSizeSpace space, std::size_t dim = 1);

}  // namespace pcoreset
