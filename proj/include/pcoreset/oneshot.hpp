#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcoreset/metric.hpp"
#include "pcoreset/sensitivity.hpp"
#include "pcoreset/weighted.hpp"

namespace pcoreset {

/// Exponential grid 1, (1+spacing), (1+spacing)^2, ... covering [1, p_max],
/// with the last point clamped to p_max.
struct GridSpec {
    double p_max = 1.0;
    double spacing = 0.0;
    std::size_t ell = 0;
    std::vector<double> points;
};

/// ell = ceil(ln p_max / ln(1 + spacing)). A missing spacing means 1/ln n,
/// which requires n >= 3.
GridSpec build_grid(double p_max, std::optional<double> spacing, std::size_t n);

/// 1 / ln n, the default spacing. Requires n >= 3.
double auto_spacing(std::size_t n);

struct OneshotProfile {
    GridSpec grid;
    /// n^spacing, the per-grid-point inflation factor.
    double inflation = 1.0;
    /// Combined bound s(x) = sum_g n^spacing s_g(x).
    SensitivityProfile combined;
    /// Uninflated bound for every grid point, in grid order.
    std::vector<std::vector<double>> grid_s;
    std::vector<double> grid_mean_s;
};

/// Failure budget handed to each grid point: delta / (2 ell), or delta / 2
/// for a single-point grid.
double grid_failure_budget(double delta, std::size_t ell);

/// Runs the sensitivity bound at every grid point (grid point g seeded from
/// sensitivity_seed(seed, g)) and sums the inflated bounds in grid order.
OneshotProfile oneshot_sensitivity(const Dataset& data, std::size_t k, double p_max,
                                   std::optional<double> spacing, double delta,
                                   std::uint64_t seed);

/// One importance-sampling pass over the combined bound. Valid for every
/// p in [1, p_max].
WeightedCoreset build_oneshot(const Dataset& data, std::size_t k, double p_max, double delta,
                              std::size_t m, std::uint64_t seed,
                              std::optional<double> spacing = std::nullopt);

/// RHS - LHS of the interpolation inequality
///
///   d^{p(1+t D)} / phi^{p(1+t D)}
///     <= n^{t D} ((1-t) d^p / phi^p + t d^{p(1+D)} / phi^{p(1+D)})
///
/// for point x, query q, t = theta, D = spacing. Throws when any of the three
/// costs is zero.
struct InterpolationMargin {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin() const { return rhs - lhs; }
};
InterpolationMargin interpolation_bound_check(const Dataset& data, const Query& q, double p,
                                              double spacing, double theta, std::size_t x);

/// Fine grid {1, (1+g), ..., (1+g)^r} plus p_max, with g = eps / (6 ln n) and
/// r = floor(ln p_max / ln(1+g)). A coreset with error eps/3 on all of these
/// powers has error eps on all of [1, p_max].
std::vector<double> transfer_grid(double p_max, double eps, std::size_t n);

}  // namespace pcoreset
