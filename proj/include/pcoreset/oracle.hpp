#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pcoreset/metric.hpp"
#include "pcoreset/weighted.hpp"

namespace pcoreset {

// ---------------------------------------------------------------------------
// Exact sensitivities
// ---------------------------------------------------------------------------

/// Largest number of candidate queries exact_sensitivity will enumerate.
inline constexpr std::uint64_t kMaxEnumeratedQueries = 1'000'000;

/// Number of center sets with 1..k data-point centers: sum_j C(n, j).
/// Saturates at UINT64_MAX.
std::uint64_t enumerated_query_count(std::size_t n, std::size_t k);

/// sigma_p(x) = max over every set Q of 1..k data points of
/// d(x,Q)^p / cost(X,Q,p), by exhaustive enumeration. Ratios for zero-cost
/// queries are 0, except that a dataset of coincident points (every query
/// costs 0) gets sigma = 1 everywhere. Throws when the enumeration exceeds kMaxEnumeratedQueries.
///
/// In Euclidean mode centers are restricted to data points, which gives a
/// lower bound on the continuous-center sensitivity.
std::vector<double> exact_sensitivity(const Dataset& data, std::size_t k, double p);

// ---------------------------------------------------------------------------
// Query families and error measurement
// ---------------------------------------------------------------------------

enum class QueryStrategy { uniform_subsets, dp_sampled, perturbed_solution };

std::string to_string(QueryStrategy s);
/// Accepts "uniform", "dp", "perturbed" and the long enum names.
QueryStrategy query_strategy_from_string(const std::string& s);

struct QueryFamily {
    std::vector<Query> queries;
    QueryStrategy strategy = QueryStrategy::dp_sampled;
    std::uint64_t seed = 0;
};

/// Query i is generated from Rng(derive_seed(seed, i)):
///  - uniform_subsets: k distinct indices, uniformly at random;
///  - dp_sampled: one dp_sample run;
///  - perturbed_solution: a dp_sample run whose centers (as coordinates) are
///    jittered by Gaussian noise with standard deviation 0.1 x the solution's
///    mean point-to-center distance. Euclidean only.
QueryFamily sample_queries(const Dataset& data, std::size_t k, double p, std::size_t count,
                           QueryStrategy strategy, std::uint64_t seed);

struct QueryError {
    std::size_t query_id = 0;
    double full_cost = 0.0;
    double coreset_cost = 0.0;
    /// |full - coreset| / full; 0 and flagged when full_cost is 0.
    double rel_error = 0.0;
    bool zero_cost = false;
};

struct ErrorReport {
    std::vector<QueryError> per_query;
    double max_error = 0.0;
    double mean_error = 0.0;
    std::size_t zero_cost_count = 0;
    double p = 0.0;
    QueryStrategy strategy = QueryStrategy::dp_sampled;
    std::uint64_t query_seed = 0;
};

/// Relative error of the coreset cost against the full cost for every query.
/// Zero-cost queries are flagged and excluded from max / mean.
ErrorReport measure_error(const Dataset& data, const WeightedCoreset& coreset,
                          const QueryFamily& family, double p);

/// Full costs of every query, for reuse across several coresets.
std::vector<double> family_costs(const Dataset& data, const QueryFamily& family, double p);

/// measure_error with precomputed full costs.
ErrorReport measure_error(const Dataset& data, const WeightedCoreset& coreset,
                          const QueryFamily& family, double p,
                          const std::vector<double>& full_costs);

// ---------------------------------------------------------------------------
// Numeric checks of the one-shot analysis
// ---------------------------------------------------------------------------

/// One-dimensional instance on which the interpolation inequality is tight up
/// to constants: one point at n^{1/(p(2+D))}, round(sqrt n) points at 1 and
/// the remaining beta at n^{-1/(p(2+D))}; Q = {0}; witness is a point at 1.
struct TightnessInstance {
    Dataset data;
    Query query;
    std::size_t witness = 0;
    double far = 0.0;
    double near = 0.0;
    std::size_t far_count = 1;
    std::size_t unit_count = 0;
    std::size_t near_count = 0;
};

TightnessInstance tightness_instance(std::size_t n, double p, double spacing);

/// lhs = d^{p(1+D/2)} / phi^{p(1+D/2)} and
/// rhs = n^{D/6} / 9 * (d^p / phi^p + d^{p(1+D)} / phi^{p(1+D)}) at the witness.
struct TightnessSides {
    double lhs = 0.0;
    double rhs = 0.0;
};
TightnessSides tightness_sides(const TightnessInstance& inst, double p, double spacing);

/// cost(X, Q, p e) - cost(X, Q, p)^e, non-negative by the power-mean inequality.
double hoelder_check(const Dataset& data, const Query& q, double p, double exponent_factor);

// ---------------------------------------------------------------------------
// Uniform subsampling baseline
// ---------------------------------------------------------------------------

struct PairedTrial {
    std::uint64_t seed = 0;
    double sensitivity_max_error = 0.0;
    double uniform_max_error = 0.0;
};

struct BaselineComparison {
    std::vector<PairedTrial> trials;
    /// Fraction of trials where the sensitivity coreset has strictly lower max error.
    double sensitivity_win_rate = 0.0;
};

struct BaselineConfig {
    std::size_t k = 1;
    double p = 2.0;
    std::size_t m = 100;
    std::size_t trials = 10;
    double delta = 0.1;
    std::size_t query_count = 50;
    QueryStrategy strategy = QueryStrategy::dp_sampled;
};

/// Per trial t (seed derive_seed(seed, t)): one fixed-p sensitivity coreset,
/// one uniform coreset, and one query family shared by both.
BaselineComparison compare_uniform_baseline(const Dataset& data, const BaselineConfig& cfg,
                                            std::uint64_t seed);

}  // namespace pcoreset
