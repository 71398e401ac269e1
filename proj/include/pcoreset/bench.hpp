#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcoreset/metric.hpp"
#include "pcoreset/oracle.hpp"

namespace pcoreset {

struct BenchConfig {
    std::size_t k = 3;
    std::vector<std::size_t> sample_sizes{200};
    double p_max = 3.0;
    std::vector<double> powers{1.0, 2.0, 3.0};
    std::size_t seeds = 3;
    std::uint64_t seed = 0;
    double delta = 0.1;
    std::optional<double> spacing;
    std::size_t query_count = 50;
    QueryStrategy strategy = QueryStrategy::dp_sampled;
};

struct BenchRow {
    std::string method;
    double p = 0.0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    double max_error = 0.0;
    double mean_error = 0.0;
};

/// Paired comparison of one-shot, fixed-p and uniform coresets. For every
/// seed and sample size, the one-shot and uniform coresets are built once and
/// evaluated at every power; a fixed-p coreset is built per power. All three
/// see the same query family for a given (seed, p).
std::vector<BenchRow> run_bench(const Dataset& data, const BenchConfig& cfg);

/// Flat comma-separated table with a header row.
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace pcoreset
