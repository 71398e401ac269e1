#include "pcoreset/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pcoreset/coreset.hpp"
#include "pcoreset/rng.hpp"
#include "pcoreset/seeding.hpp"

namespace pcoreset {

std::uint64_t enumerated_query_count(std::size_t n, std::size_t k) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // C(n, j)
    for (std::size_t j = 1; j <= std::min(n, k); ++j) {
        // C(n, j) = C(n, j-1) * (n - j + 1) / j, exact in integers.
        const std::uint64_t num = n - j + 1;
        if (binom > kMax / num) {
            return kMax;
        }
        binom = binom * num / j;
        if (total > kMax - binom) {
            return kMax;
        }
        total += binom;
    }
    return total;
}

std::vector<double> exact_sensitivity(const Dataset& data, std::size_t k, double p) {
    if (k == 0) {
        throw ValidationError("k must be positive");
    }
    const std::size_t n = data.size();
    if (enumerated_query_count(n, k) > kMaxEnumeratedQueries) {
        throw ValidationError("instance too large for exact sensitivity enumeration");
    }
    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dist[i * n + j] = data.distance(i, j);
        }
    }

    std::vector<double> sigma(n, 0.0);
    std::vector<double> powered(n);
    bool any_positive = false;
    std::vector<std::size_t> subset;
    for (std::size_t size = 1; size <= std::min(n, k); ++size) {
        subset.resize(size);
        std::iota(subset.begin(), subset.end(), 0);
        while (true) {
            CompensatedSum total;
            for (std::size_t x = 0; x < n; ++x) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t c : subset) {
                    best = std::min(best, dist[x * n + c]);
                }
                powered[x] = pow_distance(best, p);
                total.add(powered[x]);
            }
            const double phi = total.value() / static_cast<double>(n);
            if (phi > 0.0) {
                any_positive = true;
                for (std::size_t x = 0; x < n; ++x) {
                    sigma[x] = std::max(sigma[x], powered[x] / phi);
                }
            }
            // Next combination in lexicographic order.
            std::size_t pos = size;
            while (pos > 0 && subset[pos - 1] == n - size + pos - 1) {
                --pos;
            }
            if (pos == 0) {
                break;
            }
            ++subset[pos - 1];
            for (std::size_t t = pos; t < size; ++t) {
                subset[t] = subset[t - 1] + 1;
            }
        }
    }
    if (!any_positive) {
        // Every point coincides: each carries an equal share of any cost.
        std::fill(sigma.begin(), sigma.end(), 1.0);
    }
    return sigma;
}

std::string to_string(QueryStrategy s) {
    switch (s) {
        case QueryStrategy::uniform_subsets:
            return "uniform";
        case QueryStrategy::dp_sampled:
            return "dp";
        case QueryStrategy::perturbed_solution:
            return "perturbed";
    }
    return "dp";
}

QueryStrategy query_strategy_from_string(const std::string& s) {
    if (s == "uniform" || s == "uniform_subsets") return QueryStrategy::uniform_subsets;
    if (s == "dp" || s == "dp_sampled") return QueryStrategy::dp_sampled;
    if (s == "perturbed" || s == "perturbed_solution") return QueryStrategy::perturbed_solution;
    throw ValidationError("unknown query strategy: " + s);
}

namespace {

std::vector<std::size_t> uniform_subset(std::size_t n, std::size_t k, Rng& rng) {
    // Partial Fisher-Yates over an index permutation.
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_index(rng, n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

Query perturbed(const Dataset& data, std::vector<std::size_t> centers, Rng& rng) {
    const Query base = Query::at_indices(std::move(centers));
    const Partition part = assign(data, base);
    CompensatedSum spread;
    for (double d : part.distance) {
        spread.add(d);
    }
    const double sigma = 0.1 * spread.value() / static_cast<double>(data.size());
    Query q = materialize(data, base);
    std::vector<double> coords(q.coords().begin(), q.coords().end());
    if (sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, sigma);
        for (double& c : coords) {
            c += noise(rng);
        }
    }
    return Query::at_points(std::move(coords), data.dim());
}

}  // namespace

QueryFamily sample_queries(const Dataset& data, std::size_t k, double p, std::size_t count,
                           QueryStrategy strategy, std::uint64_t seed) {
    if (count == 0) {
        throw ValidationError("query count must be positive");
    }
    if (k == 0) {
        throw ValidationError("k must be positive");
    }
    if (strategy == QueryStrategy::perturbed_solution && !data.is_euclidean()) {
        throw ValidationError("perturbed_solution queries require a Euclidean dataset");
    }
    if (strategy == QueryStrategy::uniform_subsets && k > data.size()) {
        throw ValidationError("cannot draw k distinct centers from fewer than k points");
    }
    QueryFamily family;
    family.strategy = strategy;
    family.seed = seed;
    family.queries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, i));
        switch (strategy) {
            case QueryStrategy::uniform_subsets:
                family.queries.push_back(Query::at_indices(uniform_subset(data.size(), k, rng)));
                break;
            case QueryStrategy::dp_sampled:
                family.queries.push_back(Query::at_indices(dp_sample(data, k, p, rng)));
                break;
            case QueryStrategy::perturbed_solution:
                family.queries.push_back(perturbed(data, dp_sample(data, k, p, rng), rng));
                break;
        }
    }
    return family;
}

std::vector<double> family_costs(const Dataset& data, const QueryFamily& family, double p) {
    std::vector<double> out;
    out.reserve(family.queries.size());
    for (const auto& q : family.queries) {
        out.push_back(cost(data, q, p));
    }
    return out;
}

ErrorReport measure_error(const Dataset& data, const WeightedCoreset& coreset,
                          const QueryFamily& family, double p,
                          const std::vector<double>& full_costs) {
    if (full_costs.size() != family.queries.size()) {
        throw ValidationError("precomputed costs do not match the query family");
    }
    ErrorReport report;
    report.p = p;
    report.strategy = family.strategy;
    report.query_seed = family.seed;
    CompensatedSum total;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < family.queries.size(); ++i) {
        QueryError e;
        e.query_id = i;
        e.full_cost = full_costs[i];
        e.coreset_cost = weighted_cost(data, coreset, family.queries[i], p);
        if (e.full_cost == 0.0) {
            e.zero_cost = true;
            ++report.zero_cost_count;
        } else {
            e.rel_error = std::abs(e.full_cost - e.coreset_cost) / e.full_cost;
            report.max_error = std::max(report.max_error, e.rel_error);
            total.add(e.rel_error);
            ++counted;
        }
        report.per_query.push_back(e);
    }
    report.mean_error = counted == 0 ? 0.0 : total.value() / static_cast<double>(counted);
    return report;
}

ErrorReport measure_error(const Dataset& data, const WeightedCoreset& coreset,
                          const QueryFamily& family, double p) {
    return measure_error(data, coreset, family, p, family_costs(data, family, p));
}

TightnessInstance tightness_instance(std::size_t n, double p, double spacing) {
    if (!(p > 0.0) || !(spacing > 0.0 && spacing <= 1.0)) {
        throw ValidationError("need p > 0 and spacing in (0, 1]");
    }
    const auto unit = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (n < unit + 1 || 2 * (n - unit - 1) < n) {
        throw ValidationError("n too small for the tightness construction");
    }
    const std::size_t near_count = n - unit - 1;
    const double nd = static_cast<double>(n);
    const double far = std::pow(nd, 1.0 / (p * (2.0 + spacing)));
    const double near = std::pow(nd, -1.0 / (p * (2.0 + spacing)));

    std::vector<double> coords;
    coords.reserve(n);
    coords.push_back(far);
    coords.insert(coords.end(), unit, 1.0);
    coords.insert(coords.end(), near_count, near);
    return TightnessInstance{
        .data = Dataset::euclidean(std::move(coords), 1),
        .query = Query::at_points({0.0}, 1),
        .witness = 1,
        .far = far,
        .near = near,
        .far_count = 1,
        .unit_count = unit,
        .near_count = near_count,
    };
}

TightnessSides tightness_sides(const TightnessInstance& inst, double p, double spacing) {
    const double d = point_to_query_distance(inst.data, inst.witness, inst.query);
    const double n = static_cast<double>(inst.data.size());
    const double p_mid = p * (1.0 + spacing / 2.0);
    const double p_hi = p * (1.0 + spacing);
    TightnessSides out;
    out.lhs = pow_distance(d, p_mid) / cost(inst.data, inst.query, p_mid);
    out.rhs = std::pow(n, spacing / 6.0) / 9.0 *
              (pow_distance(d, p) / cost(inst.data, inst.query, p) +
               pow_distance(d, p_hi) / cost(inst.data, inst.query, p_hi));
    return out;
}

double hoelder_check(const Dataset& data, const Query& q, double p, double exponent_factor) {
    if (!(p >= 1.0) || !(exponent_factor >= 1.0)) {
        throw ValidationError("need p >= 1 and exponent factor >= 1");
    }
    return cost(data, q, p * exponent_factor) - std::pow(cost(data, q, p), exponent_factor);
}

BaselineComparison compare_uniform_baseline(const Dataset& data, const BaselineConfig& cfg,
                                            std::uint64_t seed) {
    if (cfg.trials == 0) {
        throw ValidationError("trial count must be positive");
    }
    BaselineComparison out;
    std::size_t wins = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        const auto family = sample_queries(data, cfg.k, cfg.p, cfg.query_count, cfg.strategy,
                                           derive_seed(trial_seed, 0));
        const auto costs = family_costs(data, family, cfg.p);
        const auto sens = build_fixed_p(data, cfg.k, cfg.p, cfg.delta, cfg.m,
                                        derive_seed(trial_seed, 1));
        const auto unif = build_uniform(data, cfg.m, derive_seed(trial_seed, 2));
        PairedTrial trial;
        trial.seed = trial_seed;
        trial.sensitivity_max_error = measure_error(data, sens, family, cfg.p, costs).max_error;
        trial.uniform_max_error = measure_error(data, unif, family, cfg.p, costs).max_error;
        if (trial.sensitivity_max_error < trial.uniform_max_error) {
            ++wins;
        }
        out.trials.push_back(trial);
    }
    out.sensitivity_win_rate = static_cast<double>(wins) / static_cast<double>(cfg.trials);
    return out;
}

}  // namespace pcoreset
