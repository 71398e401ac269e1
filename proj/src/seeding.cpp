#include "pcoreset/seeding.hpp"

#include <algorithm>
#include <cmath>

namespace pcoreset {

std::vector<std::size_t> dp_sample(const Dataset& data, std::size_t k, double p, Rng& rng) {
    if (k == 0) {
        throw ValidationError("k must be positive");
    }
    if (!std::isfinite(p) || p < 1.0) {
        throw ValidationError("p must be finite and >= 1");
    }
    const std::size_t n = data.size();
    std::vector<std::size_t> centers;
    centers.reserve(k);
    centers.push_back(uniform_index(rng, n));

    // mass[x] = d(x, B)^p, updated against the newest center only.
    std::vector<double> nearest(n);
    std::vector<double> prefix(n);
    for (std::size_t x = 0; x < n; ++x) {
        nearest[x] = data.distance(x, centers.front());
    }
    while (centers.size() < k) {
        double running = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            running += pow_distance(nearest[x], p);
            prefix[x] = running;
        }
        std::size_t pick = 0;
        if (running > 0.0) {
            const double target = uniform01(rng) * running;
            auto it = std::upper_bound(prefix.begin(), prefix.end(), target);
            pick = it == prefix.end() ? n - 1 : static_cast<std::size_t>(it - prefix.begin());
            // Guard against landing on a zero-mass point through rounding.
            while (nearest[pick] == 0.0 && pick + 1 < n) {
                ++pick;
            }
        } else {
            pick = uniform_index(rng, n);
        }
        centers.push_back(pick);
        for (std::size_t x = 0; x < n; ++x) {
            nearest[x] = std::min(nearest[x], data.distance(x, pick));
        }
    }
    return centers;
}

std::size_t seeding_runs(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    const double r = std::ceil(std::log(1.0 / delta));
    return r < 1.0 ? 1 : static_cast<std::size_t>(r);
}

namespace {

// Drops centers at distance zero from an earlier center. Such repeats only
// arise from the zero-mass fallback.
std::vector<std::size_t> distinct_locations(const Dataset& data,
                                            const std::vector<std::size_t>& centers) {
    std::vector<std::size_t> out;
    for (std::size_t c : centers) {
        const bool repeat = std::any_of(out.begin(), out.end(),
                                        [&](std::size_t o) { return data.distance(c, o) == 0.0; });
        if (!repeat) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

SeedSolution best_of_runs(const Dataset& data, std::size_t k, double p, double delta,
                          std::uint64_t seed) {
    const std::size_t runs = seeding_runs(delta);
    SeedSolution best;
    best.seed = seed;
    best.runs_used = runs;
    best.run_costs.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        Rng rng(derive_seed(seed, r));
        auto centers = distinct_locations(data, dp_sample(data, k, p, rng));
        const double c = cost(data, Query::at_indices(centers), p);
        best.run_costs.push_back(c);
        if (r == 0 || c < best.cost_at_p) {
            best.cost_at_p = c;
            best.centers = std::move(centers);
        }
    }
    return best;
}

}  // namespace pcoreset
