#include "pcoreset/sensitivity.hpp"

#include <cmath>

namespace pcoreset {

double SensitivityProfile::total() const {
    CompensatedSum sum;
    for (double v : s) {
        sum.add(v);
    }
    return sum.value();
}

double bicriteria_alpha(std::size_t k, double p) {
    if (k == 0) {
        throw ValidationError("k must be positive");
    }
    return std::exp2(p + 3.0) * (std::log2(static_cast<double>(k)) + 2.0);
}

double mean_sensitivity_identity(std::size_t k, double p, std::size_t nonempty_clusters) {
    const double alpha = bicriteria_alpha(k, p);
    const double quarter = std::exp2(2.0 * p - 2.0);
    return alpha * std::exp2(p - 1.0) + alpha * quarter +
           quarter * static_cast<double>(nonempty_clusters);
}

double mean_sensitivity_ceiling(std::size_t k, double p) {
    return std::pow(8.0, p + 2.0) * static_cast<double>(k);
}

SensitivityProfile sensitivity_from_solution(const Dataset& data, std::size_t k, double p,
                                             SeedSolution solution) {
    if (!std::isfinite(p) || p < 1.0) {
        throw ValidationError("p must be finite and >= 1");
    }
    const std::size_t n = data.size();
    SensitivityProfile out;
    out.p = p;
    out.alpha = bicriteria_alpha(k, p);
    out.partition = assign(data, solution.query());

    const auto& part = out.partition;
    const std::size_t clusters = part.cluster_sizes.size();

    // phi_{B_i}(b_i): mean of d^p over the cluster's own members.
    std::vector<CompensatedSum> cluster_mass(clusters);
    CompensatedSum total_mass;
    std::vector<double> dp(n);
    for (std::size_t x = 0; x < n; ++x) {
        dp[x] = pow_distance(part.distance[x], p);
        cluster_mass[part.owner[x]].add(dp[x]);
        total_mass.add(dp[x]);
    }
    const double phi_b = total_mass.value() / static_cast<double>(n);
    solution.cost_at_p = phi_b;

    std::vector<double> cluster_cost(clusters, 0.0);
    for (std::size_t i = 0; i < clusters; ++i) {
        if (part.cluster_sizes[i] > 0) {
            cluster_cost[i] = cluster_mass[i].value() / static_cast<double>(part.cluster_sizes[i]);
        }
    }

    const double two_p = std::exp2(p);
    const double four_p = std::exp2(2.0 * p);
    out.s.resize(n);
    CompensatedSum sum;
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t i = part.owner[x];
        double v = four_p * static_cast<double>(n) /
                   (4.0 * static_cast<double>(part.cluster_sizes[i]));
        if (phi_b > 0.0) {
            v += out.alpha * two_p * dp[x] / (2.0 * phi_b);
            v += out.alpha * four_p * cluster_cost[i] / (4.0 * phi_b);
        }
        out.s[x] = v;
        sum.add(v);
    }
    out.mean_s = sum.value() / static_cast<double>(n);
    out.solution = std::move(solution);
    return out;
}

SensitivityProfile sensitivity_bound(const Dataset& data, std::size_t k, double p, double delta,
                                     std::uint64_t seed) {
    if (!std::isfinite(p) || p < 1.0) {
        throw ValidationError("p must be finite and >= 1");
    }
    return sensitivity_from_solution(data, k, p, best_of_runs(data, k, p, delta, seed));
}

}  // namespace pcoreset
