#include "pcoreset/oneshot.hpp"

#include <cmath>

#include "pcoreset/coreset.hpp"

namespace pcoreset {

double auto_spacing(std::size_t n) {
    if (n < 3) {
        throw ValidationError("automatic grid spacing needs n >= 3; pass the spacing explicitly");
    }
    return 1.0 / std::log(static_cast<double>(n));
}

GridSpec build_grid(double p_max, std::optional<double> spacing, std::size_t n) {
    if (!std::isfinite(p_max) || p_max < 1.0) {
        throw ValidationError("p_max must be finite and >= 1");
    }
    const double step = spacing ? *spacing : auto_spacing(n);
    if (!std::isfinite(step) || step <= 0.0) {
        throw ValidationError("grid spacing must be positive");
    }
    GridSpec g;
    g.p_max = p_max;
    g.spacing = step;
    if (p_max == 1.0) {
        g.points = {1.0};
        return g;
    }
    double ratio = std::log(p_max) / std::log1p(step);
    // ln 2 / ln 2 and friends should not be bumped to the next integer.
    if (std::abs(ratio - std::round(ratio)) <= 1e-12 * std::max(1.0, ratio)) {
        ratio = std::round(ratio);
    }
    g.ell = static_cast<std::size_t>(std::ceil(ratio));
    g.points.reserve(g.ell + 1);
    for (std::size_t i = 0; i <= g.ell; ++i) {
        g.points.push_back(std::pow(1.0 + step, static_cast<double>(i)));
    }
    g.points.back() = p_max;
    if (g.points.size() >= 2) {
        const double prev = g.points[g.points.size() - 2];
        if (std::abs(p_max - prev) <= 1e-12 * p_max) {
            g.points.erase(g.points.end() - 2);
            g.ell = g.points.size() - 1;
        }
    }
    return g;
}

double grid_failure_budget(double delta, std::size_t ell) {
    return ell == 0 ? delta / 2.0 : delta / (2.0 * static_cast<double>(ell));
}

OneshotProfile oneshot_sensitivity(const Dataset& data, std::size_t k, double p_max,
                                   std::optional<double> spacing, double delta,
                                   std::uint64_t seed) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    OneshotProfile out;
    out.grid = build_grid(p_max, spacing, data.size());
    out.inflation = std::exp(out.grid.spacing * std::log(static_cast<double>(data.size())));
    const double budget = grid_failure_budget(delta, out.grid.ell);

    const std::size_t n = data.size();
    std::vector<double> combined(n, 0.0);
    for (std::size_t g = 0; g < out.grid.points.size(); ++g) {
        auto profile = sensitivity_bound(data, k, out.grid.points[g], budget, sensitivity_seed(seed, g));
        for (std::size_t x = 0; x < n; ++x) {
            combined[x] += out.inflation * profile.s[x];
        }
        out.grid_mean_s.push_back(profile.mean_s);
        out.grid_s.push_back(std::move(profile.s));
        if (g == 0) {
            out.combined.solution = std::move(profile.solution);
            out.combined.partition = std::move(profile.partition);
            out.combined.alpha = profile.alpha;
        }
    }
    out.combined.s = std::move(combined);
    out.combined.p = p_max;
    out.combined.mean_s = out.combined.total() / static_cast<double>(n);
    return out;
}

WeightedCoreset build_oneshot(const Dataset& data, std::size_t k, double p_max, double delta,
                              std::size_t m, std::uint64_t seed, std::optional<double> spacing) {
    auto profile = oneshot_sensitivity(data, k, p_max, spacing, delta, seed);
    Rng rng(sampling_seed(seed));
    auto out = importance_sample(data, profile.combined, m, rng);
    auto& prov = out.provenance;
    prov.mode = BuildMode::oneshot;
    prov.k = k;
    prov.p_max = p_max;
    prov.grid_spacing = profile.grid.spacing;
    prov.grid = profile.grid.points;
    prov.grid_mean_s = profile.grid_mean_s;
    prov.delta = delta;
    prov.seed = seed;
    prov.mean_s = profile.combined.mean_s;
    return out;
}

InterpolationMargin interpolation_bound_check(const Dataset& data, const Query& q, double p,
                                              double spacing, double theta, std::size_t x) {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw ValidationError("theta must lie in [0, 1]");
    }
    if (!(spacing >= 0.0) || !(p > 0.0)) {
        throw ValidationError("need p > 0 and spacing >= 0");
    }
    const double p_mid = p * (1.0 + theta * spacing);
    const double p_hi = p * (1.0 + spacing);
    const double phi_lo = cost(data, q, p);
    const double phi_mid = cost(data, q, p_mid);
    const double phi_hi = cost(data, q, p_hi);
    if (!(phi_lo > 0.0 && phi_mid > 0.0 && phi_hi > 0.0)) {
        throw ValidationError("interpolation check needs non-zero cost at all three exponents");
    }
    const double d = point_to_query_distance(data, x, q);
    const double n = static_cast<double>(data.size());
    InterpolationMargin out;
    out.lhs = pow_distance(d, p_mid) / phi_mid;
    // Evaluate the endpoints exactly so theta in {0, 1} gives the closed forms.
    const double lo_term = pow_distance(d, p) / phi_lo;
    const double hi_term = pow_distance(d, p_hi) / phi_hi;
    double mix = 0.0;
    if (theta == 0.0) {
        mix = lo_term;
    } else if (theta == 1.0) {
        mix = hi_term;
    } else {
        mix = (1.0 - theta) * lo_term + theta * hi_term;
    }
    out.rhs = std::exp(theta * spacing * std::log(n)) * mix;
    return out;
}

std::vector<double> transfer_grid(double p_max, double eps, std::size_t n) {
    if (!(p_max > 1.0) || !(eps > 0.0) || n < 2) {
        throw ValidationError("transfer grid needs p_max > 1, eps > 0 and n >= 2");
    }
    const double gamma = eps / (6.0 * std::log(static_cast<double>(n)));
    const auto r = static_cast<std::size_t>(std::floor(std::log(p_max) / std::log1p(gamma)));
    std::vector<double> out;
    out.reserve(r + 2);
    for (std::size_t i = 0; i <= r; ++i) {
        out.push_back(std::pow(1.0 + gamma, static_cast<double>(i)));
    }
    if (std::abs(out.back() - p_max) > 1e-12 * p_max) {
        out.push_back(p_max);
    } else {
        out.back() = p_max;
    }
    return out;
}

}  // namespace pcoreset
