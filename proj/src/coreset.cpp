#include "pcoreset/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pcoreset {

namespace {

CoresetEntry make_entry(const Dataset& data, std::size_t index, double prob, double m) {
    CoresetEntry e;
    e.index = index;
    e.prob = prob;
    e.weight = 1.0 / (static_cast<double>(data.size()) * m * prob);
    if (data.is_euclidean()) {
        auto row = data.point(index);
        e.coords.assign(row.begin(), row.end());
    }
    return e;
}

void fill_sizes(const Dataset& data, WeightedCoreset& c) {
    c.provenance.space = data.mode();
    c.provenance.n = data.size();
    c.provenance.dim = data.dim();
}

}  // namespace

WeightedCoreset importance_sample(const Dataset& data, std::span<const double> s, std::size_t m,
                                  Rng& rng) {
    if (m == 0) {
        throw ValidationError("sample count m must be positive");
    }
    if (s.size() != data.size()) {
        throw ValidationError("sensitivity vector does not match the dataset size");
    }
    std::vector<double> prefix(s.size());
    double running = 0.0;
    for (std::size_t x = 0; x < s.size(); ++x) {
        if (!(s[x] >= 0.0) || !std::isfinite(s[x])) {
            throw ValidationError("sensitivities must be finite and non-negative");
        }
        running += s[x];
        prefix[x] = running;
    }
    if (!(running > 0.0)) {
        throw ValidationError("sensitivities sum to zero");
    }
    CompensatedSum exact_total;
    for (double v : s) {
        exact_total.add(v);
    }
    const double total = exact_total.value();

    WeightedCoreset out;
    fill_sizes(data, out);
    out.entries.reserve(m);
    const double md = static_cast<double>(m);
    for (std::size_t draw = 0; draw < m; ++draw) {
        const double target = uniform01(rng) * running;
        auto it = std::upper_bound(prefix.begin(), prefix.end(), target);
        auto x = it == prefix.end() ? s.size() - 1 : static_cast<std::size_t>(it - prefix.begin());
        while (s[x] == 0.0 && x + 1 < s.size()) {
            ++x;
        }
        out.entries.push_back(make_entry(data, x, s[x] / total, md));
    }
    return out;
}

WeightedCoreset build_fixed_p(const Dataset& data, std::size_t k, double p, double delta,
                              std::size_t m, std::uint64_t seed) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    auto profile = sensitivity_bound(data, k, p, delta / 2.0, sensitivity_seed(seed));
    Rng rng(sampling_seed(seed));
    auto out = importance_sample(data, profile, m, rng);
    auto& prov = out.provenance;
    prov.mode = BuildMode::fixed_p;
    prov.k = k;
    prov.p = p;
    prov.delta = delta;
    prov.seed = seed;
    prov.mean_s = profile.mean_s;
    return out;
}

WeightedCoreset build_uniform(const Dataset& data, std::size_t m, std::uint64_t seed) {
    if (m == 0) {
        throw ValidationError("sample count m must be positive");
    }
    Rng rng(sampling_seed(seed));
    WeightedCoreset out;
    fill_sizes(data, out);
    out.entries.reserve(m);
    const double q = 1.0 / static_cast<double>(data.size());
    for (std::size_t draw = 0; draw < m; ++draw) {
        out.entries.push_back(make_entry(data, uniform_index(rng, data.size()), q,
                                         static_cast<double>(m)));
    }
    out.provenance.mode = BuildMode::uniform;
    out.provenance.seed = seed;
    out.provenance.mean_s = 1.0;
    return out;
}

double theoretical_sample_size_raw(double n, std::size_t k, double p, double eps, double delta,
                                   SampleSizeSpace space, std::size_t dim) {
    if (!(eps > 0.0 && eps <= 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw ValidationError("eps must lie in (0, 1] and delta in (0, 1)");
    }
    if (k == 0 || !(n >= 1.0) || !(p >= 1.0)) {
        throw ValidationError("need k >= 1, n >= 1 and p >= 1");
    }
    const double kd = static_cast<double>(k);
    if (space == SampleSizeSpace::metric) {
        return std::pow(8.0, p + 3.0) * kd / (3.0 * eps * eps) *
               (1.0 + kd * std::log(n) + std::log(2.0 / delta));
    }
    if (dim == 0) {
        throw ValidationError("dimension must be positive");
    }
    const double log_k = std::log(kd);
    return std::pow(8.0, p) * p * kd * log_k / (eps * eps) *
           (static_cast<double>(dim) * kd * log_k + std::log(1.0 / delta));
}

std::uint64_t theoretical_sample_size(double n, std::size_t k, double p, double eps, double delta,
                                      SampleSizeSpace space, std::size_t dim) {
    const double raw = theoretical_sample_size_raw(n, k, p, eps, delta, space, dim);
    if (!(raw < 1.8e19)) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    // Absorb last-ulp noise so exact integral values are not bumped up.
    const double rounded = std::ceil(raw * (1.0 - 1e-12));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(rounded));
}

}  // namespace pcoreset
