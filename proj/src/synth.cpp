#include "pcoreset/synth.hpp"

#include <cmath>
#include <random>

#include "pcoreset/rng.hpp"

namespace pcoreset {

void validate(const SynthSpec& spec) {
    if (spec.n == 0 || spec.dim == 0) {
        throw ValidationError("synth spec needs n >= 1 and d >= 1");
    }
    double total = spec.noise_fraction;
    if (!(spec.noise_fraction >= 0.0 && spec.noise_fraction <= 1.0)) {
        throw ValidationError("noise_fraction must lie in [0, 1]");
    }
    for (const auto& c : spec.components) {
        if (!(c.weight > 0.0)) {
            throw ValidationError("component weights must be positive");
        }
        if (c.mean.size() != spec.dim) {
            throw ValidationError("component mean does not match the dimension");
        }
        if (!(c.stddev >= 0.0) || !std::isfinite(c.stddev)) {
            throw ValidationError("component stddev must be finite and non-negative");
        }
        total += c.weight;
    }
    if (spec.noise_fraction > 0.0) {
        if (spec.noise_lo.size() != spec.dim || spec.noise_hi.size() != spec.dim) {
            throw ValidationError("noise box does not match the dimension");
        }
        for (std::size_t t = 0; t < spec.dim; ++t) {
            if (!(spec.noise_lo[t] <= spec.noise_hi[t])) {
                throw ValidationError("noise box has lo > hi");
            }
        }
    }
    if (spec.tail) {
        if (!(spec.tail->fraction >= 0.0) || !(spec.tail->shape > 0.0) ||
            !(spec.tail->scale > 0.0)) {
            throw ValidationError("tail needs fraction >= 0, shape > 0 and scale > 0");
        }
        total += spec.tail->fraction;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("component weights, noise and tail fractions must sum to 1");
    }
}

LabeledDataset generate_labeled(const SynthSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Cumulative source weights: components, then noise, then tail.
    std::vector<double> cumulative;
    double running = 0.0;
    for (const auto& c : spec.components) {
        running += c.weight;
        cumulative.push_back(running);
    }
    const double tail_fraction = spec.tail ? spec.tail->fraction : 0.0;
    const double noise_end = running + spec.noise_fraction;

    std::vector<double> coords;
    coords.reserve(spec.n * spec.dim);
    std::vector<std::size_t> labels;
    labels.reserve(spec.n);
    std::vector<double> dir(spec.dim);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = uniform01(rng) * (noise_end + tail_fraction);
        std::size_t label = kTailLabel;
        for (std::size_t c = 0; c < cumulative.size(); ++c) {
            if (u < cumulative[c]) {
                label = c;
                break;
            }
        }
        if (label == kTailLabel && u < noise_end) {
            label = kNoiseLabel;
        }
        if (label == kTailLabel && !spec.tail) {
            label = cumulative.empty() ? kNoiseLabel : cumulative.size() - 1;
        }

        if (label == kNoiseLabel) {
            for (std::size_t t = 0; t < spec.dim; ++t) {
                coords.push_back(spec.noise_lo[t] +
                                 uniform01(rng) * (spec.noise_hi[t] - spec.noise_lo[t]));
            }
        } else if (label == kTailLabel) {
            double norm = 0.0;
            do {
                norm = 0.0;
                for (double& v : dir) {
                    v = gauss(rng);
                    norm += v * v;
                }
            } while (norm == 0.0);
            norm = std::sqrt(norm);
            const double radius =
                spec.tail->scale * std::pow(1.0 - uniform01(rng), -1.0 / spec.tail->shape);
            for (double v : dir) {
                coords.push_back(radius * v / norm);
            }
        } else {
            const auto& comp = spec.components[label];
            for (std::size_t t = 0; t < spec.dim; ++t) {
                coords.push_back(comp.mean[t] + comp.stddev * gauss(rng));
            }
        }
        labels.push_back(label);
    }
    return LabeledDataset{Dataset::euclidean(std::move(coords), spec.dim), std::move(labels)};
}

SynthSpec heavy_tailed_mixture(std::size_t n, std::uint64_t seed) {
    SynthSpec spec;
    spec.n = n;
    spec.dim = 2;
    spec.seed = seed;
    spec.components = {
        {0.50, {0.0, 0.0}, 1.0},
        {0.25, {8.0, 0.0}, 1.0},
        {0.14, {0.0, 8.0}, 0.5},
        {0.099, {8.0, 8.0}, 2.0},
        {0.001, {100.0, 100.0}, 1.0},
    };
    spec.tail = ParetoTail{0.01, 2.0, 3.0};
    return spec;
}

}  // namespace pcoreset
