#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcoreset/metric.hpp"

namespace pcoreset {

struct GaussianComponent {
    double weight = 1.0;
    std::vector<double> mean;
    double stddev = 1.0;
};

/// Pareto-distributed radial outliers around the origin:
/// radius = scale * U^{-1/shape}, direction uniform on the sphere.
struct ParetoTail {
    double fraction = 0.0;
    double shape = 2.0;
    double scale = 1.0;
};

/// Mixture of isotropic Gaussians plus optional uniform box noise and an
/// optional heavy tail. Component weights, noise_fraction and tail fraction
/// must sum to 1.
struct SynthSpec {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<GaussianComponent> components;
    double noise_fraction = 0.0;
    std::vector<double> noise_lo;
    std::vector<double> noise_hi;
    std::optional<ParetoTail> tail;
    std::uint64_t seed = 0;
};

/// Throws ValidationError for inconsistent specs.
void validate(const SynthSpec& spec);

/// Source label per generated point: component index, or one of the two
/// sentinels below.
inline constexpr std::size_t kNoiseLabel = static_cast<std::size_t>(-1);
inline constexpr std::size_t kTailLabel = static_cast<std::size_t>(-2);

struct LabeledDataset {
    Dataset data;
    std::vector<std::size_t> labels;
};

/// Deterministic per seed. Each point picks its source by weight, then draws
/// coordinates from it.
LabeledDataset generate_labeled(const SynthSpec& spec);

inline Dataset generate(const SynthSpec& spec) { return generate_labeled(spec).data; }

/// The 2-D fixture used by the benchmarks: four unit-variance clusters with
/// unbalanced weights, a far cluster holding 0.1% of the mass and a small
/// Pareto tail.
SynthSpec heavy_tailed_mixture(std::size_t n, std::uint64_t seed);

}  // namespace pcoreset
