#pragma once

// Shared generators and independent reference computations for the tests.
// Nothing here calls into the library's cost or distance code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "pcoreset/metric.hpp"
#include "pcoreset/rng.hpp"

namespace testing_support {

using pcoreset::Dataset;
using pcoreset::Query;
using pcoreset::Rng;

inline std::vector<std::vector<double>> random_rows(Rng& rng, std::size_t n, std::size_t d,
                                                     double scale = 10.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& r : rows) {
        for (auto& v : r) {
            v = u(rng);
        }
    }
    return rows;
}

inline double ref_euclid(const std::vector<double>& a, const std::vector<double>& b) {
    long double s = 0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        s += static_cast<long double>(a[t] - b[t]) * (a[t] - b[t]);
    }
    return static_cast<double>(std::sqrt(s));
}

/// Distance matrix of random Euclidean points: always a valid metric.
inline std::vector<double> euclidean_matrix(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i * n + j] = i == j ? 0.0 : ref_euclid(rows[i], rows[j]);
        }
    }
    // Force exact symmetry.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m[j * n + i] = m[i * n + j];
        }
    }
    return m;
}

/// Random metric instance: shortest-path closure of random edge weights.
inline Dataset random_metric(Rng& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m[i * n + j] = m[j * n + i] = u(rng);
        }
    }
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m[i * n + j] = std::min(m[i * n + j], m[i * n + l] + m[l * n + j]);
            }
        }
    }
    return Dataset::from_matrix(std::move(m), n);
}

/// Reference cost: (1/n) sum_x min_j d(x, c_j)^p with std::pow in long double.
inline double ref_cost(const std::vector<std::vector<double>>& rows,
                       const std::vector<std::vector<double>>& centers, double p) {
    long double total = 0;
    for (const auto& r : rows) {
        double best = INFINITY;
        for (const auto& c : centers) {
            best = std::min(best, ref_euclid(r, c));
        }
        total += std::pow(static_cast<long double>(best), static_cast<long double>(p));
    }
    return static_cast<double>(total / rows.size());
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing_support
