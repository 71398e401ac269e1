#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcoreset {

/// Thrown when inputs violate a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SpaceMode { euclidean, metric };

using DistanceOracle = std::function<double(std::size_t, std::size_t)>;

/**
 * The ground set X.
 *
 * Euclidean datasets store n rows of d coordinates (row-major). Metric
 * datasets wrap either a dense n x n matrix, validated eagerly, or a caller
 * supplied oracle that is trusted to be a metric.
 *
 * Immutable after construction and safe to share read-only across threads.
 */
class Dataset {
public:
    static Dataset euclidean(std::vector<double> coords, std::size_t dim);
    static Dataset euclidean(const std::vector<std::vector<double>>& rows);

    /// Validates zero diagonal, non-negativity and symmetry (relative tolerance
    /// `symmetry_tol`), and the triangle inequality when n <= 1024.
    static Dataset from_matrix(std::vector<double> matrix, std::size_t n,
                               double symmetry_tol = 1e-9);

    /// No validation is performed on oracle-backed datasets.
    static Dataset from_oracle(std::size_t n, DistanceOracle oracle);

    SpaceMode mode() const { return mode_; }
    bool is_euclidean() const { return mode_ == SpaceMode::euclidean; }
    std::size_t size() const { return n_; }
    /// Ambient dimension; 0 in metric mode.
    std::size_t dim() const { return dim_; }

    std::span<const double> point(std::size_t i) const;
    std::span<const double> coords() const { return coords_; }
    /// Dense matrix backing a metric dataset, empty for oracle-backed ones.
    std::span<const double> matrix() const { return matrix_; }

    /// Distance between two data points.
    double distance(std::size_t i, std::size_t j) const;

private:
    Dataset() = default;

    SpaceMode mode_ = SpaceMode::euclidean;
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::vector<double> matrix_;
    DistanceOracle oracle_;
};

/**
 * A candidate solution of at most k centers.
 *
 * Centers are either data-point indices (valid in both modes) or free
 * coordinate tuples (Euclidean mode only).
 */
class Query {
public:
    Query() = default;
    static Query at_indices(std::vector<std::size_t> indices);
    static Query at_points(std::vector<double> coords, std::size_t dim);
    static Query at_points(const std::vector<std::vector<double>>& rows);

    bool uses_indices() const { return !indices_.empty(); }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    /// Coordinate dimension for point queries, 0 for index queries.
    std::size_t dim() const { return dim_; }

    std::span<const std::size_t> indices() const { return indices_; }
    std::span<const double> coords() const { return coords_; }
    std::span<const double> center_coords(std::size_t j) const;

private:
    std::vector<std::size_t> indices_;
    std::vector<double> coords_;
    std::size_t dim_ = 0;
};

/// Throws ValidationError unless Q is non-empty, has at most `max_centers`
/// centers (0 = unbounded) and matches the dataset's index space / dimension.
void validate_query(const Dataset& data, const Query& q, std::size_t max_centers = 0);

/// Converts an index query into coordinates (Euclidean mode), identity otherwise.
Query materialize(const Dataset& data, const Query& q);

/// d^p with the convention 0^p = 0. Integral p uses repeated products,
/// other exponents go through exp(p ln d).
double pow_distance(double d, double p);

/// Distance from data point x to center j of q.
double distance_to_center(const Dataset& data, std::size_t x, const Query& q, std::size_t j);

/// Euclidean distance between data point x and an arbitrary coordinate tuple.
double distance_to_coords(const Dataset& data, std::size_t x, std::span<const double> c);

/// min_{q in Q} d(x, q).
double point_to_query_distance(const Dataset& data, std::size_t x, const Query& q);

/// Mean of d(x, Q)^p over all points. Accepts any finite p > 0.
double cost(const Dataset& data, const Query& q, double p);

/// (1/|subset|) * sum_{x in subset} d(x, center)^p for a data-point center.
double subset_cost(const Dataset& data, std::span<const std::size_t> subset,
                   std::size_t center, double p);
/// Same for a free Euclidean center.
double subset_cost(const Dataset& data, std::span<const std::size_t> subset,
                   std::span<const double> center, double p);

/// Nearest-center assignment. Ties go to the lowest center position.
struct Partition {
    std::vector<std::size_t> owner;
    std::vector<std::size_t> cluster_sizes;
    /// d(x, owner(x)) for every point.
    std::vector<double> distance;
};

Partition assign(const Dataset& data, const Query& centers);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace pcoreset
