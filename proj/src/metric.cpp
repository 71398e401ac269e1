#include "pcoreset/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pcoreset {

namespace {

void require_finite_nonneg_size(std::size_t n) {
    if (n == 0) {
        throw ValidationError("dataset must contain at least one point");
    }
}

}  // namespace

Dataset Dataset::euclidean(std::vector<double> coords, std::size_t dim) {
    if (dim == 0) {
        throw ValidationError("dimension must be positive");
    }
    if (coords.size() % dim != 0) {
        throw ValidationError("coordinate count is not a multiple of the dimension");
    }
    require_finite_nonneg_size(coords.size() / dim);
    for (double v : coords) {
        if (!std::isfinite(v)) {
            throw ValidationError("non-finite coordinate");
        }
    }
    Dataset out;
    out.mode_ = SpaceMode::euclidean;
    out.n_ = coords.size() / dim;
    out.dim_ = dim;
    out.coords_ = std::move(coords);
    return out;
}

Dataset Dataset::euclidean(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw ValidationError("dataset must contain at least one point");
    }
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (const auto& r : rows) {
        if (r.size() != dim) {
            throw ValidationError("ragged point rows");
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return euclidean(std::move(flat), dim);
}

Dataset Dataset::from_matrix(std::vector<double> matrix, std::size_t n, double symmetry_tol) {
    require_finite_nonneg_size(n);
    if (matrix.size() != n * n) {
        throw ValidationError("distance matrix must be n x n");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = matrix[i * n + j];
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream msg;
                msg << "negative or non-finite distance at (" << i << "," << j << ")";
                throw ValidationError(msg.str());
            }
        }
        if (matrix[i * n + i] != 0.0) {
            std::ostringstream msg;
            msg << "non-zero diagonal at " << i;
            throw ValidationError(msg.str());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = matrix[i * n + j];
            const double b = matrix[j * n + i];
            if (std::abs(a - b) > symmetry_tol * std::max(a, b)) {
                std::ostringstream msg;
                msg << "asymmetric distance at (" << i << "," << j << "): " << a << " vs " << b;
                throw ValidationError(msg.str());
            }
        }
    }
    if (n <= 1024) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dij = matrix[i * n + j];
                for (std::size_t l = 0; l < n; ++l) {
                    const double via = matrix[i * n + l] + matrix[l * n + j];
                    if (dij > via * (1.0 + 1e-12)) {
                        std::ostringstream msg;
                        msg << "triangle violation at (" << i << "," << j << ") via " << l << ": "
                            << dij << " > " << matrix[i * n + l] << "+" << matrix[l * n + j];
                        throw ValidationError(msg.str());
                    }
                }
            }
        }
    }
    Dataset out;
    out.mode_ = SpaceMode::metric;
    out.n_ = n;
    out.matrix_ = std::move(matrix);
    return out;
}

Dataset Dataset::from_oracle(std::size_t n, DistanceOracle oracle) {
    require_finite_nonneg_size(n);
    if (!oracle) {
        throw ValidationError("empty distance oracle");
    }
    Dataset out;
    out.mode_ = SpaceMode::metric;
    out.n_ = n;
    out.oracle_ = std::move(oracle);
    return out;
}

std::span<const double> Dataset::point(std::size_t i) const {
    if (mode_ != SpaceMode::euclidean) {
        throw ValidationError("metric datasets have no coordinates");
    }
    if (i >= n_) {
        throw ValidationError("point index out of range");
    }
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
}

double Dataset::distance(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) {
        throw ValidationError("point index out of range");
    }
    if (mode_ == SpaceMode::euclidean) {
        return distance_to_coords(*this, i, point(j));
    }
    if (!matrix_.empty()) {
        return matrix_[i * n_ + j];
    }
    return oracle_(i, j);
}

Query Query::at_indices(std::vector<std::size_t> indices) {
    Query q;
    q.indices_ = std::move(indices);
    return q;
}

Query Query::at_points(std::vector<double> coords, std::size_t dim) {
    if (dim == 0 || coords.size() % dim != 0) {
        throw ValidationError("query coordinates do not match the dimension");
    }
    Query q;
    q.coords_ = std::move(coords);
    q.dim_ = dim;
    return q;
}

Query Query::at_points(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        return Query{};
    }
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) {
            throw ValidationError("ragged query centers");
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return at_points(std::move(flat), rows.front().size());
}

std::size_t Query::size() const {
    if (!indices_.empty()) {
        return indices_.size();
    }
    return dim_ == 0 ? 0 : coords_.size() / dim_;
}

std::span<const double> Query::center_coords(std::size_t j) const {
    if (uses_indices() || j >= size()) {
        throw ValidationError("center_coords needs a coordinate query and a valid center");
    }
    return std::span<const double>(coords_).subspan(j * dim_, dim_);
}

void validate_query(const Dataset& data, const Query& q, std::size_t max_centers) {
    if (q.empty()) {
        throw ValidationError("query must have at least one center");
    }
    if (max_centers != 0 && q.size() > max_centers) {
        throw ValidationError("query has more than k centers");
    }
    if (q.uses_indices()) {
        for (std::size_t i : q.indices()) {
            if (i >= data.size()) {
                throw ValidationError("query center index out of range");
            }
        }
        return;
    }
    if (!data.is_euclidean()) {
        throw ValidationError("coordinate queries require a Euclidean dataset");
    }
    if (q.dim() != data.dim()) {
        throw ValidationError("query dimension does not match the dataset");
    }
}

Query materialize(const Dataset& data, const Query& q) {
    if (!q.uses_indices() || !data.is_euclidean()) {
        return q;
    }
    std::vector<double> flat;
    flat.reserve(q.size() * data.dim());
    for (std::size_t i : q.indices()) {
        auto row = data.point(i);
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Query::at_points(std::move(flat), data.dim());
}

double pow_distance(double d, double p) {
    if (d == 0.0) {
        return 0.0;
    }
    if (p == 1.0) {
        return d;
    }
    if (p == 2.0) {
        return d * d;
    }
    if (p == std::floor(p) && p <= 64.0) {
        double r = 1.0;
        for (int i = 0; i < static_cast<int>(p); ++i) {
            r *= d;
        }
        return r;
    }
    return std::exp(p * std::log(d));
}

double distance_to_coords(const Dataset& data, std::size_t x, std::span<const double> c) {
    auto row = data.point(x);
    if (c.size() != row.size()) {
        throw ValidationError("dimension mismatch");
    }
    double sq = 0.0;
    for (std::size_t t = 0; t < row.size(); ++t) {
        const double diff = row[t] - c[t];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

double distance_to_center(const Dataset& data, std::size_t x, const Query& q, std::size_t j) {
    if (q.uses_indices()) {
        return data.distance(x, q.indices()[j]);
    }
    return distance_to_coords(data, x, q.center_coords(j));
}

namespace {

double nearest_unchecked(const Dataset& data, std::size_t x, const Query& q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < q.size(); ++j) {
        best = std::min(best, distance_to_center(data, x, q, j));
    }
    return best;
}

void require_exponent(double p) {
    if (!std::isfinite(p) || p <= 0.0) {
        throw ValidationError("exponent p must be finite and positive");
    }
}

}  // namespace

double point_to_query_distance(const Dataset& data, std::size_t x, const Query& q) {
    if (x >= data.size()) {
        throw ValidationError("point index out of range");
    }
    validate_query(data, q);
    return nearest_unchecked(data, x, q);
}

double cost(const Dataset& data, const Query& q, double p) {
    require_exponent(p);
    validate_query(data, q);
    CompensatedSum total;
    for (std::size_t x = 0; x < data.size(); ++x) {
        total.add(pow_distance(nearest_unchecked(data, x, q), p));
    }
    return total.value() / static_cast<double>(data.size());
}

double subset_cost(const Dataset& data, std::span<const std::size_t> subset,
                   std::size_t center, double p) {
    require_exponent(p);
    if (subset.empty()) {
        throw ValidationError("subset must be non-empty");
    }
    CompensatedSum total;
    for (std::size_t x : subset) {
        total.add(pow_distance(data.distance(x, center), p));
    }
    return total.value() / static_cast<double>(subset.size());
}

double subset_cost(const Dataset& data, std::span<const std::size_t> subset,
                   std::span<const double> center, double p) {
    require_exponent(p);
    if (subset.empty()) {
        throw ValidationError("subset must be non-empty");
    }
    CompensatedSum total;
    for (std::size_t x : subset) {
        total.add(pow_distance(distance_to_coords(data, x, center), p));
    }
    return total.value() / static_cast<double>(subset.size());
}

Partition assign(const Dataset& data, const Query& centers) {
    validate_query(data, centers);
    Partition out;
    out.owner.resize(data.size());
    out.distance.resize(data.size());
    out.cluster_sizes.assign(centers.size(), 0);
    for (std::size_t x = 0; x < data.size(); ++x) {
        std::size_t best_j = 0;
        double best = distance_to_center(data, x, centers, 0);
        for (std::size_t j = 1; j < centers.size(); ++j) {
            const double dj = distance_to_center(data, x, centers, j);
            if (dj < best) {
                best = dj;
                best_j = j;
            }
        }
        out.owner[x] = best_j;
        out.distance[x] = best;
        ++out.cluster_sizes[best_j];
    }
    return out;
}

}  // namespace pcoreset
