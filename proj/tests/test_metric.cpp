#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pcoreset/metric.hpp"
#include "pcoreset/weighted.hpp"
#include "support.hpp"

using namespace pcoreset;
using namespace testing_support;

TEST_CASE("point_to_query_distance") {
    const auto line = Dataset::euclidean({0.0, 2.0}, 1);
    CHECK(point_to_query_distance(line, 1, Query::at_points({0.0}, 1)) == 2.0);
    CHECK(point_to_query_distance(line, 1, Query::at_indices({0})) == 2.0);

    Rng rng(11);
    const auto metric = random_metric(rng, 6);
    for (std::size_t x = 0; x < 6; ++x) {
        CHECK(point_to_query_distance(metric, x, Query::at_indices({x, (x + 1) % 6})) == 0.0);
    }

    SUBCASE("matches brute force over centers") {
        for (int trial = 0; trial < 50; ++trial) {
            const auto rows = random_rows(rng, 5, 3);
            const auto centers = random_rows(rng, 2, 3);
            const auto data = Dataset::euclidean(rows);
            const auto q = Query::at_points(centers);
            for (std::size_t x = 0; x < 5; ++x) {
                const double expect =
                    std::min(ref_euclid(rows[x], centers[0]), ref_euclid(rows[x], centers[1]));
                CHECK(rel_diff(point_to_query_distance(data, x, q), expect) < 1e-14);
            }
        }
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(point_to_query_distance(line, 2, Query::at_indices({0})), ValidationError);
        CHECK_THROWS_AS(point_to_query_distance(line, 0, Query::at_points({0.0, 1.0}, 2)),
                        ValidationError);
        CHECK_THROWS_AS(point_to_query_distance(line, 0, Query::at_indices({5})), ValidationError);
        CHECK_THROWS_AS(point_to_query_distance(line, 0, Query{}), ValidationError);
    }
}

TEST_CASE("cost") {
    const auto line = Dataset::euclidean({0.0, 2.0}, 1);
    CHECK(cost(line, Query::at_points({0.0}, 1), 2.0) == 2.0);
    CHECK(cost(line, Query::at_indices({0, 1}), 2.0) == 0.0);

    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rows = random_rows(rng, 8, 2);
        const auto centers = random_rows(rng, 3, 2);
        const double got = cost(Dataset::euclidean(rows), Query::at_points(centers), 1.7);
        CHECK(rel_diff(got, ref_cost(rows, centers, 1.7)) < 1e-13);
    }

    SUBCASE("non-integer exponents use the 0^p = 0 convention") {
        CHECK(pow_distance(0.0, 1.5) == 0.0);
        CHECK(pow_distance(2.0, 3.0) == 8.0);
        CHECK(rel_diff(pow_distance(2.0, 1.5), std::pow(2.0, 1.5)) < 1e-15);
    }

    SUBCASE("rejects bad exponents") {
        CHECK_THROWS_AS(cost(line, Query::at_indices({0}), 0.0), ValidationError);
        CHECK_THROWS_AS(cost(line, Query::at_indices({0}), NAN), ValidationError);
    }
}

TEST_CASE("subset_cost") {
    const auto line = Dataset::euclidean({0.0, 2.0, 5.0}, 1);
    const std::vector<std::size_t> only_center{0};
    CHECK(subset_cost(line, only_center, std::size_t{0}, 2.0) == 0.0);
    const std::vector<std::size_t> pair{0, 1};
    CHECK(subset_cost(line, pair, std::size_t{0}, 1.0) == 1.0);
    const std::vector<double> origin{0.0};
    CHECK(subset_cost(line, pair, std::span<const double>(origin), 1.0) == 1.0);
    CHECK_THROWS_AS(subset_cost(line, std::vector<std::size_t>{}, std::size_t{0}, 1.0),
                    ValidationError);

    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rows = random_rows(rng, 10, 3);
        const auto data = Dataset::euclidean(rows);
        const std::vector<std::size_t> subset{1, 3, 4, 9};
        std::vector<std::vector<double>> members;
        for (auto i : subset) {
            members.push_back(rows[i]);
        }
        CHECK(rel_diff(subset_cost(data, subset, std::size_t{2}, 2.5),
                       ref_cost(members, {rows[2]}, 2.5)) < 1e-13);
    }
}

TEST_CASE("weighted_cost") {
    Rng rng(3);
    SUBCASE("uniform weights reproduce the full cost") {
        // n a power of two makes the 1/n scaling exact, so equality is bitwise.
        const auto rows = random_rows(rng, 16, 2);
        const auto data = Dataset::euclidean(rows);
        const auto id = identity_coreset(data);
        const auto q = Query::at_points(random_rows(rng, 3, 2));
        for (double p : {1.0, 2.0, 3.0}) {
            CHECK(weighted_cost(id, q, p) == cost(data, q, p));
            CHECK(weighted_cost(data, id, q, p) == cost(data, q, p));
        }
        const auto odd = Dataset::euclidean(random_rows(rng, 37, 2));
        CHECK(rel_diff(weighted_cost(identity_coreset(odd), q, 1.3), cost(odd, q, 1.3)) < 1e-13);
    }

    SUBCASE("single point") {
        WeightedCoreset c;
        c.entries.push_back(CoresetEntry{0, 0.5, 1.0, {3.0}});
        CHECK(weighted_cost(c, Query::at_points({0.0}, 1), 2.0) == 4.5);
    }

    SUBCASE("random weighted set") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto rows = random_rows(rng, 12, 3);
            const auto centers = random_rows(rng, 2, 3);
            WeightedCoreset c;
            long double expect = 0;
            std::uniform_real_distribution<double> w(0.01, 2.0);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const double wi = w(rng);
                c.entries.push_back(CoresetEntry{i, wi, 1.0, rows[i]});
                const double d = std::min(ref_euclid(rows[i], centers[0]),
                                          ref_euclid(rows[i], centers[1]));
                expect += wi * std::pow(static_cast<long double>(d), 2.2L);
            }
            CHECK(rel_diff(weighted_cost(c, Query::at_points(centers), 2.2),
                           static_cast<double>(expect)) < 1e-13);
        }
    }

    SUBCASE("dimension mismatch") {
        WeightedCoreset c;
        c.entries.push_back(CoresetEntry{0, 1.0, 1.0, {1.0, 2.0}});
        CHECK_THROWS_AS(weighted_cost(c, Query::at_points({0.0}, 1), 2.0), ValidationError);
    }

    SUBCASE("compaction preserves cost") {
        const auto rows = random_rows(rng, 6, 2);
        const auto data = Dataset::euclidean(rows);
        WeightedCoreset c;
        for (std::size_t i : {0, 2, 2, 5, 0, 2}) {
            c.entries.push_back(CoresetEntry{i, 0.1 * static_cast<double>(i + 1), 0.1, rows[i]});
        }
        const auto merged = compact(c);
        CHECK(merged.m() == 3);
        const auto q = Query::at_points(random_rows(rng, 2, 2));
        CHECK(rel_diff(weighted_cost(merged, q, 2.0), weighted_cost(c, q, 2.0)) < 1e-14);
    }
}

TEST_CASE("assign") {
    const auto line = Dataset::euclidean({0.0, 1.0, 2.0}, 1);
    const auto single = assign(line, Query::at_indices({2}));
    CHECK(single.owner == std::vector<std::size_t>{0, 0, 0});
    CHECK(single.cluster_sizes == std::vector<std::size_t>{3});

    // Point 1 is equidistant from both centers.
    const auto tied = assign(line, Query::at_indices({2, 0}));
    CHECK(tied.owner[1] == 0);
    CHECK(tied.owner == assign(line, Query::at_indices({2, 0})).owner);

    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rows = random_rows(rng, 20, 2);
        const auto centers = random_rows(rng, 4, 2);
        const auto part = assign(Dataset::euclidean(rows), Query::at_points(centers));
        CHECK(std::accumulate(part.cluster_sizes.begin(), part.cluster_sizes.end(),
                              std::size_t{0}) == 20);
        for (std::size_t x = 0; x < rows.size(); ++x) {
            for (std::size_t j = 0; j < centers.size(); ++j) {
                const double dj = ref_euclid(rows[x], centers[j]);
                const double own = ref_euclid(rows[x], centers[part.owner[x]]);
                CHECK(own <= dj);
                if (j < part.owner[x]) {
                    CHECK(dj > own);
                }
            }
        }
    }
}

TEST_CASE("cost properties") {
    Rng rng(23);
    std::uniform_real_distribution<double> pdist(1.0, 4.0);
    std::uniform_real_distribution<double> edist(1.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto rows = random_rows(rng, 15, 2);
        const auto data = Dataset::euclidean(rows);
        const auto extra = random_rows(rng, 3, 2);
        const double p = pdist(rng);

        // Adding centers never increases cost.
        const auto small = Query::at_points({extra[0]});
        const auto large = Query::at_points(extra);
        CHECK(cost(data, large, p) <= cost(data, small, p));

        // Permutation invariance.
        std::shuffle(rows.begin(), rows.end(), rng);
        CHECK(rel_diff(cost(Dataset::euclidean(rows), large, p), cost(data, large, p)) < 1e-13);

        // Power-mean inequality.
        const double e = edist(rng);
        const double lhs = cost(data, large, p * e);
        const double rhs = std::pow(cost(data, large, p), e);
        CHECK(lhs >= rhs * (1.0 - 1e-9));
    }
}

TEST_CASE("distance matrix validation") {
    CHECK_NOTHROW(Dataset::from_matrix({0, 1, 1, 0}, 2));
    CHECK_THROWS_WITH_AS(Dataset::from_matrix({0, 1, 2, 0}, 2), doctest::Contains("asymmetric"),
                         ValidationError);
    CHECK_THROWS_AS(Dataset::from_matrix({0, -1, -1, 0}, 2), ValidationError);
    CHECK_THROWS_AS(Dataset::from_matrix({1, 1, 1, 0}, 2), ValidationError);
    CHECK_THROWS_WITH_AS(Dataset::from_matrix({0, 1, 3, 1, 0, 1, 3, 1, 0}, 3),
                         doctest::Contains("triangle violation at (0,2) via 1: 3 > 1+1"),
                         ValidationError);

    SUBCASE("random Euclidean matrices are metrics") {
        Rng rng(4);
        for (int trial = 0; trial < 10; ++trial) {
            const auto rows = random_rows(rng, 40, 3);
            const auto data = Dataset::from_matrix(euclidean_matrix(rows), 40);
            for (std::size_t i = 0; i < 40; ++i) {
                CHECK(data.distance(i, i) == 0.0);
                for (std::size_t j = 0; j < 40; ++j) {
                    CHECK(data.distance(i, j) == data.distance(j, i));
                }
            }
        }
    }

    SUBCASE("oracle datasets are not validated") {
        const auto data = Dataset::from_oracle(3, [](std::size_t i, std::size_t j) {
            return i == j ? 0.0 : 5.0;
        });
        CHECK(data.distance(0, 2) == 5.0);
        CHECK(cost(data, Query::at_indices({0}), 1.0) == doctest::Approx(10.0 / 3.0));
    }
}

TEST_CASE("dataset construction errors") {
    CHECK_THROWS_AS(Dataset::euclidean(std::vector<double>{}, 2), ValidationError);
    CHECK_THROWS_AS(Dataset::euclidean({1.0, 2.0, 3.0}, 2), ValidationError);
    CHECK_THROWS_AS(Dataset::euclidean({1.0, NAN}, 2), ValidationError);
    CHECK_THROWS_AS(Dataset::euclidean({{1.0, 2.0}, {3.0}}), ValidationError);
    const auto data = Dataset::euclidean({1.0, 2.0}, 1);
    CHECK_THROWS_AS(validate_query(data, Query::at_indices({0, 1}), 1), ValidationError);
}
