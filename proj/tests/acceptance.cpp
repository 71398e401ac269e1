// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcoreset/cli.hpp"
#include "pcoreset/coreset.hpp"
#include "pcoreset/io.hpp"
#include "pcoreset/oneshot.hpp"
#include "pcoreset/oracle.hpp"
#include "pcoreset/synth.hpp"
#include "support.hpp"

using namespace pcoreset;
using testing_support::random_metric;
using testing_support::random_rows;

namespace {

// Tolerances and thresholds.
constexpr double kIdentityRelTol = 1e-9;
constexpr double kDominanceFraction = 0.9;
constexpr double kUnbiasedSigmas = 3.0;
constexpr double kTrendErrorCap = 0.05;
constexpr double kOneshotErrorCap = 0.1;
constexpr int kOneshotSeedsRequired = 8;
constexpr double kInterpolationSlack = 1e-9;
constexpr double kEndpointRelTol = 1e-12;
constexpr double kHoelderRelTol = 1e-9;
constexpr double kBaselineWinRate = 0.8;

// Runtime limits in seconds.
constexpr double kLimit1 = 10, kLimit2 = 30, kLimit4 = 60, kLimit5 = 300, kLimit6 = 600,
                 kLimit7 = 60, kLimit8 = 30, kLimit9 = 30, kLimit10 = 5, kLimit11 = 60,
                 kLimit12 = 30;

// Heavy-tailed fixture shared by criteria 5, 6 and 11.
constexpr std::size_t kFixtureN = 100000;
constexpr std::uint64_t kFixtureSeed = 2024;
constexpr std::size_t kFixtureK = 5;
constexpr std::uint64_t kFamilySeed = 5;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Runs in criteria 1 and 2 that violated the mean ceiling, for criterion 3.
int g_ceiling_violations = 0;
int g_ceiling_checked = 0;

void note_ceiling(const SensitivityProfile& prof, std::size_t k, double p) {
    ++g_ceiling_checked;
    if (!(prof.mean_s <= mean_sensitivity_ceiling(k, p))) ++g_ceiling_violations;
}

Outcome criterion1() {
    const std::size_t ns[] = {50, 500};
    const std::size_t ks[] = {2, 5};
    const double ps[] = {1.0, 2.0, 3.0};
    int checked = 0, matched = 0;
    double worst = 0;
    for (int run = 0; run < 500; ++run) {
        const std::size_t n = ns[run % 2];
        const std::size_t k = ks[(run / 2) % 2];
        const double p = ps[(run / 4) % 3];
        Rng gen(derive_seed(1000, static_cast<std::uint64_t>(run)));
        const auto data = Dataset::euclidean(random_rows(gen, n, 2));
        const auto prof = sensitivity_bound(data, k, p, 0.1, static_cast<std::uint64_t>(run));
        note_ceiling(prof, k, p);
        std::size_t nonempty = 0;
        for (auto c : prof.partition.cluster_sizes) nonempty += c > 0 ? 1 : 0;
        if (nonempty != k || !(prof.solution.cost_at_p > 0)) continue;
        ++checked;
        const double alpha = std::pow(2.0, p + 3) * (std::log2(static_cast<double>(k)) + 2);
        const double expected = alpha * std::pow(2.0, p - 1) + alpha * std::pow(2.0, 2 * p - 2) +
                                std::pow(4.0, p - 1) * static_cast<double>(nonempty);
        const double rel = std::abs(prof.mean_s - expected) / expected;
        worst = std::max(worst, rel);
        if (rel <= kIdentityRelTol) ++matched;
    }
    return {checked > 0 && matched == checked,
            std::to_string(matched) + "/" + std::to_string(checked) +
                " qualifying runs match, worst rel " + fmt("%.2e", worst)};
}

Outcome criterion2() {
    int dominated = 0;
    constexpr int kRuns = 200;
    for (int run = 0; run < kRuns; ++run) {
        Rng gen(derive_seed(2000, static_cast<std::uint64_t>(run)));
        const std::size_t n = 5 + static_cast<std::size_t>(run % 8);
        const std::size_t k = 1 + static_cast<std::size_t>(run % 2);
        const double p = (run / 2) % 2 == 0 ? 1.0 : 2.0;
        const auto data = random_metric(gen, n);
        const auto sigma = exact_sensitivity(data, k, p);
        const auto prof = sensitivity_bound(data, k, p, 0.1, static_cast<std::uint64_t>(run));
        note_ceiling(prof, k, p);
        bool ok = true;
        for (std::size_t x = 0; x < n; ++x) ok = ok && prof.s[x] >= sigma[x];
        if (ok) ++dominated;
    }
    const double frac = static_cast<double>(dominated) / kRuns;
    return {frac >= kDominanceFraction, "dominance fraction " + fmt("%.3f", frac)};
}

Outcome criterion3() {
    return {g_ceiling_checked > 0 && g_ceiling_violations == 0,
            std::to_string(g_ceiling_violations) + " violations in " +
                std::to_string(g_ceiling_checked) + " runs"};
}

Outcome criterion4() {
    SynthSpec spec;
    spec.n = 2000;
    spec.dim = 2;
    spec.components = {{0.6, {0.0, 0.0}, 1.0}, {0.3, {6.0, 0.0}, 1.5}, {0.1, {0.0, 10.0}, 0.5}};
    spec.seed = 4;
    const auto data = generate(spec);
    const auto q = Query::at_points({{1.0, 1.0}, {5.0, -1.0}});
    const double full = cost(data, q, 2.0);
    constexpr int kCoresets = 10000;
    long double sum = 0, sum_sq = 0;
    for (int t = 0; t < kCoresets; ++t) {
        const auto c = build_fixed_p(data, 2, 2.0, 0.1, 10, derive_seed(4000, t));
        const double v = weighted_cost(c, q, 2.0);
        sum += v;
        sum_sq += static_cast<long double>(v) * v;
    }
    const double mean = static_cast<double>(sum / kCoresets);
    const double var = static_cast<double>(sum_sq / kCoresets - (sum / kCoresets) * (sum / kCoresets));
    const double se = std::sqrt(var / kCoresets);
    const double z = std::abs(mean - full) / se;
    return {z <= kUnbiasedSigmas, "mean " + fmt("%.6g", mean) + " vs cost " + fmt("%.6g", full) +
                                      ", " + fmt("%.2f", z) + " standard errors"};
}

struct Fixture {
    Dataset data;
    QueryFamily family;
};

const Fixture& fixture() {
    static const Fixture f = [] {
        auto data = generate(heavy_tailed_mixture(kFixtureN, kFixtureSeed));
        auto family =
            sample_queries(data, kFixtureK, 2.0, 100, QueryStrategy::dp_sampled, kFamilySeed);
        return Fixture{std::move(data), std::move(family)};
    }();
    return f;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Outcome criterion5() {
    const auto& fx = fixture();
    const auto full = family_costs(fx.data, fx.family, 2.0);
    std::vector<double> small, large;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const std::uint64_t seed = derive_seed(5000, s);
        small.push_back(measure_error(fx.data, build_fixed_p(fx.data, kFixtureK, 2.0, 0.1, 100, seed),
                                      fx.family, 2.0, full)
                            .max_error);
        large.push_back(
            measure_error(fx.data, build_fixed_p(fx.data, kFixtureK, 2.0, 0.1, 10000, seed),
                          fx.family, 2.0, full)
                .max_error);
    }
    const double ms = median(small), ml = median(large);
    return {ml < ms && ml <= kTrendErrorCap,
            "median max error m=1e2 " + fmt("%.4f", ms) + ", m=1e4 " + fmt("%.4f", ml)};
}

Outcome criterion6() {
    const auto& fx = fixture();
    const std::vector<double> ps{1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<std::vector<double>> full;
    for (double p : ps) full.push_back(family_costs(fx.data, fx.family, p));
    int good = 0;
    double worst = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto c = build_oneshot(fx.data, kFixtureK, 3.0, 0.1, 20000, derive_seed(6000, s));
        double seed_worst = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            seed_worst = std::max(seed_worst,
                                  measure_error(fx.data, c, fx.family, ps[i], full[i]).max_error);
        }
        worst = std::max(worst, seed_worst);
        if (seed_worst <= kOneshotErrorCap) ++good;
    }
    return {good >= kOneshotSeedsRequired,
            std::to_string(good) + "/10 seeds within cap, worst " + fmt("%.4f", worst)};
}

Outcome criterion7() {
    std::vector<double> probes;
    for (int i = 0; i <= 16; ++i) probes.push_back(1.0 + i / 8.0);
    int dominated = 0;
    constexpr int kRuns = 200;
    for (int run = 0; run < kRuns; ++run) {
        Rng gen(derive_seed(7000, static_cast<std::uint64_t>(run)));
        const std::size_t n = 5 + static_cast<std::size_t>(run % 8);
        const std::size_t k = 1 + static_cast<std::size_t>(run % 2);
        const auto data = random_metric(gen, n);
        const auto prof =
            oneshot_sensitivity(data, k, 3.0, std::nullopt, 0.1, static_cast<std::uint64_t>(run));
        bool ok = true;
        for (double p : probes) {
            const auto sigma = exact_sensitivity(data, k, p);
            for (std::size_t x = 0; x < n; ++x) ok = ok && prof.combined.s[x] >= sigma[x];
        }
        if (ok) ++dominated;
    }
    const double frac = static_cast<double>(dominated) / kRuns;
    return {frac >= kDominanceFraction, "dominance fraction " + fmt("%.3f", frac)};
}

Outcome criterion8() {
    Rng gen(8000);
    std::uniform_real_distribution<double> pd(1.0, 4.0), sd(1e-6, 1.0), td(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> nd(2, 50);
    int violations = 0, endpoint_failures = 0;
    double worst = 0;
    for (int t = 0; t < 10000; ++t) {
        const std::size_t n = nd(gen);
        const auto data = Dataset::euclidean(random_rows(gen, n, 2));
        const auto q = Query::at_points(random_rows(gen, 1 + t % 3, 2));
        const std::size_t x = std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
        const double p = pd(gen), spacing = sd(gen);
        const auto m = interpolation_bound_check(data, q, p, spacing, td(gen), x);
        worst = std::min(worst, m.margin() / m.rhs);
        if (m.margin() < -kInterpolationSlack * m.rhs) ++violations;
        if (t % 10 == 0) {
            const auto m0 = interpolation_bound_check(data, q, p, spacing, 0.0, x);
            const auto m1 = interpolation_bound_check(data, q, p, spacing, 1.0, x);
            const double expected = (std::exp(spacing * std::log(static_cast<double>(n))) - 1) * m1.lhs;
            const double scale = std::max(std::abs(expected), m1.rhs);
            if (m0.margin() != 0.0) ++endpoint_failures;
            if (std::abs(m1.margin() - expected) > kEndpointRelTol * scale) ++endpoint_failures;
        }
    }
    return {violations == 0 && endpoint_failures == 0,
            std::to_string(violations) + " violations, " + std::to_string(endpoint_failures) +
                " endpoint mismatches, most negative margin/rhs " + fmt("%.2e", worst)};
}

Outcome criterion9() {
    Rng gen(9000);
    std::uniform_real_distribution<double> pd(1.0, 4.0), ed(1.0, 3.0);
    std::uniform_int_distribution<std::size_t> nd(1, 40);
    int violations = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto data = Dataset::euclidean(random_rows(gen, nd(gen), 2));
        const auto q = Query::at_points(random_rows(gen, 1 + t % 3, 2));
        const double p = pd(gen), e = ed(gen);
        const double rhs = std::pow(cost(data, q, p), e);
        if (hoelder_check(data, q, p, e) < -kHoelderRelTol * rhs) ++violations;
    }
    return {violations == 0, std::to_string(violations) + " violations in 10000 probes"};
}

Outcome criterion10() {
    int failures = 0;
    double tightest = INFINITY;
    for (std::size_t n : {10000u, 1000000u}) {
        for (double p : {1.0, 2.0}) {
            for (double dl : {0.5, 1.0}) {
                const auto inst = tightness_instance(n, p, dl);
                const auto sides = tightness_sides(inst, p, dl);
                tightest = std::min(tightest, sides.lhs / sides.rhs);
                if (!(sides.lhs >= sides.rhs)) ++failures;
            }
        }
    }
    return {failures == 0, std::to_string(failures) + " of 8 configurations fail, smallest lhs/rhs " +
                               fmt("%.3g", tightest)};
}

Outcome criterion11() {
    const auto& fx = fixture();
    BaselineConfig cfg;
    cfg.k = kFixtureK;
    cfg.p = 2.0;
    cfg.m = 200;
    cfg.trials = 50;
    cfg.query_count = 50;
    cfg.strategy = QueryStrategy::dp_sampled;
    const auto cmp = compare_uniform_baseline(fx.data, cfg, 11000);
    return {cmp.sensitivity_win_rate >= kBaselineWinRate,
            "sensitivity win rate " + fmt("%.2f", cmp.sensitivity_win_rate)};
}

Outcome criterion12() {
    namespace fs = std::filesystem;
    const fs::path data_dir = PCORESET_TEST_DATA_DIR;
    const fs::path golden = PCORESET_GOLDEN_DIR;
    const fs::path tmp = fs::temp_directory_path() / "pcoreset_acceptance_golden";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    const std::string pts = (data_dir / "points.csv").string();
    const auto out = [&](const char* name) { return (tmp / name).string(); };

    const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
        {"synth.csv", {"synth", "--spec", (data_dir / "spec.doc").string(), "--out", out("synth.csv")}},
        {"build.doc",
         {"build", "--k", "3", "--p", "2", "--m", "40", "--delta", "0.1", "--seed", "7", "--in",
          pts, "--out", out("build.doc")}},
        {"oneshot.doc",
         {"build-oneshot", "--k", "3", "--p-max", "3", "--m", "40", "--delta", "0.1", "--seed",
          "7", "--in", pts, "--out", out("oneshot.doc")}},
        {"eval.doc",
         {"eval", "--in", pts, "--coreset", (golden / "build.doc").string(), "--queries", "dp:20",
          "--p", "2", "--out", out("eval.doc")}},
        {"oracle.doc",
         {"oracle", "--k", "1", "--p", "1", "--in", (data_dir / "triple.csv").string(), "--out",
          out("oracle.doc")}},
    };
    std::vector<std::string> mismatched;
    for (const auto& [name, args] : runs) {
        std::ostringstream o, e;
        const int code = cli_main(args, o, e);
        bool same = false;
        if (code == 0) {
            try {
                same = read_file(out(name.c_str())) == read_file((golden / name).string());
            } catch (const IoError&) {
            }
        }
        if (!same) mismatched.push_back(name);
    }
    fs::remove_all(tmp);
    std::string detail = mismatched.empty() ? "all 5 outputs byte-identical" : "mismatch:";
    for (const auto& m : mismatched) detail += " " + m;
    return {mismatched.empty(), detail};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "sensitivity sum identity", kLimit1, criterion1},
        {2, "sensitivity dominance vs exact oracle", kLimit2, criterion2},
        {3, "mean sensitivity ceiling", 0, criterion3},
        {4, "estimator unbiasedness", kLimit4, criterion4},
        {5, "fixed-p quality trend", kLimit5, criterion5},
        {6, "one-shot simultaneity", kLimit6, criterion6},
        {7, "one-shot dominance across p", kLimit7, criterion7},
        {8, "interpolation inequality", kLimit8, criterion8},
        {9, "Hoelder step", kLimit9, criterion9},
        {10, "tightness construction", kLimit10, criterion10},
        {11, "uniform baseline contrast", kLimit11, criterion11},
        {12, "CLI golden determinism", kLimit12, criterion12},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    // Criterion 3 reads what 1 and 2 recorded.
    if (wanted.count(3)) {
        wanted.insert(1);
        wanted.insert(2);
    }

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        std::printf("[%s] criterion %2d: %s (%s; %.1fs", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs);
        if (c.limit_s > 0) std::printf(" of %.0fs", c.limit_s);
        std::printf(")\n");
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
