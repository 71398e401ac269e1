#include "pcoreset/bench.hpp"

#include "pcoreset/coreset.hpp"
#include "pcoreset/io.hpp"
#include "pcoreset/oneshot.hpp"

namespace pcoreset {

std::vector<BenchRow> run_bench(const Dataset& data, const BenchConfig& cfg) {
    if (cfg.sample_sizes.empty() || cfg.powers.empty() || cfg.seeds == 0) {
        throw ValidationError("bench needs at least one sample size, power and seed");
    }
    for (double p : cfg.powers) {
        if (!(p >= 1.0 && p <= cfg.p_max)) {
            throw ValidationError("bench powers must lie in [1, p_max]");
        }
    }
    std::vector<BenchRow> rows;
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
        const std::uint64_t seed = derive_seed(cfg.seed, s);
        std::vector<QueryFamily> families;
        std::vector<std::vector<double>> costs;
        for (std::size_t pi = 0; pi < cfg.powers.size(); ++pi) {
            families.push_back(sample_queries(data, cfg.k, cfg.powers[pi], cfg.query_count,
                                              cfg.strategy, derive_seed(seed, 100 + pi)));
            costs.push_back(family_costs(data, families.back(), cfg.powers[pi]));
        }
        for (std::size_t m : cfg.sample_sizes) {
            const auto oneshot = build_oneshot(data, cfg.k, cfg.p_max, cfg.delta, m,
                                               derive_seed(seed, 1), cfg.spacing);
            const auto uniform = build_uniform(data, m, derive_seed(seed, 2));
            for (std::size_t pi = 0; pi < cfg.powers.size(); ++pi) {
                const double p = cfg.powers[pi];
                const auto fixed = build_fixed_p(data, cfg.k, p, cfg.delta, m,
                                                 derive_seed(seed, 3 + pi));
                auto add = [&](const char* method, const WeightedCoreset& c) {
                    const auto r = measure_error(data, c, families[pi], p, costs[pi]);
                    rows.push_back({method, p, m, seed, r.max_error, r.mean_error});
                };
                add("one-shot", oneshot);
                add("fixed-p", fixed);
                add("uniform", uniform);
            }
        }
    }
    return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
    std::string out = "method,p,m,seed,max_error,mean_error\n";
    for (const auto& r : rows) {
        out += r.method + "," + format_double(r.p) + "," + std::to_string(r.m) + "," +
               std::to_string(r.seed) + "," + format_double(r.max_error) + "," +
               format_double(r.mean_error) + "\n";
    }
    return out;
}

}  // namespace pcoreset
