#include "pcoreset/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>

#include "pcoreset/bench.hpp"
#include "pcoreset/coreset.hpp"
#include "pcoreset/io.hpp"
#include "pcoreset/oneshot.hpp"
#include "pcoreset/oracle.hpp"
#include "pcoreset/sensitivity.hpp"
#include "pcoreset/synth.hpp"

namespace pcoreset {

namespace {

struct InputOptions {
    std::string path;
    bool metric = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--in", path, "Point CSV, or distance matrix CSV with --metric")
            ->required();
        cmd->add_flag("--metric", metric, "Read --in as a square distance matrix");
    }

    Dataset load() const { return metric ? load_distance_matrix(path) : load_points_csv(path); }
};

std::optional<double> parse_spacing(const std::string& s) {
    if (s == "auto") {
        return std::nullopt;
    }
    return parse_number(s);
}

struct QuerySpec {
    QueryStrategy strategy = QueryStrategy::dp_sampled;
    std::size_t count = 100;
};

QuerySpec parse_query_spec(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw ValidationError("--queries expects <strategy>:<count>, e.g. dp:100");
    }
    QuerySpec q;
    q.strategy = query_strategy_from_string(s.substr(0, colon));
    q.count = static_cast<std::size_t>(parse_u64(s.substr(colon + 1)));
    if (q.count == 0) {
        throw ValidationError("query count must be positive");
    }
    return q;
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << contents;
    } else {
        write_file(path, contents);
    }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coresets for k-clustering with power p, fixed or one-shot over [1, p_max]",
                 "pcoreset"};
    app.require_subcommand(1);

    // build ------------------------------------------------------------------
    InputOptions build_in;
    std::size_t build_k = 0, build_m = 0;
    double build_p = 0.0, build_delta = 0.1;
    std::uint64_t build_seed = 0;
    std::string build_out;
    auto* build = app.add_subcommand("build", "Fixed-p coreset");
    build_in.add_to(build);
    build->add_option("--k", build_k, "Number of centers")->required()->check(CLI::PositiveNumber);
    build->add_option("--p", build_p, "Power p >= 1")->required();
    build->add_option("--m", build_m, "Sample count")->required()->check(CLI::PositiveNumber);
    build->add_option("--delta", build_delta, "Failure probability in (0,1)");
    build->add_option("--seed", build_seed, "RNG seed")->required();
    build->add_option("--out", build_out, "Output coreset document")->required();

    // build-oneshot --------------------------------------------------------------
    InputOptions os_in;
    std::size_t os_k = 0, os_m = 0;
    double os_pmax = 0.0, os_delta = 0.1;
    std::string os_spacing = "auto";
    std::uint64_t os_seed = 0;
    std::string os_out;
    auto* oneshot = app.add_subcommand("build-oneshot", "One-shot coreset for all p in [1, p_max]");
    os_in.add_to(oneshot);
    oneshot->add_option("--k", os_k)->required()->check(CLI::PositiveNumber);
    oneshot->add_option("--p-max", os_pmax, "Largest power covered")->required();
    oneshot->add_option("--m", os_m)->required()->check(CLI::PositiveNumber);
    oneshot->add_option("--delta", os_delta);
    oneshot->add_option("--spacing", os_spacing, "Grid spacing, or 'auto' for 1/ln n");
    oneshot->add_option("--seed", os_seed)->required();
    oneshot->add_option("--out", os_out)->required();

    // eval -------------------------------------------------------------------
    InputOptions eval_in;
    std::string eval_coreset, eval_queries = "dp:100", eval_out;
    double eval_p = 0.0;
    std::optional<std::uint64_t> eval_seed;
    auto* eval = app.add_subcommand("eval", "Relative error of a coreset over a query family");
    eval_in.add_to(eval);
    eval->add_option("--coreset", eval_coreset)->required();
    eval->add_option("--queries", eval_queries, "<uniform|dp|perturbed>:<count>");
    eval->add_option("--p", eval_p)->required();
    eval->add_option("--seed", eval_seed, "Query seed (defaults to the coreset's seed)");
    eval->add_option("--out", eval_out, "Report document (stdout if omitted)");

    // oracle -----------------------------------------------------------------
    InputOptions oracle_in;
    std::size_t oracle_k = 0;
    double oracle_p = 0.0, oracle_delta = 0.1;
    std::uint64_t oracle_seed = 0;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "Exact sensitivities and dominance check");
    oracle_in.add_to(oracle);
    oracle->add_option("--k", oracle_k)->required()->check(CLI::PositiveNumber);
    oracle->add_option("--p", oracle_p)->required();
    oracle->add_option("--delta", oracle_delta);
    oracle->add_option("--seed", oracle_seed, "Seed for the sensitivity bound (default 0)");
    oracle->add_option("--out", oracle_out);

    // synth ------------------------------------------------------------------
    std::string synth_spec, synth_out;
    auto* synth = app.add_subcommand("synth", "Generate a point CSV from a synth document");
    synth->add_option("--spec", synth_spec)->required();
    synth->add_option("--out", synth_out)->required();

    // bench ------------------------------------------------------------------
    InputOptions bench_in;
    BenchConfig bench_cfg;
    std::string bench_spacing = "auto", bench_queries = "dp:50", bench_out;
    auto* bench = app.add_subcommand("bench", "Paired one-shot / fixed-p / uniform error table");
    bench_in.add_to(bench);
    bench->add_option("--k", bench_cfg.k)->required()->check(CLI::PositiveNumber);
    bench->add_option("--m", bench_cfg.sample_sizes, "Sample sizes")->delimiter(',');
    bench->add_option("--p-max", bench_cfg.p_max);
    bench->add_option("--p", bench_cfg.powers, "Powers to evaluate")->delimiter(',');
    bench->add_option("--seeds", bench_cfg.seeds, "Number of seeds");
    bench->add_option("--seed", bench_cfg.seed, "Master seed")->required();
    bench->add_option("--delta", bench_cfg.delta);
    bench->add_option("--spacing", bench_spacing);
    bench->add_option("--queries", bench_queries);
    bench->add_option("--out", bench_out);

    // advise-m ---------------------------------------------------------------
    double adv_n = 0.0, adv_p = 0.0, adv_eps = 0.1, adv_delta = 0.1;
    std::size_t adv_k = 0, adv_d = 1;
    std::optional<std::size_t> adv_m;
    std::string adv_space = "metric";
    auto* advise = app.add_subcommand("advise-m", "Worst-case sample size next to a chosen m");
    advise->add_option("--n", adv_n)->required();
    advise->add_option("--k", adv_k)->required()->check(CLI::PositiveNumber);
    advise->add_option("--p", adv_p)->required();
    advise->add_option("--eps", adv_eps);
    advise->add_option("--delta", adv_delta);
    advise->add_option("--space", adv_space)->check(CLI::IsMember({"metric", "euclidean"}));
    advise->add_option("--d", adv_d);
    advise->add_option("--m", adv_m, "The sample count you intend to use");

    std::vector<const char*> argv{"pcoreset"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (*build) {
            const auto data = build_in.load();
            const auto c = build_fixed_p(data, build_k, build_p, build_delta, build_m, build_seed);
            save_coreset(c, build_out);
        } else if (*oneshot) {
            const auto data = os_in.load();
            const auto c = build_oneshot(data, os_k, os_pmax, os_delta, os_m, os_seed,
                                         parse_spacing(os_spacing));
            save_coreset(c, os_out);
        } else if (*eval) {
            const auto data = eval_in.load();
            const auto c = load_coreset(eval_coreset);
            if (c.provenance.n != data.size()) {
                throw ValidationError("coreset was built from a dataset of a different size");
            }
            const auto spec = parse_query_spec(eval_queries);
            const auto family = sample_queries(data, c.provenance.k, eval_p, spec.count,
                                               spec.strategy, eval_seed.value_or(c.provenance.seed));
            emit(eval_out, write_report(measure_error(data, c, family, eval_p)), out);
        } else if (*oracle) {
            const auto data = oracle_in.load();
            const auto sigma = exact_sensitivity(data, oracle_k, oracle_p);
            const auto bound = sensitivity_bound(data, oracle_k, oracle_p, oracle_delta, oracle_seed);
            bool dominated = true;
            Document doc;
            doc.kind = "oracle";
            doc.set("k", std::to_string(oracle_k));
            doc.set("p", oracle_p);
            doc.set("delta", oracle_delta);
            doc.set("seed", std::to_string(oracle_seed));
            doc.set("mean_s", bound.mean_s);
            for (std::size_t x = 0; x < sigma.size(); ++x) {
                const bool ok = bound.s[x] >= sigma[x];
                dominated = dominated && ok;
                doc.rows.push_back({std::to_string(x), format_double(sigma[x]),
                                    format_double(bound.s[x]), ok ? "1" : "0"});
            }
            doc.set("verdict", dominated ? "dominated" : "violated");
            doc.set("columns", std::vector<std::string>{"index", "sigma", "bound", "dominated"});
            emit(oracle_out, write_document(doc), out);
        } else if (*synth) {
            const auto spec = read_synth_spec(read_file(synth_spec));
            save_points_csv(generate(spec), synth_out);
        } else if (*bench) {
            const auto data = bench_in.load();
            bench_cfg.spacing = parse_spacing(bench_spacing);
            const auto qs = parse_query_spec(bench_queries);
            bench_cfg.strategy = qs.strategy;
            bench_cfg.query_count = qs.count;
            emit(bench_out, bench_table(run_bench(data, bench_cfg)), out);
        } else if (*advise) {
            const auto space =
                adv_space == "metric" ? SampleSizeSpace::metric : SampleSizeSpace::euclidean;
            const auto m = theoretical_sample_size(adv_n, adv_k, adv_p, adv_eps, adv_delta, space,
                                                   adv_d);
            out << "space " << adv_space << "\n";
            out << "theoretical_m " << m << "\n";
            if (adv_m) {
                out << "chosen_m " << *adv_m << "\n";
                out << "ratio " << format_double(static_cast<double>(*adv_m) /
                                                 static_cast<double>(m))
                    << "\n";
            }
        }
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace pcoreset
