#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "rdg/analysis.hpp"
#include "rdg/experiment.hpp"

#include "config.hpp"
#include "files.hpp"

namespace rdg::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Json base_manifest(const char* command, std::uint64_t seed, const Json& resolved_config) {
    Json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["command"] = command;
    manifest["seed"] = seed;
    manifest["config"] = resolved_config;
    return manifest;
}

void write_json(const std::string& path, const Json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

int config_failure(const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
}

int generation_failure(const std::exception& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return 3;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            row.push_back(',');
        row += fields[i];
    }
    row.push_back('\n');
    return row;
}

} // namespace

int cmd_generate(const std::string& config_path, const std::string& format,
                 const GlobalOptions& global) {
    GenerateSpec spec;
    try {
        spec = parse_generate_config(load_json_file(config_path), global.seed);
        if (format != "edges" && format != "none")
            throw ConfigError("--format must be 'edges' or 'none'");
    } catch (const std::exception& e) {
        return config_failure(e);
    }

    const auto start = Clock::now();
    TypedDigraph graph;
    std::optional<SimplificationReport> simplification;
    try {
        ExperimentConfig model;
        model.model = spec.model;
        model.params = spec.params;
        model.n = spec.n;
        model.tau = spec.tau;
        Realization realization = realize_model(model, GenSeed{spec.seed});
        graph = std::move(realization.graph);
        simplification = std::move(realization.simplification);
    } catch (const std::exception& e) {
        return generation_failure(e);
    }

    fs::create_directories(global.out);
    Json manifest = base_manifest("generate", spec.seed, spec.resolved);
    Json outputs = Json::object();
    if (format == "edges") {
        const std::string edges_path = (fs::path(global.out) / "edges.csv").string();
        const std::string types_path = (fs::path(global.out) / "types.csv").string();
        write_edges_csv(edges_path, graph);
        write_types_csv(types_path, graph);
        outputs["edges.csv"] = file_digest(edges_path);
        outputs["types.csv"] = file_digest(types_path);
    }
    manifest["duration_seconds"] = seconds_since(start);
    manifest["outputs"] = outputs;
    Json summary;
    summary["n"] = graph.n;
    summary["arcs"] = graph.arcs.size();
    if (simplification) {
        summary["self_loops_removed"] = simplification->self_loops();
        summary["multi_arcs_removed"] = simplification->multi_arcs();
        summary["kept_arcs"] = simplification->kept_arcs;
    }
    manifest["summary"] = summary;
    write_json((fs::path(global.out) / "manifest.json").string(), manifest);

    if (!global.quiet)
        std::cout << "generated model=" << model_name(spec.model) << " n=" << graph.n
                  << " arcs=" << graph.arcs.size() << " out=" << global.out << "\n";
    return 0;
}

int cmd_analyze(const std::string& edges_path, const std::string& types_path,
                const std::vector<std::string>& metric_names, const GlobalOptions& global) {
    TypedDigraph graph;
    std::vector<Metric> metrics;
    try {
        graph = read_graph(edges_path, types_path);
        std::vector<std::string> names = metric_names;
        if (names.empty())
            names = {"scc_fraction", "arc_type_counts", "total_arcs", "degree_summary"};
        metrics = parse_metric_names(names);
        for (Metric metric : metrics)
            if (metric == Metric::simplification_report)
                throw ConfigError("simplification_report is not derivable from an edge list");
    } catch (const std::exception& e) {
        return config_failure(e);
    }

    Json stats;
    stats["n"] = graph.n;
    for (Metric metric : metrics) {
        switch (metric) {
        case Metric::scc_fraction: {
            const SccResult scc = tarjan_scc(graph);
            Json block;
            block["largest_fraction"] = scc.largest_fraction;
            block["component_count"] = scc.component_sizes.size();
            block["sizes"] = scc.component_sizes;
            stats["scc"] = block;
            break;
        }
        case Metric::total_arcs:
            stats["total_arcs"] = graph.arcs.size();
            break;
        case Metric::arc_type_counts: {
            const ArcTypeCounts counts = arc_type_counts(graph);
            Json rows = Json::array();
            for (int t = 0; t < counts.counts.rows(); ++t) {
                Json row = Json::array();
                for (int s = 0; s < counts.counts.cols(); ++s)
                    row.push_back(counts.counts(t, s));
                rows.push_back(row);
            }
            stats["arc_type_counts"] = rows;
            break;
        }
        case Metric::degree_summary: {
            std::vector<std::int64_t> out_deg(static_cast<std::size_t>(graph.n), 0);
            std::vector<std::int64_t> in_deg(static_cast<std::size_t>(graph.n), 0);
            for (const Arc& arc : graph.arcs) {
                ++out_deg[arc.src];
                ++in_deg[arc.dst];
            }
            Json block;
            block["out_degree_mean"] =
                static_cast<double>(graph.arcs.size()) / static_cast<double>(graph.n);
            block["out_degree_max"] = *std::max_element(out_deg.begin(), out_deg.end());
            block["in_degree_max"] = *std::max_element(in_deg.begin(), in_deg.end());
            stats["degree_summary"] = block;
            break;
        }
        case Metric::simplification_report:
            break;
        }
    }

    fs::create_directories(global.out);
    const std::string stats_path = (fs::path(global.out) / "stats.json").string();
    write_json(stats_path, stats);
    if (!global.quiet) {
        std::cout << "analyzed n=" << graph.n << " arcs=" << graph.arcs.size();
        if (stats.contains("scc"))
            std::cout << " largest_scc_fraction=" << stats["scc"]["largest_fraction"].dump();
        std::cout << " out=" << stats_path << "\n";
    }
    return 0;
}

int cmd_fixed_point(const std::string& config_path, const std::string& coupling_name,
                    const GlobalOptions& global) {
    KernelSpec spec;
    Coupling coupling = Coupling::coupled;
    double tol = 1e-12;
    std::int64_t max_iter = 1000000;
    try {
        const Json config = load_json_file(config_path);
        spec = parse_kernel_config(config);
        if (coupling_name == "coupled")
            coupling = Coupling::coupled;
        else if (coupling_name == "as_written")
            coupling = Coupling::as_written;
        else
            throw ConfigError("--coupling must be 'coupled' or 'as_written'");
        if (config.contains("tol"))
            tol = config["tol"].get<double>();
        if (config.contains("max_iter"))
            max_iter = config["max_iter"].get<std::int64_t>();
    } catch (const std::exception& e) {
        return config_failure(e);
    }

    const bool irreducible = check_irreducibility(spec.kernel);
    const SurvivalSolution solution = giant_alpha(spec.kernel, spec.dist, coupling, tol, max_iter);

    Json stats;
    stats["coupling"] = coupling == Coupling::coupled ? "coupled" : "as_written";
    stats["irreducible"] = irreducible;
    stats["alpha"] = solution.alpha;
    stats["pi_plus"] = solution.pi_plus;
    stats["pi_minus"] = solution.pi_minus;
    stats["iterations"] = solution.iterations;
    stats["residual"] = solution.residual;
    stats["converged"] = solution.converged;

    fs::create_directories(global.out);
    const std::string stats_path = (fs::path(global.out) / "fixed_point.json").string();
    write_json(stats_path, stats);
    if (!global.quiet)
        std::cout << "fixed-point alpha=" << format_double(solution.alpha)
                  << " irreducible=" << (irreducible ? "true" : "false")
                  << " converged=" << (solution.converged ? "true" : "false")
                  << " out=" << stats_path << "\n";
    if (!solution.converged) {
        std::cerr << "fixed-point iteration did not converge within " << max_iter
                  << " iterations (residual " << format_double(solution.residual) << ")\n";
        return 4;
    }
    return 0;
}

int cmd_experiment(const std::string& config_path, const GlobalOptions& global) {
    ExperimentSpec spec;
    try {
        spec = parse_experiment_config(load_json_file(config_path), global.seed);
    } catch (const std::exception& e) {
        return config_failure(e);
    }

    const auto start = Clock::now();
    fs::create_directories(global.out);
    const std::string results_path = (fs::path(global.out) / "results.csv").string();
    bool predictor_converged = true;

    try {
        std::ofstream results(results_path, std::ios::binary | std::ios::trunc);
        if (!results)
            throw Error("cannot open output file: " + results_path);
        if (spec.sweep) {
            results << csv_row({"parameter", "mc_mean", "mc_ci", "replicates", "predicted_alpha"});
            results.flush();
            for (const double value : spec.sweep->values) {
                // One point per row, flushed as soon as it completes.
                const std::vector<std::pair<double, ExperimentConfig>> point = {
                    {value, spec.at(value)}};
                const std::vector<SweepRow> rows =
                    sweep(point, spec.predictor, "scc_fraction", global.workers);
                const SweepRow& row = rows.front();
                predictor_converged = predictor_converged && row.predictor_converged;
                results << csv_row({format_double(row.parameter), format_double(row.mc_mean),
                                    format_double(row.mc_half_width),
                                    std::to_string(row.replicates),
                                    row.predicted_alpha ? format_double(*row.predicted_alpha)
                                                        : std::string()});
                results.flush();
            }
        } else {
            const MetricTable table = run_experiment(spec.config, global.workers);
            results << csv_row({"metric", "mean", "sd", "ci_half_width", "replicates"});
            for (const MetricSeries& series : table.series)
                results << csv_row({series.name, format_double(series.mean),
                                    format_double(series.sd), format_double(series.half_width),
                                    std::to_string(series.count)});
            results.flush();
        }
    } catch (const MetricMismatch& e) {
        return config_failure(e);
    } catch (const std::exception& e) {
        return generation_failure(e);
    }

    Json manifest = base_manifest("experiment", spec.config.base_seed.value, spec.resolved);
    manifest["duration_seconds"] = seconds_since(start);
    manifest["workers"] = global.workers;
    Json outputs;
    outputs["results.csv"] = file_digest(results_path);
    manifest["outputs"] = outputs;
    write_json((fs::path(global.out) / "manifest.json").string(), manifest);

    if (!global.quiet)
        std::cout << "experiment model=" << model_name(spec.config.model)
                  << " out=" << results_path << "\n";
    return predictor_converged ? 0 : 4;
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"typed random digraph generation and analysis"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Override the config seed (u64)");
    app.add_option("--out", global.out, "Output directory")->capture_default_str();
    app.add_option("--workers", global.workers, "Worker threads for experiments")
        ->capture_default_str();
    app.add_flag("--quiet", global.quiet, "Suppress summary lines");

    std::string config_path;
    std::string format = "edges";
    auto* generate = app.add_subcommand("generate", "Generate a graph and write edge/type files");
    generate->add_option("config", config_path, "JSON config file")->required();
    generate->add_option("--format", format, "edges | none")->capture_default_str();
    generate->fallthrough();

    std::string edges_path;
    std::string types_path;
    std::vector<std::string> metric_names;
    auto* analyze = app.add_subcommand("analyze", "Analyze an edge/type file pair");
    analyze->add_option("edges", edges_path, "edges.csv path")->required();
    analyze->add_option("types", types_path, "types.csv path")->required();
    analyze->add_option("--metrics", metric_names, "Comma-separated metric list")
        ->delimiter(',');
    analyze->fallthrough();

    std::string fp_config_path;
    std::string coupling = "coupled";
    auto* fixed_point =
        app.add_subcommand("fixed-point", "Solve the survival fixed points and alpha");
    fixed_point->add_option("config", fp_config_path, "JSON config file")->required();
    fixed_point->add_option("--coupling", coupling, "coupled | as_written")
        ->capture_default_str();
    fixed_point->fallthrough();

    std::string exp_config_path;
    auto* experiment = app.add_subcommand("experiment", "Run a Monte-Carlo experiment or sweep");
    experiment->add_option("config", exp_config_path, "JSON config file")->required();
    experiment->fallthrough();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back(kToolName);
    for (const std::string& arg : args)
        argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*generate)
        return cmd_generate(config_path, format, global);
    if (*analyze)
        return cmd_analyze(edges_path, types_path, metric_names, global);
    if (*fixed_point)
        return cmd_fixed_point(fp_config_path, coupling, global);
    if (*experiment)
        return cmd_experiment(exp_config_path, global);
    return 2;
}

} // namespace rdg::cli
