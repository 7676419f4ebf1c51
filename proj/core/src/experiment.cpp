#include "rdg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rdg/errors.hpp"

namespace rdg {

const char* model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::ird: return "ird";
    case ModelKind::ird_fast: return "ird_fast";
    case ModelKind::ard: return "ard";
    case ModelKind::cci: return "cci";
    case ModelKind::gilbert: return "gilbert";
    case ModelKind::er: return "er";
    case ModelKind::sbm: return "sbm";
    case ModelKind::msbm: return "msbm";
    case ModelKind::chung_lu: return "chung_lu";
    }
    return "unknown";
}

const char* metric_name(Metric metric) {
    switch (metric) {
    case Metric::scc_fraction: return "scc_fraction";
    case Metric::total_arcs: return "total_arcs";
    case Metric::arc_type_counts: return "arc_type_counts";
    case Metric::degree_summary: return "degree_summary";
    case Metric::simplification_report: return "simplification_report";
    }
    return "unknown";
}

namespace {

// Acklam's rational approximation to the standard normal quantile, polished
// with one Halley step against erfc; accurate to machine precision.
double normal_quantile(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double error = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = error * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

} // namespace

double normal_quantile_two_sided(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha_ci must lie in (0, 1)");
    return normal_quantile(1.0 - alpha / 2.0);
}

namespace {

TypeDistribution single_type() { return TypeDistribution{{1.0}}; }

void validate_config(const ExperimentConfig& config) {
    if (config.n < 2)
        throw std::invalid_argument("experiment requires n >= 2");
    if (config.replicates < 1)
        throw std::invalid_argument("replicates must be >= 1");
    if (config.metrics.empty())
        throw std::invalid_argument("metrics must be non-empty");
    const bool is_cci = config.model == ModelKind::cci;
    for (Metric metric : config.metrics)
        if (metric == Metric::simplification_report && !is_cci)
            throw std::invalid_argument("simplification_report is only defined for the cci model");
}

} // namespace

Realization realize_model(const ExperimentConfig& config, GenSeed seed) {
    switch (config.model) {
    case ModelKind::gilbert: {
        const auto& p = std::get<GilbertParams>(config.params);
        return {generate_ird(config.n, single_type(), make_gilbert_kernel(p.lambda), seed),
                std::nullopt};
    }
    case ModelKind::er: {
        const auto& p = std::get<ErParams>(config.params);
        return {generate_ard(config.n, single_type(),
                             make_arc_count_table(IntMatrix(1, 1, p.arcs)), seed),
                std::nullopt};
    }
    case ModelKind::ird: {
        const auto& p = std::get<IrdParams>(config.params);
        return {generate_ird(config.n, p.dist, p.kernel, seed), std::nullopt};
    }
    case ModelKind::ird_fast: {
        const auto& p = std::get<IrdParams>(config.params);
        return {generate_ird_fast(config.n, p.dist, p.kernel, config.tau, seed), std::nullopt};
    }
    case ModelKind::ard: {
        const auto& p = std::get<ArdParams>(config.params);
        return {generate_ard(config.n, p.dist, p.table, seed), std::nullopt};
    }
    case ModelKind::sbm: {
        const auto& p = std::get<SbmParams>(config.params);
        return {generate_ird(config.n, p.dist, make_sbm_kernel(p.pi, config.n), seed),
                std::nullopt};
    }
    case ModelKind::msbm: {
        const auto& p = std::get<SbmParams>(config.params);
        return {generate_ard(config.n, p.dist, msbm_arc_table(p.pi, p.dist, config.n), seed),
                std::nullopt};
    }
    case ModelKind::chung_lu: {
        const auto& p = std::get<ChungLuParams>(config.params);
        return {generate_ird_fast(config.n, p.weights, make_chung_lu_kernel(p.weights), config.tau,
                                  seed),
                std::nullopt};
    }
    case ModelKind::cci: {
        const auto& p = std::get<CciParams>(config.params);
        auto [graph, report] = simplify(generate_cci(config.n, p.inputs, seed));
        return {std::move(graph), std::move(report)};
    }
    }
    throw std::invalid_argument("unknown model kind");
}

std::pair<Kernel, TypeDistribution> model_kernel(const ExperimentConfig& config) {
    switch (config.model) {
    case ModelKind::gilbert:
        return {make_gilbert_kernel(std::get<GilbertParams>(config.params).lambda), single_type()};
    case ModelKind::er: {
        const auto& p = std::get<ErParams>(config.params);
        return {make_gilbert_kernel(static_cast<double>(p.arcs) / static_cast<double>(config.n)),
                single_type()};
    }
    case ModelKind::ird:
    case ModelKind::ird_fast: {
        const auto& p = std::get<IrdParams>(config.params);
        return {p.kernel, p.dist};
    }
    case ModelKind::ard: {
        const auto& p = std::get<ArdParams>(config.params);
        const int s = p.dist.size();
        Matrix values(s, s, 0.0);
        for (int t = 0; t < s; ++t)
            for (int u = 0; u < s; ++u) {
                const double mass = p.dist[t] * p.dist[u] * static_cast<double>(config.n);
                values(t, u) = mass > 0.0
                                   ? static_cast<double>(p.table.counts(t, u)) / mass
                                   : 0.0;
            }
        return {make_kernel(std::move(values)), p.dist};
    }
    case ModelKind::sbm:
    case ModelKind::msbm: {
        const auto& p = std::get<SbmParams>(config.params);
        return {make_sbm_kernel(p.pi, config.n), p.dist};
    }
    case ModelKind::chung_lu: {
        const auto& p = std::get<ChungLuParams>(config.params);
        return {make_chung_lu_kernel(p.weights), p.weights};
    }
    case ModelKind::cci: {
        const auto& p = std::get<CciParams>(config.params);
        return {cci_kernel(p.inputs), p.inputs.type_dist};
    }
    }
    throw std::invalid_argument("unknown model kind");
}

namespace {

using ReplicateValues = std::vector<double>;

/// Fixed series layout for a config; values are filled per replicate in the
/// same order so aggregation is order-insensitive by construction.
std::vector<std::string> series_names(const ExperimentConfig& config) {
    std::vector<std::string> names;
    const int s = [&] {
        switch (config.model) {
        case ModelKind::gilbert:
        case ModelKind::er: return 1;
        case ModelKind::ird:
        case ModelKind::ird_fast: return std::get<IrdParams>(config.params).dist.size();
        case ModelKind::ard: return std::get<ArdParams>(config.params).dist.size();
        case ModelKind::sbm:
        case ModelKind::msbm: return std::get<SbmParams>(config.params).dist.size();
        case ModelKind::chung_lu: return std::get<ChungLuParams>(config.params).weights.size();
        case ModelKind::cci: return std::get<CciParams>(config.params).inputs.type_dist.size();
        }
        return 0;
    }();
    for (Metric metric : config.metrics) {
        switch (metric) {
        case Metric::scc_fraction:
            names.emplace_back("scc_fraction");
            break;
        case Metric::total_arcs:
            names.emplace_back("total_arcs");
            break;
        case Metric::arc_type_counts:
            for (int t = 1; t <= s; ++t)
                for (int u = 1; u <= s; ++u)
                    names.push_back("arc_type_counts[" + std::to_string(t) + "][" +
                                    std::to_string(u) + "]");
            break;
        case Metric::degree_summary:
            names.emplace_back("out_degree_mean");
            names.emplace_back("out_degree_max");
            names.emplace_back("in_degree_max");
            break;
        case Metric::simplification_report:
            names.emplace_back("self_loops");
            names.emplace_back("multi_arcs");
            names.emplace_back("kept_arcs");
            break;
        }
    }
    return names;
}

ReplicateValues replicate_values(const ExperimentConfig& config, const Realization& realization) {
    ReplicateValues values;
    const TypedDigraph& graph = realization.graph;
    for (Metric metric : config.metrics) {
        switch (metric) {
        case Metric::scc_fraction:
            values.push_back(tarjan_scc(graph).largest_fraction);
            break;
        case Metric::total_arcs:
            values.push_back(static_cast<double>(graph.arcs.size()));
            break;
        case Metric::arc_type_counts: {
            const ArcTypeCounts counts = arc_type_counts(graph);
            for (std::int64_t c : counts.counts.data())
                values.push_back(static_cast<double>(c));
            break;
        }
        case Metric::degree_summary: {
            std::vector<std::int64_t> out_deg(static_cast<std::size_t>(graph.n), 0);
            std::vector<std::int64_t> in_deg(static_cast<std::size_t>(graph.n), 0);
            for (const Arc& arc : graph.arcs) {
                ++out_deg[arc.src];
                ++in_deg[arc.dst];
            }
            values.push_back(static_cast<double>(graph.arcs.size()) /
                             static_cast<double>(graph.n));
            values.push_back(static_cast<double>(
                out_deg.empty() ? 0 : *std::max_element(out_deg.begin(), out_deg.end())));
            values.push_back(static_cast<double>(
                in_deg.empty() ? 0 : *std::max_element(in_deg.begin(), in_deg.end())));
            break;
        }
        case Metric::simplification_report: {
            const SimplificationReport& report = *realization.simplification;
            values.push_back(static_cast<double>(report.self_loops()));
            values.push_back(static_cast<double>(report.multi_arcs()));
            values.push_back(static_cast<double>(report.kept_arcs));
            break;
        }
        }
    }
    return values;
}

} // namespace

const MetricSeries* MetricTable::find(const std::string& name) const {
    for (const MetricSeries& s : series)
        if (s.name == name)
            return &s;
    return nullptr;
}

MetricTable run_experiment(const ExperimentConfig& config, int workers) {
    validate_config(config);
    const int replicates = config.replicates;
    std::vector<ReplicateValues> rows(static_cast<std::size_t>(replicates));

    const int thread_count = std::clamp(workers, 1, replicates);
    std::atomic<int> next_replicate{0};
    std::vector<std::pair<int, std::string>> failures;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (;;) {
            const int r = next_replicate.fetch_add(1);
            if (r >= replicates)
                return;
            try {
                const GenSeed seed{derive_seed(config.base_seed.value, kStreamReplicate,
                                               static_cast<std::uint64_t>(r))};
                rows[static_cast<std::size_t>(r)] =
                    replicate_values(config, realize_model(config, seed));
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                failures.emplace_back(r, e.what());
            }
        }
    };

    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(thread_count));
        for (int k = 0; k < thread_count; ++k)
            threads.emplace_back(worker);
        for (std::thread& t : threads)
            t.join();
    }
    if (!failures.empty()) {
        const auto worst = std::min_element(failures.begin(), failures.end());
        throw Error("replicate " + std::to_string(worst->first) + ": " + worst->second);
    }

    const std::vector<std::string> names = series_names(config);
    const double z = normal_quantile_two_sided(config.alpha_ci);
    MetricTable table;
    table.alpha_ci = config.alpha_ci;
    table.series.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        MetricSeries series;
        series.name = names[i];
        series.count = replicates;
        double sum = 0.0;
        for (int r = 0; r < replicates; ++r)
            sum += rows[static_cast<std::size_t>(r)][i];
        series.mean = sum / replicates;
        double ss = 0.0;
        for (int r = 0; r < replicates; ++r) {
            const double d = rows[static_cast<std::size_t>(r)][i] - series.mean;
            ss += d * d;
        }
        series.sd = replicates > 1 ? std::sqrt(ss / (replicates - 1)) : 0.0;
        series.half_width = z * series.sd / std::sqrt(static_cast<double>(replicates));
        if (config.keep_raw) {
            series.raw.reserve(static_cast<std::size_t>(replicates));
            for (int r = 0; r < replicates; ++r)
                series.raw.push_back(rows[static_cast<std::size_t>(r)][i]);
        }
        table.series.push_back(std::move(series));
    }
    return table;
}

ComparisonReport compare_models(const ExperimentConfig& config_a, const ExperimentConfig& config_b,
                                const std::string& metric, int workers) {
    if (config_a.n != config_b.n)
        throw MetricMismatch("configs disagree on n: " + std::to_string(config_a.n) + " vs " +
                             std::to_string(config_b.n));
    const MetricTable table_a = run_experiment(config_a, workers);
    const MetricTable table_b = run_experiment(config_b, workers);
    const MetricSeries* series_a = table_a.find(metric);
    const MetricSeries* series_b = table_b.find(metric);
    if (!series_a || !series_b)
        throw MetricMismatch("metric '" + metric + "' not present in both experiments");

    ComparisonReport report;
    report.metric = metric;
    report.mean_a = series_a->mean;
    report.mean_b = series_b->mean;
    report.sd_a = series_a->sd;
    report.sd_b = series_b->sd;
    report.count_a = series_a->count;
    report.count_b = series_b->count;
    report.mean_diff = series_a->mean - series_b->mean;
    const double se = std::sqrt(series_a->sd * series_a->sd / series_a->count +
                                series_b->sd * series_b->sd / series_b->count);
    report.pooled_half_width = normal_quantile_two_sided(config_a.alpha_ci) * se;
    const double pooled_sd =
        std::sqrt((series_a->sd * series_a->sd + series_b->sd * series_b->sd) / 2.0);
    report.standardized_mean_difference = pooled_sd > 0.0 ? report.mean_diff / pooled_sd : 0.0;
    report.z_statistic = se > 0.0 ? report.mean_diff / se : 0.0;
    return report;
}

std::vector<SweepRow> sweep(const std::vector<std::pair<double, ExperimentConfig>>& points,
                            const PredictorSpec& predictor, const std::string& metric,
                            int workers) {
    std::vector<SweepRow> rows;
    rows.reserve(points.size());
    for (const auto& [parameter, config] : points) {
        const MetricTable table = run_experiment(config, workers);
        const MetricSeries* series = table.find(metric);
        if (!series)
            throw MetricMismatch("sweep metric '" + metric + "' not produced by the experiment");
        SweepRow row;
        row.parameter = parameter;
        row.mc_mean = series->mean;
        row.mc_half_width = series->half_width;
        row.replicates = series->count;
        if (predictor.enabled) {
            const auto [kernel, dist] = model_kernel(config);
            const SurvivalSolution solution =
                giant_alpha(kernel, dist, predictor.coupling, predictor.tol, predictor.max_iter);
            row.predicted_alpha = solution.alpha;
            row.predictor_converged = solution.converged;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace rdg
