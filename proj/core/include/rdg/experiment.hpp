#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rdg/analysis.hpp"
#include "rdg/cci.hpp"
#include "rdg/generators.hpp"
#include "rdg/rng.hpp"
#include "rdg/types.hpp"

namespace rdg {

enum class ModelKind { ird, ird_fast, ard, cci, gilbert, er, sbm, msbm, chung_lu };

const char* model_name(ModelKind kind);

struct GilbertParams {
    double lambda = 0;
};
struct ErParams {
    std::int64_t arcs = 0;
};
struct IrdParams {
    TypeDistribution dist;
    Kernel kernel;
};
struct ArdParams {
    TypeDistribution dist;
    ArcCountTable table;
};
struct SbmParams {
    TypeDistribution dist;
    Matrix pi;
};
struct ChungLuParams {
    TypeDistribution weights;
};
struct CciParams {
    CCIInputs inputs;
};

using ModelParams = std::variant<GilbertParams, ErParams, IrdParams, ArdParams, SbmParams,
                                 ChungLuParams, CciParams>;

enum class Metric { scc_fraction, total_arcs, arc_type_counts, degree_summary, simplification_report };

const char* metric_name(Metric metric);

struct ExperimentConfig {
    ModelKind model{};
    ModelParams params{};
    std::int64_t n = 0;
    int replicates = 1;
    GenSeed base_seed{};
    std::vector<Metric> metrics{};
    double tau = 0.4;
    double alpha_ci = 0.05;
    bool keep_raw = true;
};

/// One named scalar series aggregated over replicates. Matrix-valued metrics
/// expand into one series per entry (e.g. "arc_type_counts[2][1]", 1-based).
struct MetricSeries {
    std::string name;
    int count = 0;
    double mean = 0;
    double sd = 0;
    double half_width = 0; // z_{1-alpha/2} * sd / sqrt(count)
    std::vector<double> raw; // per-replicate values when keep_raw is set
};

struct MetricTable {
    double alpha_ci = 0.05;
    std::vector<MetricSeries> series;

    const MetricSeries* find(const std::string& name) const;
};

/// Runs config.replicates independent realizations (replicate r seeded by
/// derive_seed(base_seed, r)), computes the requested metrics and aggregates
/// them. Deterministic given the config, for any worker count.
MetricTable run_experiment(const ExperimentConfig& config, int workers = 1);

struct ComparisonReport {
    std::string metric;
    double mean_a = 0, mean_b = 0;
    double sd_a = 0, sd_b = 0;
    int count_a = 0, count_b = 0;
    double mean_diff = 0;
    double pooled_half_width = 0;
    double standardized_mean_difference = 0;
    double z_statistic = 0;
};

/// Two-sample summary for one shared metric; no pass/fail verdict embedded.
ComparisonReport compare_models(const ExperimentConfig& config_a, const ExperimentConfig& config_b,
                                const std::string& metric, int workers = 1);

struct PredictorSpec {
    bool enabled = false;
    Coupling coupling = Coupling::coupled;
    double tol = 1e-12;
    std::int64_t max_iter = 1000000;
};

struct SweepRow {
    double parameter = 0;
    double mc_mean = 0;
    double mc_half_width = 0;
    int replicates = 0;
    std::optional<double> predicted_alpha;
    bool predictor_converged = true;
};

/// One experiment per (parameter value, config) point, optionally aligned
/// with the fixed-point prediction of the model's kernel.
std::vector<SweepRow> sweep(const std::vector<std::pair<double, ExperimentConfig>>& points,
                            const PredictorSpec& predictor,
                            const std::string& metric = "scc_fraction", int workers = 1);

/// The (kernel, type distribution) pair matching a model config, used by the
/// fixed-point predictor. Fixed-arc models map back through their defining
/// rate: er -> arcs/n, ard -> Lambda/(q_t q_s n), msbm -> n*pi.
std::pair<Kernel, TypeDistribution> model_kernel(const ExperimentConfig& config);

/// A single realization of the configured model. CCI realizations carry the
/// simplification accounting alongside the simple graph.
struct Realization {
    TypedDigraph graph;
    std::optional<SimplificationReport> simplification;
};

Realization realize_model(const ExperimentConfig& config, GenSeed seed);

/// z_{1-alpha/2} used for the normal-approximation confidence half-widths.
double normal_quantile_two_sided(double alpha);

} // namespace rdg
