#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdg/errors.hpp"
#include "rdg/experiment.hpp"

namespace rdg::cli {

using Json = nlohmann::ordered_json;

/// Config file problem; message names the offending key path.
struct ConfigError : Error {
    using Error::Error;
};

Json load_json_file(const std::string& path);

ModelKind parse_model_kind(const std::string& name);

/// Parses the model-specific parameter block. n is needed by the fixed-arc
/// models (er with a lambda rate, msbm). May throw ConfigError or the core
/// validation errors.
ModelParams parse_model_params(ModelKind kind, const Json& config, std::int64_t n);

struct GenerateSpec {
    ModelKind model{};
    ModelParams params{};
    std::int64_t n = 0;
    double tau = 0.4;
    std::uint64_t seed = 0;
    Json resolved;
};

GenerateSpec parse_generate_config(const Json& config,
                                   std::optional<std::uint64_t> seed_override);

/// Kernel + distribution for the fixed-point command: either an explicit
/// {"model": "kernel", "params": {"q": ..., "kappa": ...}} block or any
/// generative model config, mapped through its defining rate.
struct KernelSpec {
    Kernel kernel;
    TypeDistribution dist;
    Json resolved;
};

KernelSpec parse_kernel_config(const Json& config);

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
};

struct ExperimentSpec {
    ExperimentConfig config;
    std::optional<SweepSpec> sweep;
    PredictorSpec predictor;
    Json resolved;

    /// Config for one sweep point: the declared parameter patched to value.
    ExperimentConfig at(double value) const;
};

ExperimentSpec parse_experiment_config(const Json& config,
                                       std::optional<std::uint64_t> seed_override);

std::vector<Metric> parse_metric_names(const std::vector<std::string>& names);

} // namespace rdg::cli
