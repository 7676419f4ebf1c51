#include "config.hpp"

#include <fstream>

#include "rdg/numeric.hpp"

namespace rdg::cli {

namespace {

[[noreturn]] void missing(const std::string& path) {
    throw ConfigError("missing key: " + path);
}

const Json& require(const Json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end())
        missing(path.empty() ? key : path + "." + key);
    return *it;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double as_double(const Json& j, const std::string& path) {
    if (!j.is_number())
        throw ConfigError("expected a number at " + path);
    return j.get<double>();
}

std::int64_t as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw ConfigError("expected an integer at " + path);
    return j.get<std::int64_t>();
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string())
        throw ConfigError("expected a string at " + path);
    return j.get<std::string>();
}

std::vector<double> as_vector(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty())
        throw ConfigError("expected a non-empty array at " + path);
    std::vector<double> values;
    values.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        values.push_back(as_double(j[i], path + "[" + std::to_string(i) + "]"));
    return values;
}

Matrix as_matrix(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty())
        throw ConfigError("expected a non-empty matrix (array of rows) at " + path);
    std::vector<std::vector<double>> rows;
    rows.reserve(j.size());
    for (std::size_t r = 0; r < j.size(); ++r)
        rows.push_back(as_vector(j[r], path + "[" + std::to_string(r) + "]"));
    const std::size_t cols = rows.front().size();
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].size() != cols)
            throw ConfigError("ragged matrix at " + path + ": row " + std::to_string(r) +
                              " has " + std::to_string(rows[r].size()) + " columns, expected " +
                              std::to_string(cols));
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    return m;
}

IntMatrix as_int_matrix(const Json& j, const std::string& path) {
    const Matrix m = as_matrix(j, path);
    IntMatrix out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            const double v = m(r, c);
            if (v != static_cast<double>(static_cast<std::int64_t>(v)))
                throw ConfigError("expected integer entries at " + path);
            out(r, c) = static_cast<std::int64_t>(v);
        }
    return out;
}

TypeDistribution parse_distribution(const Json& params, const char* key,
                                    const std::string& path) {
    const bool renormalize = params.value("renormalize", false);
    return validate_distribution(as_vector(require(params, key, path), join(path, key)),
                                 renormalize);
}

} // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

ModelKind parse_model_kind(const std::string& name) {
    for (ModelKind kind : {ModelKind::ird, ModelKind::ird_fast, ModelKind::ard, ModelKind::cci,
                           ModelKind::gilbert, ModelKind::er, ModelKind::sbm, ModelKind::msbm,
                           ModelKind::chung_lu})
        if (name == model_name(kind))
            return kind;
    throw ConfigError("unknown model '" + name +
                      "' (expected one of ird, ird_fast, ard, cci, gilbert, er, sbm, msbm, "
                      "chung_lu)");
}

ModelParams parse_model_params(ModelKind kind, const Json& config, std::int64_t n) {
    const std::string path = "params";
    const Json& params = require(config, "params", "");
    switch (kind) {
    case ModelKind::gilbert:
        return GilbertParams{as_double(require(params, "lambda", path), join(path, "lambda"))};
    case ModelKind::er: {
        if (params.contains("m"))
            return ErParams{as_int(params["m"], join(path, "m"))};
        if (params.contains("lambda"))
            return ErParams{floor_count(
                as_double(params["lambda"], join(path, "lambda")) * static_cast<double>(n))};
        missing(join(path, "m"));
    }
    case ModelKind::ird:
    case ModelKind::ird_fast: {
        TypeDistribution dist = parse_distribution(params, "q", path);
        Matrix kappa = as_matrix(require(params, "kappa", path), join(path, "kappa"));
        std::optional<Matrix> phi;
        if (params.contains("phi"))
            phi = as_matrix(params["phi"], join(path, "phi"));
        return IrdParams{std::move(dist), make_kernel(std::move(kappa), std::move(phi))};
    }
    case ModelKind::ard: {
        TypeDistribution dist = parse_distribution(params, "q", path);
        IntMatrix table = as_int_matrix(require(params, "Lambda", path), join(path, "Lambda"));
        return ArdParams{std::move(dist), make_arc_count_table(std::move(table))};
    }
    case ModelKind::sbm:
    case ModelKind::msbm: {
        TypeDistribution dist = parse_distribution(params, "q", path);
        Matrix pi = as_matrix(require(params, "pi", path), join(path, "pi"));
        return SbmParams{std::move(dist), std::move(pi)};
    }
    case ModelKind::chung_lu:
        return ChungLuParams{parse_distribution(params, "weights", path)};
    case ModelKind::cci: {
        CCIInputs inputs;
        inputs.mu = as_double(require(params, "mu", path), join(path, "mu"));
        inputs.type_dist = parse_distribution(params, "q", path);
        inputs.colour_pmf = as_matrix(require(params, "P", path), join(path, "P"));
        inputs.out_indicator = as_int_matrix(require(params, "I", path), join(path, "I"));
        inputs.in_indicator = as_int_matrix(require(params, "J", path), join(path, "J"));
        return CciParams{validate_cci_inputs(std::move(inputs))};
    }
    }
    throw ConfigError("unknown model kind");
}

GenerateSpec parse_generate_config(const Json& config, std::optional<std::uint64_t> seed_override) {
    GenerateSpec spec;
    spec.model = parse_model_kind(as_string(require(config, "model", ""), "model"));
    spec.n = as_int(require(config, "n", ""), "n");
    if (spec.n < 2)
        throw ConfigError("n must be at least 2");
    spec.params = parse_model_params(spec.model, config, spec.n);
    spec.tau = config.contains("tau") ? as_double(config["tau"], "tau") : 0.4;
    if (seed_override)
        spec.seed = *seed_override;
    else if (config.contains("seed"))
        spec.seed = static_cast<std::uint64_t>(as_int(config["seed"], "seed"));
    spec.resolved = config;
    spec.resolved["seed"] = spec.seed;
    spec.resolved["tau"] = spec.tau;
    return spec;
}

KernelSpec parse_kernel_config(const Json& config) {
    KernelSpec spec;
    const std::string model = as_string(require(config, "model", ""), "model");
    if (model == "kernel") {
        const Json& params = require(config, "params", "");
        spec.dist = validate_distribution(as_vector(require(params, "q", "params"), "params.q"),
                                          params.value("renormalize", false));
        spec.kernel = make_kernel(as_matrix(require(params, "kappa", "params"), "params.kappa"));
    } else {
        ExperimentConfig probe;
        probe.model = parse_model_kind(model);
        probe.n = config.contains("n") ? as_int(config["n"], "n") : 0;
        const bool needs_n = probe.model == ModelKind::er || probe.model == ModelKind::sbm ||
                             probe.model == ModelKind::msbm || probe.model == ModelKind::ard;
        if (needs_n && probe.n < 1)
            throw ConfigError("model '" + model + "' needs n to define its kernel");
        probe.params = parse_model_params(probe.model, config, probe.n);
        auto [kernel, dist] = model_kernel(probe);
        spec.kernel = std::move(kernel);
        spec.dist = std::move(dist);
    }
    spec.resolved = config;
    return spec;
}

std::vector<Metric> parse_metric_names(const std::vector<std::string>& names) {
    std::vector<Metric> metrics;
    metrics.reserve(names.size());
    for (const std::string& name : names) {
        bool found = false;
        for (Metric metric : {Metric::scc_fraction, Metric::total_arcs, Metric::arc_type_counts,
                              Metric::degree_summary, Metric::simplification_report}) {
            if (name == metric_name(metric)) {
                metrics.push_back(metric);
                found = true;
                break;
            }
        }
        if (!found)
            throw ConfigError("unknown metric '" + name +
                              "' (expected scc_fraction, total_arcs, arc_type_counts, "
                              "degree_summary or simplification_report)");
    }
    return metrics;
}

ExperimentSpec parse_experiment_config(const Json& config,
                                       std::optional<std::uint64_t> seed_override) {
    ExperimentSpec spec;
    spec.resolved = config;
    spec.config.model = parse_model_kind(as_string(require(config, "model", ""), "model"));
    spec.config.n = as_int(require(config, "n", ""), "n");
    spec.config.params = parse_model_params(spec.config.model, config, spec.config.n);
    spec.config.replicates = static_cast<int>(as_int(require(config, "replicates", ""), "replicates"));
    if (config.contains("tau"))
        spec.config.tau = as_double(config["tau"], "tau");
    if (config.contains("alpha_ci"))
        spec.config.alpha_ci = as_double(config["alpha_ci"], "alpha_ci");
    if (seed_override)
        spec.config.base_seed.value = *seed_override;
    else if (config.contains("seed"))
        spec.config.base_seed.value = static_cast<std::uint64_t>(as_int(config["seed"], "seed"));
    spec.resolved["seed"] = spec.config.base_seed.value;

    std::vector<std::string> metric_names;
    const Json& metrics = require(config, "metrics", "");
    if (!metrics.is_array() || metrics.empty())
        throw ConfigError("metrics must be a non-empty array");
    for (std::size_t i = 0; i < metrics.size(); ++i)
        metric_names.push_back(as_string(metrics[i], "metrics[" + std::to_string(i) + "]"));
    spec.config.metrics = parse_metric_names(metric_names);

    if (config.contains("sweep")) {
        const Json& sweep = config["sweep"];
        SweepSpec sw;
        sw.parameter = as_string(require(sweep, "parameter", "sweep"), "sweep.parameter");
        sw.values = as_vector(require(sweep, "values", "sweep"), "sweep.values");
        spec.sweep = std::move(sw);
    }
    if (config.contains("predict")) {
        const Json& predict = config["predict"];
        if (predict.is_boolean()) {
            spec.predictor.enabled = predict.get<bool>();
        } else if (predict.is_object()) {
            spec.predictor.enabled = predict.value("enabled", true);
            const std::string coupling = predict.value("coupling", "coupled");
            if (coupling == "coupled")
                spec.predictor.coupling = Coupling::coupled;
            else if (coupling == "as_written")
                spec.predictor.coupling = Coupling::as_written;
            else
                throw ConfigError("predict.coupling must be 'coupled' or 'as_written'");
            if (predict.contains("tol"))
                spec.predictor.tol = as_double(predict["tol"], "predict.tol");
            if (predict.contains("max_iter"))
                spec.predictor.max_iter = as_int(predict["max_iter"], "predict.max_iter");
        } else {
            throw ConfigError("predict must be a boolean or an object");
        }
    }
    return spec;
}

ExperimentConfig ExperimentSpec::at(double value) const {
    if (!sweep)
        return config;
    Json patched = resolved;
    if (sweep->parameter == "n") {
        patched["n"] = static_cast<std::int64_t>(value);
    } else if (sweep->parameter == "replicates") {
        patched["replicates"] = static_cast<std::int64_t>(value);
    } else {
        Json& params = patched["params"];
        if (!params.contains(sweep->parameter))
            throw ConfigError("sweep parameter '" + sweep->parameter +
                              "' not present under params");
        if (params[sweep->parameter].is_number_integer())
            params[sweep->parameter] = static_cast<std::int64_t>(value);
        else
            params[sweep->parameter] = value;
    }
    ExperimentSpec point = parse_experiment_config(
        patched, static_cast<std::uint64_t>(config.base_seed.value));
    return point.config;
}

} // namespace rdg::cli
