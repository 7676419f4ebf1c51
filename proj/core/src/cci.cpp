#include "rdg/cci.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "rdg/errors.hpp"
#include "rdg/generators.hpp"
#include "rdg/numeric.hpp"

namespace rdg {

namespace {
constexpr double kMassTolerance = 1e-12;

void check_orphans(const CCIInputs& inputs, const Acceptance& acceptance) {
    for (int i = 0; i < inputs.colour_pmf.rows(); ++i) {
        for (int j = 0; j < inputs.colour_pmf.cols(); ++j) {
            if (inputs.colour_pmf(i, j) <= 0.0)
                continue;
            if (acceptance.lambda[static_cast<std::size_t>(i)] <= 0.0)
                throw OrphanColour("out-colour " + std::to_string(i + 1) +
                                   " has positive mass but no admissible type");
            if (acceptance.rho[static_cast<std::size_t>(j)] <= 0.0)
                throw OrphanColour("in-colour " + std::to_string(j + 1) +
                                   " has positive mass but no admissible type");
        }
    }
}
} // namespace

CCIInputs validate_cci_inputs(CCIInputs inputs) {
    if (!(inputs.mu > 0.0) || !std::isfinite(inputs.mu))
        throw std::invalid_argument("mu must be positive and finite");
    const int s = inputs.type_dist.size();
    if (s < 1)
        throw std::invalid_argument("type distribution must be non-empty");
    const int k_out = inputs.colour_pmf.rows();
    const int k_in = inputs.colour_pmf.cols();
    if (k_out < 1 || k_in < 1)
        throw std::invalid_argument("colour pmf must be non-empty");
    if (inputs.out_indicator.rows() != s || inputs.out_indicator.cols() != k_out)
        throw std::invalid_argument("out indicator must be S x K_out");
    if (inputs.in_indicator.rows() != s || inputs.in_indicator.cols() != k_in)
        throw std::invalid_argument("in indicator must be S x K_in");

    double mass = 0.0;
    for (double p : inputs.colour_pmf.data()) {
        if (p < 0.0 || !std::isfinite(p))
            throw NegativeMass("colour pmf entries must be non-negative");
        mass += p;
    }
    if (std::abs(mass - 1.0) > kMassTolerance)
        throw NotNormalized("colour pmf sums to " + std::to_string(mass) +
                            ", expected 1 within 1e-12");
    for (std::int64_t v : inputs.out_indicator.data())
        if (v != 0 && v != 1)
            throw std::invalid_argument("out indicator entries must be 0 or 1");
    for (std::int64_t v : inputs.in_indicator.data())
        if (v != 0 && v != 1)
            throw std::invalid_argument("in indicator entries must be 0 or 1");

    check_orphans(inputs, compute_acceptance(inputs));
    return inputs;
}

Acceptance compute_acceptance(const CCIInputs& inputs) {
    const int s = inputs.type_dist.size();
    Acceptance acceptance;
    acceptance.lambda.assign(static_cast<std::size_t>(inputs.out_indicator.cols()), 0.0);
    acceptance.rho.assign(static_cast<std::size_t>(inputs.in_indicator.cols()), 0.0);
    for (int k = 0; k < s; ++k) {
        for (int i = 0; i < inputs.out_indicator.cols(); ++i)
            if (inputs.out_indicator(k, i) != 0)
                acceptance.lambda[static_cast<std::size_t>(i)] += inputs.type_dist[k];
        for (int j = 0; j < inputs.in_indicator.cols(); ++j)
            if (inputs.in_indicator(k, j) != 0)
                acceptance.rho[static_cast<std::size_t>(j)] += inputs.type_dist[k];
    }
    return acceptance;
}

Kernel cci_kernel(const CCIInputs& inputs) {
    const Acceptance acceptance = compute_acceptance(inputs);
    check_orphans(inputs, acceptance);
    const int s = inputs.type_dist.size();
    Matrix values(s, s, 0.0);
    for (int t = 0; t < s; ++t) {
        for (int u = 0; u < s; ++u) {
            double acc = 0.0;
            for (int i = 0; i < inputs.colour_pmf.rows(); ++i) {
                if (inputs.out_indicator(t, i) == 0)
                    continue;
                for (int j = 0; j < inputs.colour_pmf.cols(); ++j) {
                    const double p = inputs.colour_pmf(i, j);
                    if (p <= 0.0 || inputs.in_indicator(u, j) == 0)
                        continue;
                    acc += p / (acceptance.lambda[static_cast<std::size_t>(i)] *
                                acceptance.rho[static_cast<std::size_t>(j)]);
                }
            }
            values(t, u) = inputs.mu * acc;
        }
    }
    return make_kernel(std::move(values));
}

TypedMultiDigraph generate_cci(std::int64_t n, const CCIInputs& inputs, GenSeed seed) {
    if (n < 2)
        throw std::invalid_argument("generate_cci requires n >= 2");
    const int s = inputs.type_dist.size();
    const int k_out = inputs.colour_pmf.rows();
    const int k_in = inputs.colour_pmf.cols();

    TypedMultiDigraph graph;
    graph.n = n;
    graph.num_types = s;
    graph.types = assign_types(n, inputs.type_dist, seed);

    std::vector<std::vector<std::uint32_t>> out_members(static_cast<std::size_t>(k_out));
    std::vector<std::vector<std::uint32_t>> in_members(static_cast<std::size_t>(k_in));
    for (std::int64_t v = 0; v < n; ++v) {
        const int type = graph.types[static_cast<std::size_t>(v)];
        for (int i = 0; i < k_out; ++i)
            if (inputs.out_indicator(type, i) != 0)
                out_members[static_cast<std::size_t>(i)].push_back(
                    static_cast<std::uint32_t>(v));
        for (int j = 0; j < k_in; ++j)
            if (inputs.in_indicator(type, j) != 0)
                in_members[static_cast<std::size_t>(j)].push_back(static_cast<std::uint32_t>(v));
    }

    std::vector<double> colour_cdf(static_cast<std::size_t>(k_out) * k_in);
    double acc = 0.0;
    for (int i = 0; i < k_out; ++i)
        for (int j = 0; j < k_in; ++j) {
            acc += inputs.colour_pmf(i, j);
            colour_cdf[static_cast<std::size_t>(i) * k_in + j] = acc;
        }
    colour_cdf.back() = 1.0;

    const std::int64_t total_arcs = floor_count(inputs.mu * static_cast<double>(n));
    graph.arcs.reserve(static_cast<std::size_t>(total_arcs));
    // Single sequential stream over arc indices per the model definition.
    Rng rng(derive_seed(seed.value, kStreamCciArcs));
    for (std::int64_t a = 0; a < total_arcs; ++a) {
        const double u = rng.uniform01();
        const auto flat = static_cast<int>(
            std::upper_bound(colour_cdf.begin(), colour_cdf.end(), u) - colour_cdf.begin());
        const int i = flat / k_in;
        const int j = flat % k_in;
        const auto& sources = out_members[static_cast<std::size_t>(i)];
        const auto& targets = in_members[static_cast<std::size_t>(j)];
        if (sources.empty() || targets.empty())
            throw EmptyAdmissibleSet("arc " + std::to_string(a + 1) + " drew colour (" +
                                     std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                     ") with no admissible " +
                                     (sources.empty() ? "source" : "target") + " vertex");
        const auto v = sources[rng.below(sources.size())];
        const auto w = targets[rng.below(targets.size())];
        graph.arcs.push_back({v, w});
    }
    return graph;
}

std::int64_t SimplificationReport::self_loops() const {
    return std::accumulate(self_loops_per_type.begin(), self_loops_per_type.end(),
                           std::int64_t{0});
}

std::int64_t SimplificationReport::multi_arcs() const {
    return std::accumulate(multi_arcs_per_pair.data().begin(), multi_arcs_per_pair.data().end(),
                           std::int64_t{0});
}

std::pair<TypedDigraph, SimplificationReport> simplify(const TypedMultiDigraph& graph) {
    TypedDigraph simple;
    simple.n = graph.n;
    simple.num_types = graph.num_types;
    simple.types = graph.types;

    SimplificationReport report;
    report.self_loops_per_type.assign(static_cast<std::size_t>(graph.num_types), 0);
    report.multi_arcs_per_pair = IntMatrix(graph.num_types, graph.num_types, 0);

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(graph.arcs.size() * 2);
    for (const Arc& arc : graph.arcs) {
        if (arc.src == arc.dst) {
            ++report.self_loops_per_type[static_cast<std::size_t>(graph.types[arc.src])];
            continue;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(arc.src) << 32) | static_cast<std::uint64_t>(arc.dst);
        if (seen.insert(key).second)
            simple.arcs.push_back(arc);
        else
            ++report.multi_arcs_per_pair(graph.types[arc.src], graph.types[arc.dst]);
    }
    report.kept_arcs = static_cast<std::int64_t>(simple.arcs.size());
    return {std::move(simple), std::move(report)};
}

} // namespace rdg
