#include "rdg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdg {

namespace {

struct Csr {
    std::vector<std::int64_t> offsets;
    std::vector<std::uint32_t> targets;
};

Csr build_adjacency(const TypedDigraph& graph) {
    Csr csr;
    csr.offsets.assign(static_cast<std::size_t>(graph.n) + 1, 0);
    for (const Arc& arc : graph.arcs)
        ++csr.offsets[arc.src + 1];
    for (std::size_t v = 1; v < csr.offsets.size(); ++v)
        csr.offsets[v] += csr.offsets[v - 1];
    csr.targets.resize(graph.arcs.size());
    std::vector<std::int64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
    for (const Arc& arc : graph.arcs)
        csr.targets[static_cast<std::size_t>(cursor[arc.src]++)] = arc.dst;
    return csr;
}

} // namespace

SccResult tarjan_scc(const TypedDigraph& graph) {
    const std::int64_t n = graph.n;
    SccResult result;
    result.component_id.assign(static_cast<std::size_t>(n), -1);
    if (n == 0) {
        result.largest_fraction = 0.0;
        return result;
    }
    const Csr csr = build_adjacency(graph);

    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(static_cast<std::size_t>(n), kUnvisited);
    std::vector<std::uint32_t> low_link(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<std::uint32_t> scc_stack;

    struct Frame {
        std::uint32_t vertex;
        std::int64_t next_edge;
    };
    std::vector<Frame> dfs_stack;
    std::uint32_t next_index = 0;
    std::int32_t component_count = 0;
    std::vector<std::int64_t> sizes;

    for (std::int64_t root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != kUnvisited)
            continue;
        dfs_stack.push_back({static_cast<std::uint32_t>(root), csr.offsets[root]});
        index[static_cast<std::size_t>(root)] = low_link[static_cast<std::size_t>(root)] =
            next_index++;
        on_stack[static_cast<std::size_t>(root)] = true;
        scc_stack.push_back(static_cast<std::uint32_t>(root));

        while (!dfs_stack.empty()) {
            Frame& frame = dfs_stack.back();
            const std::uint32_t v = frame.vertex;
            if (frame.next_edge < csr.offsets[v + 1]) {
                const std::uint32_t w = csr.targets[static_cast<std::size_t>(frame.next_edge++)];
                if (index[w] == kUnvisited) {
                    index[w] = low_link[w] = next_index++;
                    on_stack[w] = true;
                    scc_stack.push_back(w);
                    dfs_stack.push_back({w, csr.offsets[w]});
                } else if (on_stack[w]) {
                    low_link[v] = std::min(low_link[v], index[w]);
                }
                continue;
            }
            dfs_stack.pop_back();
            if (!dfs_stack.empty()) {
                const std::uint32_t parent = dfs_stack.back().vertex;
                low_link[parent] = std::min(low_link[parent], low_link[v]);
            }
            if (low_link[v] == index[v]) {
                std::int64_t size = 0;
                std::uint32_t w;
                do {
                    w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[w] = false;
                    result.component_id[w] = component_count;
                    ++size;
                } while (w != v);
                sizes.push_back(size);
                ++component_count;
            }
        }
    }

    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    result.component_sizes = std::move(sizes);
    result.largest_fraction =
        static_cast<double>(result.component_sizes.front()) / static_cast<double>(n);
    return result;
}

ArcTypeCounts arc_type_counts(const TypedDigraph& graph) {
    IntMatrix counts(graph.num_types, graph.num_types, 0);
    for (const Arc& arc : graph.arcs)
        ++counts(graph.types[arc.src], graph.types[arc.dst]);
    return ArcTypeCounts{std::move(counts)};
}

namespace {

/// Perron root of a non-negative matrix by normalized power iteration on
/// M + I; the shift keeps the iteration from cycling on imprimitive
/// matrices (several eigenvalues sharing the dominant modulus).
double spectral_radius(const Matrix& m) {
    const int s = m.rows();
    std::vector<double> x(static_cast<std::size_t>(s), 1.0);
    std::vector<double> y(static_cast<std::size_t>(s), 0.0);
    double shifted = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        double norm = 0.0;
        for (int i = 0; i < s; ++i) {
            double acc = x[static_cast<std::size_t>(i)];
            for (int j = 0; j < s; ++j)
                acc += m(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = acc;
            norm = std::max(norm, acc);
        }
        for (double& v : y)
            v /= norm;
        x.swap(y);
        if (std::abs(norm - shifted) <= 1e-13 * std::max(1.0, norm))
            return norm - 1.0;
        shifted = norm;
    }
    return shifted - 1.0;
}

} // namespace

FixedPointResult solve_survival(const Kernel& kernel, const TypeDistribution& dist,
                                Direction direction, Coupling coupling, double tol,
                                std::int64_t max_iter) {
    if (!(tol > 0.0))
        throw std::invalid_argument("tol must be positive");
    if (max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");
    const int s = dist.size();
    if (kernel.size() != s)
        throw std::invalid_argument("kernel and distribution support sizes differ");

    // M(x, t) = kappa(x, t) q_t for the minus direction, kappa(t, x) q_t for plus.
    Matrix mean_offspring(s, s);
    for (int x = 0; x < s; ++x)
        for (int t = 0; t < s; ++t)
            mean_offspring(x, t) =
                (direction == Direction::minus ? kernel.kappa(x, t) : kernel.kappa(t, x)) *
                dist[t];
    std::vector<double> row_sum(static_cast<std::size_t>(s), 0.0);
    for (int x = 0; x < s; ++x)
        for (int t = 0; t < s; ++t)
            row_sum[static_cast<std::size_t>(x)] += mean_offspring(x, t);

    FixedPointResult result;

    // At or below criticality the largest fixed point is exactly zero
    // (Poisson offspring cannot be deterministic), and the update-norm stop
    // would otherwise crawl at rate update ~ pi^2/2 near the critical point.
    // Coupled mode gates on the Perron root of the mean-offspring matrix;
    // the decoupled scalar equations gate on their own rates.
    if (coupling == Coupling::coupled && spectral_radius(mean_offspring) <= 1.0) {
        result.pi.assign(static_cast<std::size_t>(s), 0.0);
        result.converged = true;
        return result;
    }
    std::vector<bool> pinned_zero(static_cast<std::size_t>(s), false);
    if (coupling == Coupling::as_written) {
        for (int x = 0; x < s; ++x)
            pinned_zero[static_cast<std::size_t>(x)] = row_sum[static_cast<std::size_t>(x)] <= 1.0;
        if (std::all_of(pinned_zero.begin(), pinned_zero.end(), [](bool p) { return p; })) {
            result.pi.assign(static_cast<std::size_t>(s), 0.0);
            result.converged = true;
            return result;
        }
    }
    std::vector<double> pi(static_cast<std::size_t>(s), 1.0);
    std::vector<double> next(static_cast<std::size_t>(s), 0.0);
    for (int x = 0; x < s; ++x)
        if (pinned_zero[static_cast<std::size_t>(x)])
            pi[static_cast<std::size_t>(x)] = 0.0;
    const auto apply = [&](const std::vector<double>& from, std::vector<double>& to) {
        for (int x = 0; x < s; ++x) {
            if (pinned_zero[static_cast<std::size_t>(x)]) {
                to[static_cast<std::size_t>(x)] = 0.0;
                continue;
            }
            double exponent = 0.0;
            if (coupling == Coupling::coupled) {
                for (int t = 0; t < s; ++t)
                    exponent += mean_offspring(x, t) * from[static_cast<std::size_t>(t)];
            } else {
                exponent = row_sum[static_cast<std::size_t>(x)] * from[static_cast<std::size_t>(x)];
            }
            to[static_cast<std::size_t>(x)] = -std::expm1(-exponent);
        }
    };

    for (std::int64_t it = 1; it <= max_iter; ++it) {
        apply(pi, next);
        double delta = 0.0;
        for (int x = 0; x < s; ++x) {
            const std::size_t i = static_cast<std::size_t>(x);
            delta = std::max(delta, std::abs(next[i] - pi[i]));
            if (next[i] > pi[i] + 1e-12)
                result.monotone = false;
        }
        pi.swap(next);
        result.iterations = it;
        if (delta < tol) {
            result.converged = true;
            break;
        }
    }

    for (double& value : pi)
        if (value < 1e-10)
            value = 0.0;

    apply(pi, next);
    double residual = 0.0;
    for (int x = 0; x < s; ++x)
        residual = std::max(residual, std::abs(pi[static_cast<std::size_t>(x)] -
                                               next[static_cast<std::size_t>(x)]));
    result.residual = residual;
    result.pi = std::move(pi);
    return result;
}

SurvivalSolution giant_alpha(const Kernel& kernel, const TypeDistribution& dist, Coupling coupling,
                             double tol, std::int64_t max_iter) {
    FixedPointResult minus = solve_survival(kernel, dist, Direction::minus, coupling, tol, max_iter);
    FixedPointResult plus = solve_survival(kernel, dist, Direction::plus, coupling, tol, max_iter);
    SurvivalSolution solution;
    solution.alpha = 0.0;
    for (int x = 0; x < dist.size(); ++x)
        solution.alpha +=
            plus.pi[static_cast<std::size_t>(x)] * minus.pi[static_cast<std::size_t>(x)] * dist[x];
    solution.pi_minus = std::move(minus.pi);
    solution.pi_plus = std::move(plus.pi);
    solution.iterations = std::max(minus.iterations, plus.iterations);
    solution.residual = std::max(minus.residual, plus.residual);
    solution.converged = minus.converged && plus.converged;
    return solution;
}

bool check_irreducibility(const Kernel& kernel) {
    const int s = kernel.size();
    TypedDigraph support;
    support.n = s;
    support.num_types = 1;
    support.types.assign(static_cast<std::size_t>(s), 0);
    for (int t = 0; t < s; ++t)
        for (int u = 0; u < s; ++u)
            if (t != u && kernel.kappa(t, u) > 0.0)
                support.arcs.push_back(
                    {static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(u)});
    return tarjan_scc(support).component_sizes.size() == 1;
}

} // namespace rdg
