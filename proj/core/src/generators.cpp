#include "rdg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rdg/errors.hpp"
#include "rdg/numeric.hpp"

namespace rdg {

namespace {

/// Flat linear-probing set for the rejection sampler. Keys are pool indices,
/// so the all-ones word is free as the empty slot marker.
class IndexSet {
  public:
    explicit IndexSet(std::int64_t expected) {
        std::size_t size = 16;
        while (size < static_cast<std::size_t>(expected) * 2)
            size <<= 1;
        mask_ = size - 1;
        slots_.assign(size, kEmpty);
    }

    bool insert(std::uint64_t key) {
        std::size_t slot = (key * 0x9E3779B97F4A7C15ull) & mask_;
        for (;;) {
            if (slots_[slot] == kEmpty) {
                slots_[slot] = key;
                return true;
            }
            if (slots_[slot] == key)
                return false;
            slot = (slot + 1) & mask_;
        }
    }

  private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
    std::vector<std::uint64_t> slots_;
    std::size_t mask_ = 0;
};

} // namespace

PairPool make_pair_pool(std::int64_t source_count, std::int64_t target_count,
                        bool diagonal_excluded) {
    if (source_count < 0 || target_count < 0)
        throw std::invalid_argument("pair pool group sizes must be non-negative");
    if (diagonal_excluded && source_count != target_count)
        throw std::invalid_argument("diagonal exclusion requires equal group sizes");
    return PairPool{source_count, target_count, diagonal_excluded};
}

std::vector<int> assign_types(std::int64_t n, const TypeDistribution& dist, GenSeed seed) {
    if (n < 1)
        throw std::invalid_argument("assign_types requires n >= 1");
    const int s = dist.size();
    std::vector<double> cdf(s);
    double acc = 0.0;
    for (int t = 0; t < s; ++t) {
        acc += dist[t];
        cdf[t] = acc;
    }
    cdf[s - 1] = 1.0; // guard against fp shortfall; uniform01() < 1 always

    Rng rng(derive_seed(seed.value, kStreamTypes));
    std::vector<int> types(static_cast<std::size_t>(n));
    for (auto& type : types) {
        const double u = rng.uniform01();
        type = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    }
    return types;
}

std::vector<std::int64_t> sample_pairs_without_replacement(const PairPool& pool, std::int64_t m,
                                                           GenSeed seed, std::uint64_t* draws) {
    if (m < 0)
        throw std::invalid_argument("sample size must be non-negative");
    const std::int64_t capacity = pool.capacity();
    std::vector<std::int64_t> result;
    if (capacity == 0 || m == 0)
        return result;
    if (m >= capacity) {
        // Demand exceeds the pool: take the entire set.
        result.resize(static_cast<std::size_t>(capacity));
        std::iota(result.begin(), result.end(), std::int64_t{0});
        return result;
    }

    Rng rng(seed.value);
    std::uint64_t local_draws = 0;
    if (m <= capacity / 2) {
        IndexSet chosen(m);
        result.reserve(static_cast<std::size_t>(m));
        while (static_cast<std::int64_t>(result.size()) < m) {
            const std::uint64_t idx = rng.below(static_cast<std::uint64_t>(capacity));
            ++local_draws;
            if (chosen.insert(idx))
                result.push_back(static_cast<std::int64_t>(idx));
        }
    } else {
        // Dense demand: capacity < 2m here, so materializing stays O(m).
        std::vector<std::int64_t> indices(static_cast<std::size_t>(capacity));
        std::iota(indices.begin(), indices.end(), std::int64_t{0});
        for (std::int64_t i = 0; i < m; ++i) {
            const auto j =
                i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(capacity - i)));
            ++local_draws;
            std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
        }
        indices.resize(static_cast<std::size_t>(m));
        result = std::move(indices);
    }
    if (draws)
        *draws += local_draws;
    return result;
}

TypedDigraph generate_ird(std::int64_t n, const TypeDistribution& dist, const Kernel& kernel,
                          GenSeed seed, IrdDiagnostics* diagnostics) {
    if (n < 2)
        throw std::invalid_argument("generate_ird requires n >= 2");
    const int s = dist.size();
    if (kernel.size() != s)
        throw std::invalid_argument("kernel and distribution support sizes differ");

    std::vector<double> prob(static_cast<std::size_t>(s) * s);
    std::int64_t capped = 0;
    for (int t = 0; t < s; ++t) {
        for (int u = 0; u < s; ++u) {
            const double raw = kernel.effective(t, u) / static_cast<double>(n);
            if (raw > 1.0)
                ++capped;
            prob[static_cast<std::size_t>(t) * s + u] = std::min(raw, 1.0);
        }
    }
    if (diagnostics)
        diagnostics->capped_type_pairs = capped;

    TypedDigraph graph;
    graph.n = n;
    graph.num_types = s;
    graph.types = assign_types(n, dist, seed);

    Rng rng(derive_seed(seed.value, kStreamIrdArcs));
    for (std::int64_t v = 0; v < n; ++v) {
        const double* row = prob.data() + static_cast<std::size_t>(graph.types[v]) * s;
        for (std::int64_t w = 0; w < n; ++w) {
            if (v == w)
                continue;
            if (rng.bernoulli(row[graph.types[w]]))
                graph.arcs.push_back(
                    {static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(w)});
        }
    }
    return graph;
}

TypedDigraph generate_ard(std::int64_t n, const TypeDistribution& dist, const ArcCountTable& table,
                          GenSeed seed, ArdDiagnostics* diagnostics) {
    if (n < 2)
        throw std::invalid_argument("generate_ard requires n >= 2");
    const int s = dist.size();
    if (table.size() != s)
        throw std::invalid_argument("arc count table and distribution support sizes differ");

    TypedDigraph graph;
    graph.n = n;
    graph.num_types = s;
    graph.types = assign_types(n, dist, seed);

    std::vector<std::vector<std::uint32_t>> members(static_cast<std::size_t>(s));
    for (std::int64_t v = 0; v < n; ++v)
        members[static_cast<std::size_t>(graph.types[v])].push_back(
            static_cast<std::uint32_t>(v));

    ArdDiagnostics local;
    std::int64_t placeable = 0;
    for (int t = 0; t < s; ++t)
        for (int u = 0; u < s; ++u) {
            const auto nt = static_cast<std::int64_t>(members[static_cast<std::size_t>(t)].size());
            const auto nu = static_cast<std::int64_t>(members[static_cast<std::size_t>(u)].size());
            placeable += std::min(table.counts(t, u), nt * nu - (t == u ? nt : 0));
        }
    graph.arcs.reserve(static_cast<std::size_t>(placeable));
    for (int t = 0; t < s; ++t) {
        for (int u = 0; u < s; ++u) {
            const std::int64_t requested = table.counts(t, u);
            local.requested_arcs += requested;
            if (requested == 0)
                continue;
            const auto& sources = members[static_cast<std::size_t>(t)];
            const auto& targets = members[static_cast<std::size_t>(u)];
            const PairPool pool{static_cast<std::int64_t>(sources.size()),
                                static_cast<std::int64_t>(targets.size()), t == u};
            if (pool.capacity() == 0)
                continue; // absent types: demand silently unmet
            const GenSeed pair_seed{derive_seed(seed.value, kStreamPair,
                                                static_cast<std::uint64_t>(t),
                                                static_cast<std::uint64_t>(u))};
            const auto indices =
                sample_pairs_without_replacement(pool, requested, pair_seed, &local.sample_draws);
            for (const std::int64_t index : indices) {
                const auto [i, j] = pool.pair_at(index);
                graph.arcs.push_back({sources[static_cast<std::size_t>(i)],
                                      targets[static_cast<std::size_t>(j)]});
            }
            local.placed_arcs += static_cast<std::int64_t>(indices.size());
        }
    }
    if (diagnostics)
        *diagnostics = local;
    return graph;
}

TypedDigraph generate_ird_fast(std::int64_t n, const TypeDistribution& dist, const Kernel& kernel,
                               double tau, GenSeed seed, ArdDiagnostics* diagnostics) {
    return generate_ard(n, dist, kappa_to_lambda(kernel, dist, n, tau), seed, diagnostics);
}

Kernel make_gilbert_kernel(double lambda) {
    if (lambda < 0.0)
        throw std::invalid_argument("lambda must be non-negative");
    return make_kernel(Matrix(1, 1, lambda));
}

Kernel make_sbm_kernel(const Matrix& pi, std::int64_t n) {
    if (pi.rows() != pi.cols())
        throw std::invalid_argument("pi must be square");
    if (n < 1)
        throw std::invalid_argument("make_sbm_kernel requires n >= 1");
    Matrix values(pi.rows(), pi.cols());
    for (int t = 0; t < pi.rows(); ++t) {
        for (int u = 0; u < pi.cols(); ++u) {
            if (pi(t, u) < 0.0 || pi(t, u) > 1.0)
                throw std::invalid_argument("pi entries must lie in [0, 1]");
            values(t, u) = static_cast<double>(n) * pi(t, u);
        }
    }
    return make_kernel(std::move(values));
}

Kernel make_chung_lu_kernel(const TypeDistribution& weights) {
    const int s = weights.size();
    double mean_weight = 0.0;
    for (int t = 0; t < s; ++t)
        mean_weight += static_cast<double>(t + 1) * weights[t];
    Matrix values(s, s);
    for (int t = 0; t < s; ++t)
        for (int u = 0; u < s; ++u)
            values(t, u) = static_cast<double>(t + 1) * static_cast<double>(u + 1) / mean_weight;
    return make_kernel(std::move(values));
}

ArcCountTable msbm_arc_table(const Matrix& pi, const TypeDistribution& dist, std::int64_t n) {
    if (pi.rows() != dist.size() || pi.cols() != dist.size())
        throw std::invalid_argument("pi and distribution support sizes differ");
    const int s = dist.size();
    IntMatrix counts(s, s, 0);
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (int t = 0; t < s; ++t)
        for (int u = 0; u < s; ++u)
            counts(t, u) = floor_count(pi(t, u) * dist[t] * dist[u] * n2);
    return ArcCountTable{std::move(counts)};
}

} // namespace rdg
