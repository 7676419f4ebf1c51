#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rdg/rng.hpp"
#include "rdg/types.hpp"

namespace rdg {

/// Index space over the admissible ordered vertex pairs between a source
/// group and a target group. When the groups coincide the diagonal is
/// excluded from the index bijection rather than by rejection, so capacity
/// accounting stays exact.
struct PairPool {
    std::int64_t source_count = 0;
    std::int64_t target_count = 0;
    bool diagonal_excluded = false;

    std::int64_t capacity() const {
        return source_count * target_count - (diagonal_excluded ? source_count : 0);
    }

    /// Bijection {0..capacity-1} -> (source offset, target offset).
    std::pair<std::int64_t, std::int64_t> pair_at(std::int64_t index) const {
        if (!diagonal_excluded)
            return {index / target_count, index % target_count};
        const std::int64_t row = index / (target_count - 1);
        const std::int64_t rem = index % (target_count - 1);
        return {row, rem < row ? rem : rem + 1};
    }
};

PairPool make_pair_pool(std::int64_t source_count, std::int64_t target_count,
                        bool diagonal_excluded);

/// n i.i.d. draws from dist; deterministic given seed.
std::vector<int> assign_types(std::int64_t n, const TypeDistribution& dist, GenSeed seed);

/// m distinct indices uniform over m-subsets of {0..capacity-1}; the whole
/// index set when m >= capacity. Expected O(m) for m <= capacity/2 via
/// hash-set rejection, partial Fisher-Yates on the materialized pool
/// otherwise. `draws` (optional) accumulates the number of RNG draws spent.
std::vector<std::int64_t> sample_pairs_without_replacement(const PairPool& pool, std::int64_t m,
                                                           GenSeed seed,
                                                           std::uint64_t* draws = nullptr);

struct IrdDiagnostics {
    std::int64_t capped_type_pairs = 0; // ordered pairs with kappa_n/n > 1
};

/// Naive per-pair generator: arc (v, w) appears independently with
/// probability min(kappa_n(T_v, T_w)/n, 1). O(n^2) time.
TypedDigraph generate_ird(std::int64_t n, const TypeDistribution& dist, const Kernel& kernel,
                          GenSeed seed, IrdDiagnostics* diagnostics = nullptr);

struct ArdDiagnostics {
    std::uint64_t sample_draws = 0;
    std::int64_t requested_arcs = 0; // sum of table entries
    std::int64_t placed_arcs = 0;
};

/// Places exactly min(Lambda(t,s), capacity) arcs per ordered type pair,
/// sampling uniformly without replacement. Pairs are processed row-major,
/// each on an independent substream keyed by (seed, t, s). O(n + sum Lambda).
TypedDigraph generate_ard(std::int64_t n, const TypeDistribution& dist, const ArcCountTable& table,
                          GenSeed seed, ArdDiagnostics* diagnostics = nullptr);

/// Fast inhomogeneous generator: generate_ard with the arc budgets
/// floor(kappa q_t q_s n) of the stable pairs. O(n + m) where m is the total
/// arc count.
TypedDigraph generate_ird_fast(std::int64_t n, const TypeDistribution& dist, const Kernel& kernel,
                               double tau, GenSeed seed, ArdDiagnostics* diagnostics = nullptr);

/// Constant kernel of the directed Gilbert model (single type).
Kernel make_gilbert_kernel(double lambda);

/// Kernel n * pi of a stochastic block model with connection probabilities pi.
Kernel make_sbm_kernel(const Matrix& pi, std::int64_t n);

/// Chung-Lu kernel t*s / E[W]; type label t stands for weight value t.
Kernel make_chung_lu_kernel(const TypeDistribution& weights);

/// Arc budgets floor(pi(t,s) q_t q_s n^2) of the microcanonical stochastic
/// block model.
ArcCountTable msbm_arc_table(const Matrix& pi, const TypeDistribution& dist, std::int64_t n);

} // namespace rdg
