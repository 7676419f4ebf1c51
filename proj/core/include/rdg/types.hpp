#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rdg/matrix.hpp"

namespace rdg {

/// Finite discrete pmf over type labels 1..S. Entry i holds q_{i+1}; all
/// in-memory type values are 0-based indices, labels become 1-based only at
/// file boundaries.
struct TypeDistribution {
    std::vector<double> probs;

    int size() const { return static_cast<int>(probs.size()); }
    double operator[](int t) const { return probs[t]; }
};

/// Validates a raw non-negative vector into a TypeDistribution.
/// Throws NegativeMass or NotNormalized (sum must be 1 within 1e-12 unless
/// renormalize is set; silent renormalization would mask config errors).
TypeDistribution validate_distribution(const std::vector<double>& probs, bool renormalize = false);

/// Kernel kappa(t, s) >= 0 with an optional multiplicative perturbation
/// phi_n; the effective kernel is kappa * (1 + phi_n).
struct Kernel {
    Matrix values;
    std::optional<Matrix> perturbation;

    int size() const { return values.rows(); }
    double kappa(int t, int s) const { return values(t, s); }
    double effective(int t, int s) const {
        return perturbation ? values(t, s) * (1.0 + (*perturbation)(t, s)) : values(t, s);
    }
};

/// Builds a kernel, checking that kappa and the effective kernel are
/// entrywise non-negative.
Kernel make_kernel(Matrix values, std::optional<Matrix> perturbation = std::nullopt);

/// Non-negative integer arc budget per ordered type pair.
struct ArcCountTable {
    IntMatrix counts;

    int size() const { return counts.rows(); }
};

ArcCountTable make_arc_count_table(IntMatrix counts);

struct Arc {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;

    bool operator==(const Arc&) const = default;
};

/// Simple typed digraph: no self-loops, no duplicate arcs. Vertices and type
/// values are 0-based in memory.
struct TypedDigraph {
    std::int64_t n = 0;
    int num_types = 0;
    std::vector<int> types;
    std::vector<Arc> arcs;
};

/// Multigraph variant: self-loops and duplicate arcs permitted.
struct TypedMultiDigraph {
    std::int64_t n = 0;
    int num_types = 0;
    std::vector<int> types;
    std::vector<Arc> arcs;
};

/// Per-type stability classification at size n and tolerance tau.
/// u_up is the 1-based threshold label: type label t is stable iff t < u_up,
/// so u_up == S + 1 means every type is stable.
struct StabilityReport {
    std::int64_t n = 0;
    double tau = 0;
    int u_up = 0;
    std::vector<bool> stable; // index t-1
};

/// Exact suffix scan over the finite support: u_up is the minimal label t
/// such that q_s < n^(tau-1) for every s >= t.
StabilityReport classify_stability(const TypeDistribution& dist, std::int64_t n, double tau);

/// Closed-form upper bound ceil(n^((1-tau)/(1+delta))) on the number of
/// stable types, valid whenever q_t <= t^(-1-delta).
std::int64_t stable_count_bound(double delta, std::int64_t n, double tau);

/// Arc budgets floor(kappa(t,s) * q_t * q_s * n) for pairs of stable types,
/// zero whenever either type is unstable at tolerance tau.
ArcCountTable kappa_to_lambda(const Kernel& kernel, const TypeDistribution& dist, std::int64_t n,
                              double tau);

/// True iff kappa(t,s) <= c * n^(-1/2+alpha) / sqrt(q_t q_s) for every pair
/// with at least one unstable type; vacuously true when all types are
/// stable. Throws InvalidAlpha unless alpha lies in (1/2 - tau/2, 1/2).
bool check_kernel_bound(const Kernel& kernel, const TypeDistribution& dist, std::int64_t n,
                        double tau, double alpha, double c);

} // namespace rdg
