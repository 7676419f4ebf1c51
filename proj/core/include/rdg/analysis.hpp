#pragma once

#include <cstdint>
#include <vector>

#include "rdg/matrix.hpp"
#include "rdg/types.hpp"

namespace rdg {

/// Strongly connected component decomposition.
struct SccResult {
    std::vector<std::int32_t> component_id;  // per vertex
    std::vector<std::int64_t> component_sizes; // descending
    double largest_fraction = 0;
};

/// Tarjan's algorithm with an explicit stack (no recursion-depth limit).
/// O(n + m).
SccResult tarjan_scc(const TypedDigraph& graph);

/// A(t, s): number of arcs from type-t to type-s vertices.
struct ArcTypeCounts {
    IntMatrix counts;
};

ArcTypeCounts arc_type_counts(const TypedDigraph& graph);

enum class Direction { minus, plus };
enum class Coupling { coupled, as_written };

/// One direction of the survival fixed point.
struct FixedPointResult {
    std::vector<double> pi;
    std::int64_t iterations = 0;
    double residual = 0;
    bool converged = false;
    bool monotone = true; // iterates non-increasing entrywise from all-ones
};

/// Largest fixed point of pi_x = 1 - exp(-sum_t M_{x,t} pi_t) with
/// M_{x,t} = kappa(x,t) q_t (minus) or kappa(t,x) q_t (plus). Iterates from
/// all-ones, where the monotone map converges to the largest fixed point.
/// In as_written mode the exponent uses pi_x instead of pi_t, decoupling the
/// system into S scalar equations. Entries below 1e-10 are reported as 0.
FixedPointResult solve_survival(const Kernel& kernel, const TypeDistribution& dist,
                                Direction direction, Coupling coupling, double tol = 1e-12,
                                std::int64_t max_iter = 1000000);

/// Both survival directions combined into the asymptotic giant SCC fraction
/// alpha = sum_x pi+_x pi-_x q_x.
struct SurvivalSolution {
    std::vector<double> pi_minus;
    std::vector<double> pi_plus;
    double alpha = 0;
    std::int64_t iterations = 0; // max over the two directions
    double residual = 0;         // max over the two directions
    bool converged = false;
};

SurvivalSolution giant_alpha(const Kernel& kernel, const TypeDistribution& dist, Coupling coupling,
                             double tol = 1e-12, std::int64_t max_iter = 1000000);

/// Whether the S-node digraph with arc (t,s) iff kappa(t,s) > 0 is one
/// strongly connected component.
bool check_irreducibility(const Kernel& kernel);

} // namespace rdg
