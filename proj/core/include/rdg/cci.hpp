#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rdg/matrix.hpp"
#include "rdg/rng.hpp"
#include "rdg/types.hpp"

namespace rdg {

/// Inputs of the cell-cell interaction model: arc rate mu, vertex-type pmf,
/// joint colour pmf over (out-colour, in-colour), and the 0/1 indicator
/// matrices saying which types admit which colours.
struct CCIInputs {
    double mu = 0;
    TypeDistribution type_dist;
    Matrix colour_pmf;       // K_out x K_in
    IntMatrix out_indicator; // S x K_out
    IntMatrix in_indicator;  // S x K_in
};

/// Shape, pmf and indicator checks; throws OrphanColour when a colour with
/// positive mass admits no type on either side.
CCIInputs validate_cci_inputs(CCIInputs inputs);

/// Acceptance fractions lambda_i = sum_k q_k I(k,i) and
/// rho_j = sum_k q_k J(k,j).
struct Acceptance {
    std::vector<double> lambda;
    std::vector<double> rho;
};

Acceptance compute_acceptance(const CCIInputs& inputs);

/// The kernel mu * sum_ij p_ij I(t,i) J(s,j) / (lambda_i rho_j). Terms with
/// p_ij = 0 contribute nothing even if lambda_i or rho_j vanishes.
Kernel cci_kernel(const CCIInputs& inputs);

/// Places exactly floor(mu*n) coloured arcs: colour i.i.d. from the pmf,
/// source uniform over the vertices admitting the out-colour, target uniform
/// and independent over the vertices admitting the in-colour. Self-loops and
/// duplicates are permitted. Throws EmptyAdmissibleSet if a drawn colour has
/// no admissible source or target in the realization.
TypedMultiDigraph generate_cci(std::int64_t n, const CCIInputs& inputs, GenSeed seed);

/// Accounting of the arcs removed by simplify: S_t self-loops per type and
/// M_ts removed duplicate copies per ordered type pair, so that
/// kept + loops + duplicates equals the multigraph arc count.
struct SimplificationReport {
    std::vector<std::int64_t> self_loops_per_type;
    IntMatrix multi_arcs_per_pair;
    std::int64_t kept_arcs = 0;

    std::int64_t self_loops() const;
    std::int64_t multi_arcs() const;
};

/// Keeps the first occurrence of each distinct non-loop arc.
std::pair<TypedDigraph, SimplificationReport> simplify(const TypedMultiDigraph& graph);

} // namespace rdg
