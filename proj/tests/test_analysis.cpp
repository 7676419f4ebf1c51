#include "doctest.h"

#include <cmath>
#include <numeric>

#include "rdg/analysis.hpp"
#include "rdg/cci.hpp"
#include "rdg/generators.hpp"
#include "rdg/rng.hpp"

#include "oracles.hpp"

using namespace rdg;

namespace {

TypedDigraph graph_from_arcs(std::int64_t n, std::vector<Arc> arcs) {
    TypedDigraph graph;
    graph.n = n;
    graph.num_types = 1;
    graph.types.assign(static_cast<std::size_t>(n), 0);
    graph.arcs = std::move(arcs);
    return graph;
}

} // namespace

TEST_CASE("tarjan_scc on an empty arc set") {
    const SccResult result = tarjan_scc(graph_from_arcs(4, {}));
    CHECK(result.component_sizes.size() == 4);
    CHECK(result.largest_fraction == doctest::Approx(0.25));
}

TEST_CASE("tarjan_scc on a directed cycle") {
    const SccResult result = tarjan_scc(graph_from_arcs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    REQUIRE(result.component_sizes.size() == 1);
    CHECK(result.component_sizes[0] == 5);
    CHECK(result.largest_fraction == doctest::Approx(1.0));
}

TEST_CASE("tarjan_scc ids partition the vertex set") {
    const auto graph = generate_ird(300, validate_distribution({1.0}), make_gilbert_kernel(1.5),
                                    GenSeed{5});
    const SccResult result = tarjan_scc(graph);
    CHECK(std::accumulate(result.component_sizes.begin(), result.component_sizes.end(),
                          std::int64_t{0}) == graph.n);
    for (std::int32_t id : result.component_id) {
        CHECK(id >= 0);
        CHECK(id < static_cast<std::int32_t>(result.component_sizes.size()));
    }
    CHECK(std::is_sorted(result.component_sizes.begin(), result.component_sizes.end(),
                         std::greater<>()));
}

TEST_CASE("tarjan_scc agrees with the reachability oracle on random digraphs") {
    Rng shape_rng(909);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(shape_rng.below(49));
        const double lambda = 0.3 + static_cast<double>(shape_rng.below(30)) / 10.0;
        const auto graph = generate_ird(n, validate_distribution({1.0}),
                                        make_gilbert_kernel(lambda), GenSeed{derive_seed(13, trial)});
        const SccResult result = tarjan_scc(graph);
        const auto expected = oracles::scc_partition(n, graph.arcs);
        const auto actual = oracles::canonical_partition(result.component_id);
        std::vector<std::int32_t> expected32(expected.begin(), expected.end());
        CHECK(actual == oracles::canonical_partition(expected32));
    }
}

TEST_CASE("tarjan_scc handles deep path graphs without recursion limits") {
    const std::int64_t n = 200000;
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(n - 1));
    for (std::int64_t v = 0; v + 1 < n; ++v)
        arcs.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v + 1)});
    const SccResult result = tarjan_scc(graph_from_arcs(n, std::move(arcs)));
    CHECK(result.component_sizes.size() == static_cast<std::size_t>(n));
}

TEST_CASE("arc_type_counts on ARD output equals the table") {
    IntMatrix counts(2, 2, 0);
    counts(0, 0) = 10;
    counts(0, 1) = 7;
    counts(1, 0) = 3;
    counts(1, 1) = 12;
    const auto graph = generate_ard(200, validate_distribution({0.5, 0.5}),
                                    make_arc_count_table(counts), GenSeed{2});
    const ArcTypeCounts observed = arc_type_counts(graph);
    for (int t = 0; t < 2; ++t)
        for (int s = 0; s < 2; ++s)
            CHECK(observed.counts(t, s) == counts(t, s));
}

TEST_CASE("arc_type_counts of an empty graph is the zero matrix") {
    TypedDigraph graph = graph_from_arcs(5, {});
    graph.num_types = 3;
    graph.types = {0, 1, 2, 1, 0};
    const ArcTypeCounts observed = arc_type_counts(graph);
    for (std::int64_t c : observed.counts.data())
        CHECK(c == 0);
}

TEST_CASE("arc_type_counts from IRD stay near the conditional binomial mean") {
    const TypeDistribution dist = validate_distribution({0.4, 0.6});
    const Kernel kernel = make_kernel(Matrix(2, 2, 2.0));
    const std::int64_t n = 2000;
    const int seeds = 100;
    Matrix sums(2, 2, 0.0);
    for (int s = 0; s < seeds; ++s) {
        const auto graph = generate_ird(n, dist, kernel, GenSeed{derive_seed(500, s)});
        const ArcTypeCounts counts = arc_type_counts(graph);
        for (int t = 0; t < 2; ++t)
            for (int u = 0; u < 2; ++u)
                sums(t, u) += static_cast<double>(counts.counts(t, u));
    }
    for (int t = 0; t < 2; ++t)
        for (int u = 0; u < 2; ++u) {
            const double mean_count = 2.0 * dist[t] * dist[u] * static_cast<double>(n);
            const double variance = mean_count; // binomial with tiny p
            const double sd_of_mean = std::sqrt(variance / seeds);
            CHECK(std::abs(sums(t, u) / seeds - mean_count) < 3.5 * sd_of_mean + 3.0);
        }
}

TEST_CASE("solve_survival zero kernel") {
    const FixedPointResult result = solve_survival(make_kernel(Matrix(2, 2, 0.0)),
                                                   validate_distribution({0.5, 0.5}),
                                                   Direction::minus, Coupling::coupled);
    CHECK(result.converged);
    for (double x : result.pi)
        CHECK(x == 0.0);
}

TEST_CASE("solve_survival single type against the bisection oracle") {
    for (const double c : {0.5, 1.0, 1.5, 2.0, 4.0}) {
        const double expected = oracles::survival_bisection(c);
        for (const Coupling coupling : {Coupling::coupled, Coupling::as_written}) {
            const FixedPointResult result =
                solve_survival(make_gilbert_kernel(c), validate_distribution({1.0}),
                               Direction::minus, coupling);
            CHECK(result.converged);
            CHECK(result.monotone);
            CHECK(result.pi[0] == doctest::Approx(expected).epsilon(1e-6));
            CHECK(result.residual <= 10e-12);
        }
    }
}

TEST_CASE("solve_survival subcritical solutions snap to zero") {
    const FixedPointResult result = solve_survival(make_gilbert_kernel(0.5),
                                                   validate_distribution({1.0}), Direction::minus,
                                                   Coupling::coupled);
    CHECK(result.pi[0] == 0.0);
}

TEST_CASE("solve_survival stays within the unit cube and meets its residual bound") {
    const TypeDistribution dist = validate_distribution({0.1, 0.15, 0.25, 0.5});
    Matrix kappa(4, 4);
    Rng rng(4242);
    for (double& v : kappa.data())
        v = static_cast<double>(rng.below(60)) / 10.0;
    for (const Direction direction : {Direction::minus, Direction::plus}) {
        const FixedPointResult result =
            solve_survival(make_kernel(kappa), dist, direction, Coupling::coupled, 1e-12, 1000000);
        CHECK(result.converged);
        CHECK(result.monotone);
        for (double x : result.pi) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
        CHECK(result.residual <= 10e-12);
    }
}

TEST_CASE("solve_survival reports non-convergence with the best iterate") {
    const FixedPointResult result = solve_survival(make_gilbert_kernel(2.0),
                                                   validate_distribution({1.0}), Direction::minus,
                                                   Coupling::coupled, 1e-12, 1);
    CHECK_FALSE(result.converged);
    CHECK(result.iterations == 1);
    CHECK(result.pi.size() == 1);
    CHECK(result.residual > 0.0);
}

TEST_CASE("solve_survival handles imprimitive offspring structure") {
    // Two types feeding only each other: the mean-offspring matrix has a
    // plus/minus eigenvalue pair of equal modulus.
    const TypeDistribution dist = validate_distribution({0.5, 0.5});
    Matrix critical(2, 2, 0.0);
    critical(0, 1) = 4.0; // rho(M) = sqrt(2 * 0.5) = 1, exactly critical
    critical(1, 0) = 1.0;
    const FixedPointResult at_critical = solve_survival(make_kernel(critical), dist,
                                                        Direction::minus, Coupling::coupled);
    CHECK(at_critical.converged);
    CHECK(at_critical.pi == std::vector<double>{0.0, 0.0});

    Matrix super(2, 2, 0.0);
    super(0, 1) = 4.84; // rho(M) = 1.1
    super(1, 0) = 1.0;
    const FixedPointResult above = solve_survival(make_kernel(super), dist, Direction::minus,
                                                  Coupling::coupled);
    CHECK(above.converged);
    CHECK(above.pi[0] > 0.0);
    CHECK(above.pi[1] > 0.0);
    CHECK(above.pi[0] ==
          doctest::Approx(1.0 - std::exp(-4.84 * 0.5 * above.pi[1])).epsilon(1e-9));
    CHECK(above.pi[1] ==
          doctest::Approx(1.0 - std::exp(-1.0 * 0.5 * above.pi[0])).epsilon(1e-9));
}

TEST_CASE("giant_alpha zero kernel and the single-type square") {
    const SurvivalSolution zero = giant_alpha(make_kernel(Matrix(1, 1, 0.0)),
                                              validate_distribution({1.0}), Coupling::coupled);
    CHECK(zero.alpha == 0.0);

    const SurvivalSolution two = giant_alpha(make_gilbert_kernel(2.0),
                                             validate_distribution({1.0}), Coupling::coupled);
    const double pi = oracles::survival_bisection(2.0);
    CHECK(two.alpha == doctest::Approx(pi * pi).epsilon(1e-6));
    CHECK(two.alpha == doctest::Approx(0.634909).epsilon(1e-4));
}

TEST_CASE("giant_alpha is invariant under type relabeling") {
    const TypeDistribution dist = validate_distribution({0.1, 0.15, 0.25, 0.5});
    Matrix kappa(4, 4);
    Rng rng(31337);
    for (double& v : kappa.data())
        v = static_cast<double>(rng.below(50)) / 10.0;
    const double alpha = giant_alpha(make_kernel(kappa), dist, Coupling::coupled).alpha;

    const std::vector<int> perm = {2, 0, 3, 1};
    std::vector<double> permuted_q(4);
    Matrix permuted_kappa(4, 4);
    for (int t = 0; t < 4; ++t) {
        permuted_q[static_cast<std::size_t>(t)] = dist[perm[static_cast<std::size_t>(t)]];
        for (int s = 0; s < 4; ++s)
            permuted_kappa(t, s) = kappa(perm[static_cast<std::size_t>(t)],
                                         perm[static_cast<std::size_t>(s)]);
    }
    const double permuted_alpha = giant_alpha(make_kernel(permuted_kappa),
                                              validate_distribution(permuted_q),
                                              Coupling::coupled)
                                      .alpha;
    CHECK(permuted_alpha == doctest::Approx(alpha).epsilon(1e-9));
}

TEST_CASE("symmetric kernels give matching survival directions") {
    const TypeDistribution dist = validate_distribution({0.3, 0.3, 0.4});
    Matrix kappa(3, 3);
    Rng rng(77);
    for (int t = 0; t < 3; ++t)
        for (int s = t; s < 3; ++s) {
            const double v = 0.5 + static_cast<double>(rng.below(40)) / 10.0;
            kappa(t, s) = v;
            kappa(s, t) = v;
        }
    const SurvivalSolution solution = giant_alpha(make_kernel(kappa), dist, Coupling::coupled);
    for (int t = 0; t < 3; ++t)
        CHECK(solution.pi_plus[static_cast<std::size_t>(t)] ==
              doctest::Approx(solution.pi_minus[static_cast<std::size_t>(t)]).epsilon(1e-9));
}

TEST_CASE("check_irreducibility") {
    CHECK(check_irreducibility(make_kernel(Matrix(3, 3, 1.0))));

    Matrix upper(3, 3, 0.0);
    upper(0, 1) = 1.0;
    upper(0, 2) = 1.0;
    upper(1, 2) = 1.0;
    CHECK_FALSE(check_irreducibility(make_kernel(upper)));

    CHECK(check_irreducibility(make_gilbert_kernel(0.0))); // one node, trivially one SCC
}

TEST_CASE("check_irreducibility of the reference CCI kernel matches the oracle") {
    CCIInputs inputs;
    inputs.mu = 1.0;
    inputs.type_dist = validate_distribution({0.1, 0.15, 0.25, 0.5});
    inputs.colour_pmf = Matrix(3, 2, {0.2, 0.2, 0.0, 0.1, 0.5, 0.0});
    inputs.out_indicator = IntMatrix(4, 3, {0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0});
    inputs.in_indicator = IntMatrix(4, 2, {1, 0, 0, 1, 1, 1, 0, 1});
    const Kernel kernel = cci_kernel(validate_cci_inputs(std::move(inputs)));

    std::vector<Arc> support;
    for (int t = 0; t < 4; ++t)
        for (int s = 0; s < 4; ++s)
            if (t != s && kernel.kappa(t, s) > 0)
                support.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(s)});
    const auto partition = oracles::scc_partition(4, support);
    const bool oracle_strongly_connected =
        std::all_of(partition.begin(), partition.end(), [&](int p) { return p == partition[0]; });
    CHECK(check_irreducibility(kernel) == oracle_strongly_connected);
    CHECK(check_irreducibility(kernel)); // the reference configuration is irreducible
}
