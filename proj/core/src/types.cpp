#include "rdg/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rdg/errors.hpp"
#include "rdg/numeric.hpp"

namespace rdg {

namespace {
constexpr double kMassTolerance = 1e-12;
}

TypeDistribution validate_distribution(const std::vector<double>& probs, bool renormalize) {
    if (probs.empty())
        throw std::invalid_argument("type distribution must be non-empty");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0 || !std::isfinite(probs[i]))
            throw NegativeMass("type distribution entry " + std::to_string(i + 1) +
                               " is negative or not finite");
        sum += probs[i];
    }
    if (renormalize) {
        if (sum <= 0.0)
            throw NotNormalized("type distribution has zero total mass");
        std::vector<double> scaled(probs);
        for (double& p : scaled)
            p /= sum;
        return TypeDistribution{std::move(scaled)};
    }
    if (std::abs(sum - 1.0) > kMassTolerance)
        throw NotNormalized("type distribution sums to " + std::to_string(sum) +
                            ", expected 1 within 1e-12");
    return TypeDistribution{probs};
}

Kernel make_kernel(Matrix values, std::optional<Matrix> perturbation) {
    if (values.rows() != values.cols())
        throw std::invalid_argument("kernel matrix must be square");
    for (double v : values.data())
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("kernel entries must be finite and non-negative");
    if (perturbation) {
        if (perturbation->rows() != values.rows() || perturbation->cols() != values.cols())
            throw std::invalid_argument("perturbation shape does not match kernel");
        for (int t = 0; t < values.rows(); ++t)
            for (int s = 0; s < values.cols(); ++s)
                if (values(t, s) * (1.0 + (*perturbation)(t, s)) < 0.0)
                    throw std::invalid_argument("effective kernel must be non-negative");
    }
    return Kernel{std::move(values), std::move(perturbation)};
}

ArcCountTable make_arc_count_table(IntMatrix counts) {
    if (counts.rows() != counts.cols())
        throw std::invalid_argument("arc count table must be square");
    for (std::int64_t v : counts.data())
        if (v < 0)
            throw std::invalid_argument("arc counts must be non-negative");
    return ArcCountTable{std::move(counts)};
}

StabilityReport classify_stability(const TypeDistribution& dist, std::int64_t n, double tau) {
    if (n < 1)
        throw std::invalid_argument("classify_stability requires n >= 1");
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("tau must lie in (0, 1)");
    const int s = dist.size();
    const double threshold = std::pow(static_cast<double>(n), tau - 1.0);
    // u_up = inf{t : q_s < threshold for all s >= t} = (last label with
    // q >= threshold) + 1 over the finite support.
    int last_big = 0;
    for (int t = 0; t < s; ++t)
        if (dist[t] >= threshold)
            last_big = t + 1;
    StabilityReport report;
    report.n = n;
    report.tau = tau;
    report.u_up = last_big + 1;
    report.stable.resize(s);
    for (int t = 0; t < s; ++t)
        report.stable[t] = (t + 1) < report.u_up;
    return report;
}

std::int64_t stable_count_bound(double delta, std::int64_t n, double tau) {
    if (n < 1)
        throw std::invalid_argument("stable_count_bound requires n >= 1");
    if (!(delta > 0.0))
        throw std::invalid_argument("delta must be positive");
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("tau must lie in (0, 1)");
    const double exponent = (1.0 - tau) / (1.0 + delta);
    return ceil_count(std::pow(static_cast<double>(n), exponent));
}

ArcCountTable kappa_to_lambda(const Kernel& kernel, const TypeDistribution& dist, std::int64_t n,
                              double tau) {
    const int s = dist.size();
    if (kernel.size() != s)
        throw std::invalid_argument("kernel and distribution support sizes differ");
    const StabilityReport stability = classify_stability(dist, n, tau);
    IntMatrix counts(s, s, 0);
    for (int t = 0; t < s; ++t) {
        for (int u = 0; u < s; ++u) {
            if (!stability.stable[t] || !stability.stable[u])
                continue;
            counts(t, u) = floor_count(kernel.kappa(t, u) * dist[t] * dist[u] *
                                       static_cast<double>(n));
        }
    }
    return ArcCountTable{std::move(counts)};
}

bool check_kernel_bound(const Kernel& kernel, const TypeDistribution& dist, std::int64_t n,
                        double tau, double alpha, double c) {
    const int s = dist.size();
    if (kernel.size() != s)
        throw std::invalid_argument("kernel and distribution support sizes differ");
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("tau must lie in (0, 1)");
    if (!(alpha > 0.5 - tau / 2.0 && alpha < 0.5))
        throw InvalidAlpha("alpha must lie in (1/2 - tau/2, 1/2)");
    if (!(c > 0.0))
        throw std::invalid_argument("c must be positive");
    const StabilityReport stability = classify_stability(dist, n, tau);
    const double scale = c * std::pow(static_cast<double>(n), alpha - 0.5);
    for (int t = 0; t < s; ++t) {
        for (int u = 0; u < s; ++u) {
            if (stability.stable[t] && stability.stable[u])
                continue;
            const double mass = dist[t] * dist[u];
            if (mass <= 0.0)
                continue; // bound is vacuous for absent types
            if (kernel.kappa(t, u) > scale / std::sqrt(mass))
                return false;
        }
    }
    return true;
}

} // namespace rdg
