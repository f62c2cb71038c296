#include "frlab/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "frlab/fourier_ratio.hpp"
#include "frlab/rng.hpp"

namespace frlab {

SampleSet bernoulli_sample(const FiniteAbelianGroup& group, double p, std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("bernoulli_sample: p must lie in (0, 1]");
    SampleSet X{group, {}, p, seed};
    Rng rng(seed);
    for (std::size_t i = 0; i < group.size(); ++i) {
        // always draw, so p = 1 and p < 1 consume the stream identically
        if (rng.bernoulli(p)) X.kept.push_back(i);
    }
    return X;
}

SampleSet uniform_subset(const FiniteAbelianGroup& group, std::size_t m, std::uint64_t seed) {
    const std::size_t M = group.size();
    if (m == 0 || m > M) throw std::domain_error("uniform_subset: need 1 <= m <= M");
    std::vector<std::size_t> perm(M);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(M - i));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(m);
    std::sort(perm.begin(), perm.end());
    return SampleSet{group, std::move(perm), static_cast<double>(m) / static_cast<double>(M), seed};
}

ComplexVector restrict_to(const SampleSet& X, std::span<const Complex> f) {
    if (f.size() != X.group.size()) throw std::invalid_argument("restrict_to: signal length mismatch");
    ComplexVector out(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) out[i] = f[X.kept[i]];
    return out;
}

ComplexVector extend_by_zero(const SampleSet& X, std::span<const Complex> values) {
    if (values.size() != X.size()) throw std::invalid_argument("extend_by_zero: sample count mismatch");
    ComplexVector out(X.group.size());
    for (std::size_t i = 0; i < X.size(); ++i) out[X.kept[i]] = values[i];
    return out;
}

ComplexVector project_fidelity(const OrthonormalSystem& system, std::span<const Complex> c, const SampleSet& X,
                               std::span<const Complex> y, double sigma) {
    if (!(X.group == system.group())) throw std::invalid_argument("project_fidelity: sample set on a different group");
    if (y.size() != X.size()) throw std::invalid_argument("project_fidelity: y must be indexed by X");
    if (!(sigma >= 0.0)) throw std::domain_error("project_fidelity: sigma must be >= 0");

    ComplexVector rho = restrict_to(X, system.synthesize(c));
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] -= y[i];
    const double r = norm_l2(rho);
    ComplexVector out(c.begin(), c.end());
    if (r <= sigma) return out;
    const double shrink = 1.0 - sigma / r;
    for (auto& z : rho) z *= shrink;
    const ComplexVector correction = system.analyze(extend_by_zero(X, rho));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] -= correction[j];
    return out;
}

CoefficientVector project_fidelity(const OrthonormalSystem& system, const CoefficientVector& c, const SampleSet& X,
                                   std::span<const Complex> y, double sigma) {
    return CoefficientVector{c.system, project_fidelity(system, std::span<const Complex>(c.entries), X, y, sigma)};
}

ComplexVector soft_threshold(std::span<const Complex> c, double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("soft_threshold: lambda must be >= 0");
    ComplexVector out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double m = std::abs(c[i]);
        out[i] = (m > lambda) ? c[i] * (1.0 - lambda / m) : Complex{};
    }
    return out;
}

void RecoveryConfig::validate() const {
    if (max_iterations < 1) throw std::invalid_argument("RecoveryConfig: max_iterations must be >= 1");
    if (!(step > 0.0)) throw std::invalid_argument("RecoveryConfig: step must be > 0");
    if (!(relaxation > 0.0 && relaxation < 2.0)) throw std::invalid_argument("RecoveryConfig: relaxation must be in (0,2)");
    if (!(tolerance > 0.0)) throw std::invalid_argument("RecoveryConfig: tolerance must be > 0");
    if (!(fidelity_radius >= 0.0)) throw std::invalid_argument("RecoveryConfig: fidelity_radius must be >= 0");
}

RecoveryResult recover_l1(const OrthonormalSystem& system, const SampleSet& X, std::span<const Complex> y,
                          const RecoveryConfig& config) {
    config.validate();
    const double sigma = config.fidelity_radius;
    const double y_norm = norm_l2(y);
    const double scale = y_norm > 0.0 ? y_norm : 1.0;
    const double gamma = config.step * scale / std::sqrt(static_cast<double>(std::max<std::size_t>(X.size(), 1)));

    auto project = [&](std::span<const Complex> c) { return project_fidelity(system, c, X, y, sigma); };

    // start from the minimum-energy interpolant
    ComplexVector z = system.analyze(extend_by_zero(X, y));
    ComplexVector x = project(z);
    ComplexVector best = x;
    double best_l1 = norm_l1(best);

    RecoveryResult result{Signal(system.group()), 0.0, 0.0, 0, false, std::nullopt, 0.0, true};
    int it = 0;
    for (; it < config.max_iterations; ++it) {
        x = project(z);
        const double l1 = norm_l1(x);
        if (l1 < best_l1) {
            best_l1 = l1;
            best = x;
        }
        ComplexVector reflected(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) reflected[j] = 2.0 * x[j] - z[j];
        const ComplexVector v = soft_threshold(reflected, gamma);
        double residual_sq = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const Complex d = v[j] - x[j];
            residual_sq += std::norm(d);
            z[j] += config.relaxation * d;
        }
        if (std::sqrt(residual_sq) <= config.tolerance * scale) {
            result.converged = true;
            ++it;
            break;
        }
    }
    ComplexVector c = result.converged ? project(z) : project(best);
    result.iterations = it;
    result.coefficient_l1 = norm_l1(c);
    result.recovered = Signal(system.group(), system.synthesize(c));
    ComplexVector diff = restrict_to(X, result.recovered.values());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= y[i];
    result.fidelity_residual = norm_l2(diff);
    const auto bounded = check_boundedness(system);
    result.tau = bounded.tau;
    result.bounded = bounded.passes;
    return result;
}

RecoveryResult recover_l1(const OrthonormalSystem& system, const SampleSet& X, const Signal& truth,
                          const RecoveryConfig& config) {
    if (!(truth.group() == system.group())) throw std::invalid_argument("recover_l1: truth lives on another group");
    const ComplexVector y = restrict_to(X, truth.values());
    RecoveryResult result = recover_l1(system, X, y, config);
    const double norm = truth.l2();
    if (norm > 0.0) result.relative_error = distance_l2(result.recovered.values(), truth.values()) / norm;
    return result;
}

double sample_complexity(double r, double eps, std::size_t M, double tau, double C) {
    if (!(r >= 1.0)) throw std::domain_error("sample_complexity: r must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("sample_complexity: eps must lie in (0,1)");
    if (M < 2) throw std::domain_error("sample_complexity: M must be >= 2");
    if (!(tau > 0.0) || !(C > 0.0)) throw std::domain_error("sample_complexity: tau and C must be positive");
    const double coherence = tau * tau * static_cast<double>(M);
    const double L = floored_log(r / eps);
    return C * coherence * (r * r) / (eps * eps) * L * L * std::log(static_cast<double>(M));
}

}  // namespace frlab
