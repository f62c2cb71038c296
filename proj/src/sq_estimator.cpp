#include "frlab/sq_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "frlab/fourier_ratio.hpp"
#include "frlab/rng.hpp"

namespace frlab {
namespace {

void check_domain(std::size_t M, double tau, double r) {
    if (M < 1) throw std::domain_error("M must be >= 1");
    if (!(tau >= (1.0 - 1e-12) / std::sqrt(static_cast<double>(M)))) throw std::domain_error("tau must be >= M^{-1/2}");
    if (!(r >= 1.0) || !std::isfinite(r)) throw std::domain_error("r must be >= 1");
}

}  // namespace

ComplexVector RandomFunctional::evaluate(const OrthonormalSystem& system) const {
    ComplexVector h(system.dimension());
    for (std::size_t i = 0; i < draws.size(); ++i) h.at(draws[i]) += amplitude * phases[i];
    return system.synthesize(h);
}

Complex RandomFunctional::evaluate_at(const OrthonormalSystem& system, std::size_t x) const {
    Complex s{};
    for (std::size_t i = 0; i < draws.size(); ++i) s += system.basis_value(draws[i], x) * phases[i];
    return amplitude * s;
}

RandomFunctional sq_sample(const OrthonormalSystem& system, const Signal& f, std::size_t k, std::uint64_t seed) {
    if (k == 0) throw std::domain_error("sq_sample: k must be >= 1");
    const ComplexVector g = system.analyze(std::span<const Complex>(f.values()));
    const double g1 = norm_l1(g);
    if (!(g1 > 0.0)) throw std::domain_error("sq_sample: zero signal");

    std::vector<double> cumulative(g.size());
    double running = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        running += std::abs(g[m]);
        cumulative[m] = running;
    }

    RandomFunctional P;
    P.seed = seed;
    P.amplitude = g1 / static_cast<double>(k);
    Rng rng(seed);
    P.draws.reserve(k);
    P.phases.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double u = rng.uniform() * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        // zero-weight cells share their cumulative value with a predecessor and are never selected
        std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), g.size() - 1);
        while (std::abs(g[m]) == 0.0 && m > 0) --m;
        P.draws.push_back(m);
        P.phases.push_back(g[m] / std::abs(g[m]));
    }
    return P;
}

std::vector<double> estimator_variance(const OrthonormalSystem& system, const Signal& f) {
    const ComplexVector g = system.analyze(std::span<const Complex>(f.values()));
    const double g1 = norm_l1(g);
    std::vector<double> second(g.size(), 0.0);
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double w = std::abs(g[m]);
        if (w == 0.0) continue;
        const ComplexVector phi = system.basis_vector(m);
        for (std::size_t x = 0; x < phi.size(); ++x) second[x] += w * std::norm(phi[x]);
    }
    std::vector<double> var(g.size());
    for (std::size_t x = 0; x < var.size(); ++x) var[x] = std::max(0.0, g1 * second[x] - std::norm(f[x]));
    return var;
}

SqMseResult sq_mse(const OrthonormalSystem& system, const Signal& f, std::size_t k, std::size_t trials,
                   std::uint64_t seed, std::span<const double> distribution) {
    const std::size_t M = system.dimension();
    if (distribution.size() != M) throw std::invalid_argument("sq_mse: distribution must have one weight per element");
    double total = 0.0;
    for (double w : distribution) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("sq_mse: distribution weights must be >= 0");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("sq_mse: distribution must sum to 1");
    if (trials == 0) throw std::invalid_argument("sq_mse: trials must be >= 1");

    const ComplexVector g = system.analyze(std::span<const Complex>(f.values()));
    const double g1 = norm_l1(g);
    SqMseResult out;
    out.k = k;
    out.trials = trials;
    out.r = fourier_ratio(g);
    out.bound = system.tau() * system.tau() * g1 * g1 / static_cast<double>(k);

    const auto var = estimator_variance(system, f);
    for (std::size_t x = 0; x < M; ++x) out.expected_mse += distribution[x] * var[x];
    out.expected_mse /= static_cast<double>(k);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const RandomFunctional P = sq_sample(system, f, k, derive_seed(seed, 0, t));
        const ComplexVector values = P.evaluate(system);
        double loss = 0.0;
        for (std::size_t x = 0; x < M; ++x) loss += distribution[x] * std::norm(f[x] - values[x]);
        sum += loss;
        sum_sq += loss * loss;
    }
    const double n = static_cast<double>(trials);
    out.empirical_mse = sum / n;
    const double variance = trials > 1 ? std::max(0.0, (sum_sq - n * out.empirical_mse * out.empirical_mse) / (n - 1.0)) : 0.0;
    out.standard_error = std::sqrt(variance / n);
    return out;
}

CoveringParams covering_params(std::size_t M, double tau, double r) {
    check_domain(M, tau, r);
    CoveringParams p;
    p.M = M;
    p.tau = tau;
    p.r = r;
    const double Md = static_cast<double>(M);
    p.k = std::max<std::size_t>(1, ceil_tolerant(256.0 * Md * tau * tau * r * r));
    p.N2 = std::max<std::size_t>(1, ceil_tolerant(16.0 * tau * r * std::sqrt(Md)));
    p.N1 = std::max<std::size_t>(1, ceil_tolerant(16.0 * tau * static_cast<double>(p.k)));
    return p;
}

RandomFunctional quantize_functional(const RandomFunctional& P, double r, std::size_t M, std::size_t N1, std::size_t N2) {
    if (P.k() == 0) throw std::invalid_argument("quantize_functional: empty functional");
    if (N1 == 0 || N2 == 0) throw std::invalid_argument("quantize_functional: N1 and N2 must be >= 1");
    const double top = r * std::sqrt(static_cast<double>(M)) / static_cast<double>(P.k());
    if (P.amplitude > top * (1.0 + 1e-12)) {
        throw std::domain_error("quantize_functional: amplitude exceeds r sqrt(M)/k, so r underestimates FR");
    }
    const double step = top / static_cast<double>(N1);
    RandomFunctional Q = P;
    const double level = std::min(std::round(P.amplitude / step), static_cast<double>(N1));
    Q.amplitude = level * step;
    const double turn = 2.0 * std::numbers::pi / static_cast<double>(N2);
    for (auto& u : Q.phases) {
        auto n = static_cast<long long>(std::llround(std::arg(u) / turn));
        n = ((n % static_cast<long long>(N2)) + static_cast<long long>(N2)) % static_cast<long long>(N2);
        u = std::polar(1.0, turn * static_cast<double>(n));
    }
    return Q;
}

RandomFunctional quantize_functional(const RandomFunctional& P, const CoveringParams& params) {
    return quantize_functional(P, params.r, params.M, params.N1, params.N2);
}

double quantizer_deviation_bound(double tau, std::size_t k, double r, std::size_t M, std::size_t N1, std::size_t N2) {
    const double kd = static_cast<double>(k);
    const double n1 = static_cast<double>(N1);
    const double n2 = static_cast<double>(N2);
    return tau * kd * ((r * std::sqrt(static_cast<double>(M)) / kd) / n2 + 1.0 / n1 + 1.0 / (n1 * n2));
}

double quantizer_worst_case_bound(double tau, std::size_t k, double amplitude, double r, std::size_t M,
                                  std::size_t N1, std::size_t N2) {
    const double kd = static_cast<double>(k);
    const double chord = 2.0 * std::sin(std::numbers::pi / (2.0 * static_cast<double>(N2)));
    const double amp_step = r * std::sqrt(static_cast<double>(M)) / (kd * static_cast<double>(N1));
    return tau * kd * (amplitude * chord + amp_step / 2.0);
}

double sq_dim_log2(std::size_t M, double tau, double r) {
    check_domain(M, tau, r);
    const double Md = static_cast<double>(M);
    const double K = 256.0 * Md * tau * tau * r * r;
    return K * std::log2(Md) + std::log2(4096.0 * tau * tau * tau * Md * r * r + 1.0) +
           K * std::log2(16.0 * tau * r * std::sqrt(Md));
}

}  // namespace frlab
