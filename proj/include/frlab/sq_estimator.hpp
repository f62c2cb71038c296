#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frlab/signal.hpp"
#include "frlab/system.hpp"

namespace frlab {

/// P(x) = A sum_i psi_{x, m_i} u_i with psi_{x, m} = phi_m(x), the synthesis
/// kernel of the system (f(x) = sum_m g(m) phi_m(x) for g = analyze(f)).
struct RandomFunctional {
    std::vector<std::size_t> draws;  // m_1..m_k, with multiplicity
    double amplitude = 0.0;          // ||g||_1 / k
    ComplexVector phases;            // u_i = g(m_i) / |g(m_i)|
    std::uint64_t seed = 0;

    std::size_t k() const noexcept { return draws.size(); }

    /// Values at every x, via one synthesis.
    ComplexVector evaluate(const OrthonormalSystem& system) const;
    Complex evaluate_at(const OrthonormalSystem& system, std::size_t x) const;
};

/// k independent draws from Pr(Y = m) = |g(m)| / ||g||_1. E[P(x)] = f(x).
RandomFunctional sq_sample(const OrthonormalSystem& system, const Signal& f, std::size_t k, std::uint64_t seed);

/// Var[Z(x)] = ||g||_1 sum_m |g(m)| |phi_m(x)|^2 - |f(x)|^2 for every x.
std::vector<double> estimator_variance(const OrthonormalSystem& system, const Signal& f);

struct SqMseResult {
    double empirical_mse = 0.0;   // mean over trials of sum_x p(x) |f(x) - P(x)|^2
    double standard_error = 0.0;  // of empirical_mse
    double expected_mse = 0.0;    // sum_x p(x) Var[Z(x)] / k
    double bound = 0.0;           // tau^2 ||g||_1^2 / k  (= M tau^2 r^2 / k when |f| = 1)
    double r = 0.0;
    std::size_t k = 0;
    std::size_t trials = 0;
};

/// `distribution` holds p(x) for every x; it must be nonnegative and sum to 1.
SqMseResult sq_mse(const OrthonormalSystem& system, const Signal& f, std::size_t k, std::size_t trials,
                   std::uint64_t seed, std::span<const double> distribution);

struct CoveringParams {
    std::size_t k = 0;   // >= 16^2 M tau^2 r^2
    std::size_t N1 = 0;  // >= 16 tau k
    std::size_t N2 = 0;  // >= 16 tau r sqrt(M)
    double epsilon = 1.0 / 16.0;
    std::size_t M = 0;
    double tau = 0.0;
    double r = 0.0;
};

/// Minimal integers meeting the three covering constraints.
CoveringParams covering_params(std::size_t M, double tau, double r);

/// Snaps the amplitude to {0, r sqrt(M)/(k N1), ..., r sqrt(M)/k} and each
/// phase to the nearest N2-th root of unity (k = P.k()).
RandomFunctional quantize_functional(const RandomFunctional& P, double r, std::size_t M, std::size_t N1, std::size_t N2);
RandomFunctional quantize_functional(const RandomFunctional& P, const CoveringParams& params);

/// tau k ((r sqrt(M)/k)/N2 + 1/N1 + 1/(N1 N2)): the covering argument's
/// sup-norm budget for |P - P~|.
double quantizer_deviation_bound(double tau, std::size_t k, double r, std::size_t M, std::size_t N1, std::size_t N2);

/// tau k (A |1 - e^{i pi/N2}| + r sqrt(M)/(2 k N1)): triangle-inequality
/// worst case given the actual grids.
double quantizer_worst_case_bound(double tau, std::size_t k, double amplitude, double r, std::size_t M,
                                  std::size_t N1, std::size_t N2);

/// log2 of M^K (16^3 tau^3 M r^2 + 1) (16 tau r sqrt(M))^K with K = 16^2 M tau^2 r^2.
double sq_dim_log2(std::size_t M, double tau, double r);

}  // namespace frlab
