#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "frlab/signal.hpp"
#include "frlab/system.hpp"

namespace frlab {

/// Observed subset X of the domain.
struct SampleSet {
    FiniteAbelianGroup group;
    std::vector<std::size_t> kept;  // increasing
    double p = 1.0;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return kept.size(); }
};

/// Keeps each element independently with probability p, 0 < p <= 1.
SampleSet bernoulli_sample(const FiniteAbelianGroup& group, double p, std::uint64_t seed);

/// Exactly m distinct elements chosen uniformly (p recorded as m / M).
SampleSet uniform_subset(const FiniteAbelianGroup& group, std::size_t m, std::uint64_t seed);

ComplexVector restrict_to(const SampleSet& X, std::span<const Complex> f);
ComplexVector extend_by_zero(const SampleSet& X, std::span<const Complex> values);

/// Euclidean projection of c onto {c : ||restrict_X(synthesize(c)) - y||_2 <= sigma}.
///
/// restrict_X o synthesize is a partial isometry (its adjoint is
/// analyze o extend_by_zero and their composition is the identity on X), so
/// the projection is c - analyze(extend((1 - sigma/||rho||) rho)) with
/// rho = restrict_X(synthesize(c)) - y, or c itself when ||rho|| <= sigma.
ComplexVector project_fidelity(const OrthonormalSystem& system, std::span<const Complex> c, const SampleSet& X,
                               std::span<const Complex> y, double sigma);
CoefficientVector project_fidelity(const OrthonormalSystem& system, const CoefficientVector& c, const SampleSet& X,
                                   std::span<const Complex> y, double sigma);

/// z -> z max(0, 1 - lambda/|z|) entrywise.
ComplexVector soft_threshold(std::span<const Complex> c, double lambda);

struct RecoveryConfig {
    int max_iterations = 5000;
    double step = 1.0;        // prox parameter, in units of the RMS sample magnitude
    double relaxation = 1.0;  // Douglas-Rachford relaxation in (0, 2)
    double tolerance = 1e-9;  // fixed-point residual, relative to ||y||_2
    double fidelity_radius = 0.0;  // sigma = eps ||f||_2

    void validate() const;
};

struct RecoveryResult {
    Signal recovered;
    double coefficient_l1 = 0.0;
    double fidelity_residual = 0.0;  // ||f* - f||_{l2(X)}
    int iterations = 0;
    bool converged = false;
    std::optional<double> relative_error;  // ||f* - f||_2 / ||f||_2, when the truth is known
    double tau = 0.0;
    bool bounded = true;  // check_boundedness(system).passes
};

/// min ||c||_1 s.t. ||restrict_X(synthesize(c)) - y||_2 <= sigma, by
/// Douglas-Rachford splitting between soft thresholding and project_fidelity.
RecoveryResult recover_l1(const OrthonormalSystem& system, const SampleSet& X, std::span<const Complex> y,
                          const RecoveryConfig& config);

/// Same, sampling y from `truth` and filling relative_error.
RecoveryResult recover_l1(const OrthonormalSystem& system, const SampleSet& X, const Signal& truth,
                          const RecoveryConfig& config);

/// C (tau sqrt(M))^2 (r/eps)^2 log(max(e, r/eps))^2 log M.
double sample_complexity(double r, double eps, std::size_t M, double tau, double C);

/// Error constant of the recovery guarantee ||f* - f||_2 <= 11.47 eps ||f||_2.
inline constexpr double kRecoveryErrorConstant = 11.47;

}  // namespace frlab
