#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frlab/signal.hpp"

namespace frlab {

/// ||c||_1 / ||c||_2. Throws std::domain_error on the zero vector.
double fourier_ratio(std::span<const Complex> c);
inline double fourier_ratio(const CoefficientVector& c) { return fourier_ratio(c.entries); }

/// Indices of the s largest magnitudes, largest first; ties go to the lower index.
std::vector<std::size_t> top_indices(std::span<const Complex> c, std::size_t s);

struct SparsifyResult {
    std::vector<std::size_t> support;  // largest first
    CoefficientVector truncation;      // entries off the support zeroed
    std::size_t s = 0;
    double tail_l2 = 0.0;
    double tail_l1 = 0.0;
};

/// Keeps the top-s entries of c.
SparsifyResult truncate_top(const CoefficientVector& c, std::size_t s);

/// Support size ceil(r^2 / eta^2), clamped to `length`.
std::size_t sparsity_level(double r, double eta, std::size_t length);

/// Truncation to the top min(M, ceil(FR(c)^2 / eta^2)) entries, which
/// guarantees ||c - c_S||_2 <= eta ||c||_2.
SparsifyResult soft_sparsify(const CoefficientVector& c, double eta);

/// Smallest s with ||c - c_S||_2 <= eta ||c||_2 for the top-s support;
/// never exceeds sparsity_level(FR(c), eta, M).
std::size_t minimal_support_size(std::span<const Complex> c, double eta);

/// Checks |c|_(j) <= FR(c) ||c||_2 / j for the sorted magnitudes.
bool sorted_decay_check(std::span<const Complex> c);

/// c_j = 1/j, j = 1..M (M >= 3).
CoefficientVector harmonic_model(std::size_t M);

/// Support-size formula C0 (r/eps)^2 log(r/eps)^2 log M of the refined
/// sparsifier (log floored at 1); reported next to the elementary level.
double refined_support_bound(double r, double eps, std::size_t M, double C0 = 1.0);

/// log(max(e, x)); keeps log factors >= 1.
double floored_log(double x);

/// ceil(x) that ignores relative rounding noise below 1e-12.
std::size_t ceil_tolerant(double x);

}  // namespace frlab
