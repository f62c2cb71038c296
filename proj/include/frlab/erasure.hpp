#pragma once

#include <cstddef>
#include <cstdint>

namespace frlab {

/// P(Bin(n, p) <= k).
double binomial_cdf(std::size_t k, std::size_t n, double p);

/// Largest per-row loss count m with m < N / (2 E_max).
std::size_t erasure_row_threshold(std::size_t N, std::size_t E_max);

struct ErasureStatistics {
    double empirical_prob = 0.0;  // Monte-Carlo estimate of P(M_max < N / (2 E_max))
    double exact_prob = 0.0;      // P(Bin(N, theta) <= threshold)^T
    std::size_t threshold = 0;
    std::size_t trials = 0;
};

/// Row-wise frequency erasures on Z_N x Z_T: every transmitted coefficient
/// is lost independently with probability theta, and M_max is the largest
/// number of losses in a single row. Requires 0 < theta < 1/(2 E_max).
ErasureStatistics erasure_row_statistics(std::size_t N, std::size_t T, double theta, std::size_t E_max,
                                         std::size_t trials, std::uint64_t seed);

}  // namespace frlab
