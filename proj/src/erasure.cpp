#include "frlab/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frlab/rng.hpp"

namespace frlab {

double binomial_cdf(std::size_t k, std::size_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial_cdf: p must lie in [0,1]");
    if (k >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    const double nd = static_cast<double>(n);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgn = std::lgamma(nd + 1.0);
    auto log_pmf = [&](std::size_t i) {
        const double id = static_cast<double>(i);
        return lgn - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0) + id * lp + (nd - id) * lq;
    };
    // sum the shorter side, smallest terms first
    const double mean = nd * p;
    if (static_cast<double>(k) < mean) {
        double s = 0.0;
        for (std::size_t i = 0; i <= k; ++i) s += std::exp(log_pmf(i));
        return std::min(1.0, s);
    }
    double upper = 0.0;
    for (std::size_t i = n; i > k; --i) upper += std::exp(log_pmf(i));
    return std::clamp(1.0 - upper, 0.0, 1.0);
}

std::size_t erasure_row_threshold(std::size_t N, std::size_t E_max) {
    if (E_max == 0) throw std::domain_error("E_max must be >= 1");
    if (N == 0) throw std::domain_error("N must be >= 1");
    return (N - 1) / (2 * E_max);
}

ErasureStatistics erasure_row_statistics(std::size_t N, std::size_t T, double theta, std::size_t E_max,
                                         std::size_t trials, std::uint64_t seed) {
    if (E_max == 0) throw std::domain_error("erasure_row_statistics: E_max must be >= 1");
    if (!(theta > 0.0 && theta < 1.0 / (2.0 * static_cast<double>(E_max)))) {
        throw std::domain_error("erasure_row_statistics: theta violates the hypothesis 0<\\theta<\\frac{1}{2E_{\\max}}");
    }
    if (N == 0 || T == 0) throw std::domain_error("erasure_row_statistics: N and T must be >= 1");
    if (trials == 0) throw std::domain_error("erasure_row_statistics: trials must be >= 1");

    ErasureStatistics out;
    out.threshold = erasure_row_threshold(N, E_max);
    out.trials = trials;
    out.exact_prob = std::pow(binomial_cdf(out.threshold, N, theta), static_cast<double>(T));

    std::size_t successes = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, 0, trial));
        std::size_t worst = 0;
        for (std::size_t a = 0; a < T; ++a) {
            std::size_t lost = 0;
            for (std::size_t m = 0; m < N; ++m) lost += rng.bernoulli(theta) ? 1 : 0;
            worst = std::max(worst, lost);
        }
        if (worst <= out.threshold) ++successes;
    }
    out.empirical_prob = static_cast<double>(successes) / static_cast<double>(trials);
    return out;
}

}  // namespace frlab
