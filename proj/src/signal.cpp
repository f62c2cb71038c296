#include "frlab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frlab {

double norm_l1(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::abs(z);
    return s;
}

double norm_l2(std::span<const Complex> v) {
    // scaled accumulation, avoids overflow for large-magnitude inputs
    double scale = 0.0;
    for (const auto& z : v) scale = std::max(scale, std::abs(z));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z / scale);
    return scale * std::sqrt(s);
}

double norm_linf(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

double distance_l2(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance_l2: size mismatch");
    }
    ComplexVector d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return norm_l2(d);
}

Signal::Signal(FiniteAbelianGroup group) : group_(std::move(group)), values_(group_.size()) {}

Signal::Signal(FiniteAbelianGroup group, ComplexVector values) : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_.size()) {
        throw std::invalid_argument("signal length " + std::to_string(values_.size()) + " does not match group order " +
                                    std::to_string(group_.size()));
    }
}

}  // namespace frlab
