#include "frlab/fourier_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace frlab {

double fourier_ratio(std::span<const Complex> c) {
    const double l2 = norm_l2(c);
    if (!(l2 > 0.0)) {
        throw std::domain_error("Fourier ratio is undefined for the zero vector");
    }
    return norm_l1(c) / l2;
}

std::vector<std::size_t> top_indices(std::span<const Complex> c, std::size_t s) {
    s = std::min(s, c.size());
    std::vector<double> mag(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) mag[i] = std::abs(c[i]);
    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto before = [&](std::size_t a, std::size_t b) { return mag[a] > mag[b] || (mag[a] == mag[b] && a < b); };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s), order.end(), before);
    order.resize(s);
    return order;
}

SparsifyResult truncate_top(const CoefficientVector& c, std::size_t s) {
    SparsifyResult out;
    out.support = top_indices(c.entries, s);
    out.s = out.support.size();
    out.truncation.system = c.system;
    out.truncation.entries.assign(c.size(), Complex{});
    ComplexVector tail = c.entries;
    for (std::size_t j : out.support) {
        out.truncation.entries[j] = c.entries[j];
        tail[j] = 0.0;
    }
    out.tail_l2 = norm_l2(tail);
    out.tail_l1 = norm_l1(tail);
    return out;
}

std::size_t ceil_tolerant(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("ceil_tolerant: invalid argument");
    return static_cast<std::size_t>(std::ceil(x * (1.0 - 1e-12)));
}

std::size_t sparsity_level(double r, double eta, std::size_t length) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("sparsification needs eta in (0,1)");
    if (!(r >= 0.0)) throw std::domain_error("sparsification needs r >= 0");
    const double raw = r * r / (eta * eta);
    if (raw >= static_cast<double>(length)) return length;
    return std::min(length, ceil_tolerant(raw));
}

SparsifyResult soft_sparsify(const CoefficientVector& c, double eta) {
    const double r = fourier_ratio(c);
    return truncate_top(c, sparsity_level(r, eta, c.size()));
}

std::size_t minimal_support_size(std::span<const Complex> c, double eta) {
    const double total = norm_l2(c);
    if (!(total > 0.0)) throw std::domain_error("minimal_support_size: zero vector");
    if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("minimal_support_size: eta must lie in (0,1)");
    const auto order = top_indices(c, c.size());
    // tail energies from the back, so small entries are summed first
    std::vector<double> tail(order.size() + 1, 0.0);
    for (std::size_t i = order.size(); i-- > 0;) tail[i] = tail[i + 1] + std::norm(c[order[i]]);
    const double target = eta * total;
    std::size_t s = 0;
    while (s < order.size() && std::sqrt(tail[s]) > target) ++s;
    return s;
}

bool sorted_decay_check(std::span<const Complex> c) {
    const double r = fourier_ratio(c);
    const double l2 = norm_l2(c);
    std::vector<double> mag(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) mag[i] = std::abs(c[i]);
    std::sort(mag.begin(), mag.end(), std::greater<>());
    for (std::size_t j = 1; j <= mag.size(); ++j) {
        if (mag[j - 1] > r * l2 / static_cast<double>(j) * (1.0 + 1e-12)) return false;
    }
    return true;
}

CoefficientVector harmonic_model(std::size_t M) {
    if (M < 3) throw std::invalid_argument("harmonic_model requires M >= 3");
    CoefficientVector c{"", ComplexVector(M)};
    for (std::size_t j = 1; j <= M; ++j) c.entries[j - 1] = 1.0 / static_cast<double>(j);
    return c;
}

double floored_log(double x) { return std::log(std::max(std::numbers::e, x)); }

double refined_support_bound(double r, double eps, std::size_t M, double C0) {
    if (!(r >= 1.0) || !(eps > 0.0 && eps < 1.0) || M < 2) {
        throw std::domain_error("refined_support_bound: need r >= 1, eps in (0,1), M >= 2");
    }
    const double L = floored_log(r / eps);
    return C0 * (r * r) / (eps * eps) * L * L * std::log(static_cast<double>(M));
}

}  // namespace frlab
