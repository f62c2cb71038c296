#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace frlab {

/// Finite abelian group Z_{n_1} x ... x Z_{n_d}.
///
/// Elements are indexed 0..M-1 in mixed radix with the first factor most
/// significant and the last factor fastest, so x = (x_1, ..., x_d) maps to
/// sum_i x_i * stride_i with stride_d = 1.
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<std::size_t> factors);

    static FiniteAbelianGroup cyclic(std::size_t n) { return FiniteAbelianGroup({n}); }

    const std::vector<std::size_t>& factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::size_t size() const noexcept { return size_; }
    std::size_t stride(std::size_t axis) const { return strides_.at(axis); }

    std::vector<std::size_t> coordinates(std::size_t index) const;
    std::size_t index(std::span<const std::size_t> coords) const;

    /// Pairing <gamma, x> = sum_i gamma_i x_i / n_i, reduced mod 1.
    double pairing(std::size_t gamma, std::size_t x) const;

    /// "4x6" style label.
    std::string to_string() const;

    bool operator==(const FiniteAbelianGroup& other) const noexcept { return factors_ == other.factors_; }

private:
    std::vector<std::size_t> factors_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 1;
};

/// Parses "4x6", "16" or "2x2x3".
FiniteAbelianGroup parse_group(const std::string& text);

}  // namespace frlab
