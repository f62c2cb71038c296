#pragma once

#include <string>
#include <vector>

#include "frlab/group.hpp"
#include "frlab/signal.hpp"

namespace frlab {

/// G = H (+) K, obtained by splitting the cyclic factors of G.
class ProductDecomposition {
public:
    /// Axes are 0-based factor positions; together they must partition the
    /// factors of G and both sides must be nonempty.
    ProductDecomposition(FiniteAbelianGroup G, std::vector<std::size_t> h_axes, std::vector<std::size_t> k_axes);

    const FiniteAbelianGroup& G() const noexcept { return G_; }
    const FiniteAbelianGroup& H() const noexcept { return H_; }
    const FiniteAbelianGroup& K() const noexcept { return K_; }
    const std::vector<std::size_t>& h_axes() const noexcept { return h_axes_; }
    const std::vector<std::size_t>& k_axes() const noexcept { return k_axes_; }

    /// Index in G of the element (h, k).
    std::size_t join(std::size_t h, std::size_t k) const { return join_[k * H_.size() + h]; }

    /// "1|2", "1,2|3": 1-based factor positions of H and K.
    std::string to_string() const;

private:
    FiniteAbelianGroup G_;
    std::vector<std::size_t> h_axes_;
    std::vector<std::size_t> k_axes_;
    FiniteAbelianGroup H_;
    FiniteAbelianGroup K_;
    std::vector<std::size_t> join_;
};

/// Parses "1|2" or "1,3|2" (1-based factor positions).
ProductDecomposition parse_split(const FiniteAbelianGroup& G, const std::string& split);

/// f_k(h) = f(h, k) for every k in K (in K's index order).
std::vector<Signal> slice(const Signal& f, const ProductDecomposition& d);
Signal reassemble(const std::vector<Signal>& slices, const ProductDecomposition& d);

enum class GlobalTransform {
    RowWise,  // partial DFT along the H factors only
    Full,     // DFT on all of G
};

std::string to_string(GlobalTransform t);

/// Coefficients of f under the partial DFT along the H factors (Parseval
/// normalized); entry (h, k) holds the transform of slice k at h.
ComplexVector partial_transform(const Signal& f, const ProductDecomposition& d);

struct LocalizationReport {
    double max_slice_fr = 0.0;
    double global_fr = 0.0;
    double lower_bound = 0.0;  // global_fr / sqrt(|K|)
    bool holds = false;
    std::size_t achieving_k = 0;
    std::size_t zero_slices = 0;
    GlobalTransform transform = GlobalTransform::RowWise;
    double slice_l1_sum = 0.0;     // sum_k ||hat f_k||_1
    double slice_l2_sq_sum = 0.0;  // sum_k ||hat f_k||_2^2
};

/// Checks max_k FR_H(f_k) >= FR(f) / sqrt(|K|) (relative tolerance 1e-9).
/// Zero slices are left out of the maximum.
///
/// With the row-wise transform the inequality always holds, since
/// ||P||_1 = sum_k ||hat f_k||_1 and ||P||_2^2 = sum_k ||hat f_k||_2^2.
/// With the full DFT on G it can fail: on Z_2 x Z_2 the signal with rows
/// (1, 1) and (1, -1) has slice ratios 1 and global ratio 2 > sqrt(2).
LocalizationReport localization_check(const Signal& f, const ProductDecomposition& d,
                                      GlobalTransform transform = GlobalTransform::RowWise);

}  // namespace frlab
