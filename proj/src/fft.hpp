#pragma once

#include <cstddef>
#include <vector>

#include "frlab/signal.hpp"

namespace frlab::detail {

enum class FftSign { Forward = -1, Backward = +1 };

/// Unnormalized multi-dimensional DFT of `data` (row-major over `dims`)
/// along the axes flagged in `axes`; other axes are batched.
/// Forward uses e^{-2 pi i k x / n}.
void dft_axes(ComplexVector& data, const std::vector<std::size_t>& dims, const std::vector<bool>& axes, FftSign sign);

}  // namespace frlab::detail
