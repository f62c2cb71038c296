#include "frlab/group.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace frlab {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("group needs at least one cyclic factor");
    }
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 0;) {
        if (factors_[i] == 0) {
            throw std::invalid_argument("cyclic factor orders must be >= 1");
        }
        strides_[i] = size_;
        if (size_ > std::numeric_limits<std::size_t>::max() / factors_[i]) {
            throw std::overflow_error("group order overflows size_t");
        }
        size_ *= factors_[i];
    }
}

std::vector<std::size_t> FiniteAbelianGroup::coordinates(std::size_t index) const {
    if (index >= size_) {
        throw std::out_of_range("group element index out of range");
    }
    std::vector<std::size_t> coords(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        coords[i] = index % factors_[i];
        index /= factors_[i];
    }
    return coords;
}

std::size_t FiniteAbelianGroup::index(std::span<const std::size_t> coords) const {
    if (coords.size() != factors_.size()) {
        throw std::invalid_argument("coordinate tuple has wrong rank");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (coords[i] >= factors_[i]) {
            throw std::out_of_range("coordinate exceeds cyclic order");
        }
        idx += coords[i] * strides_[i];
    }
    return idx;
}

double FiniteAbelianGroup::pairing(std::size_t gamma, std::size_t x) const {
    double total = 0.0;
    for (std::size_t i = factors_.size(); i-- > 0;) {
        const std::size_t n = factors_[i];
        const std::size_t g = gamma % n;
        const std::size_t y = x % n;
        gamma /= n;
        x /= n;
        // reduce the integer product first so the phase stays exact
        total += static_cast<double>((g * y) % n) / static_cast<double>(n);
    }
    return total - std::floor(total);
}

std::string FiniteAbelianGroup::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << 'x';
        out << factors_[i];
    }
    return out.str();
}

FiniteAbelianGroup parse_group(const std::string& text) {
    std::vector<std::size_t> factors;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find('x', start);
        const std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (part.empty() || part.size() > 18 || part.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("malformed group spec '" + text + "'");
        }
        factors.push_back(std::stoull(part));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return FiniteAbelianGroup(std::move(factors));
}

}  // namespace frlab
