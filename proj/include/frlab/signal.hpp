#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "frlab/group.hpp"

namespace frlab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

double norm_l1(std::span<const Complex> v);
double norm_l2(std::span<const Complex> v);
double norm_linf(std::span<const Complex> v);

/// ||a - b||_2; sizes must match.
double distance_l2(std::span<const Complex> a, std::span<const Complex> b);

/// Complex-valued function on a finite abelian group (the spatial side).
class Signal {
public:
    explicit Signal(FiniteAbelianGroup group);
    Signal(FiniteAbelianGroup group, ComplexVector values);

    const FiniteAbelianGroup& group() const noexcept { return group_; }
    const ComplexVector& values() const noexcept { return values_; }
    ComplexVector& values() noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    Complex operator[](std::size_t i) const { return values_[i]; }
    Complex& operator[](std::size_t i) { return values_[i]; }

    double l2() const { return norm_l2(values_); }
    bool nonzero() const { return l2() > 0.0; }

private:
    FiniteAbelianGroup group_;
    ComplexVector values_;
};

/// Coefficients of a signal in an orthonormal system (the basis side).
struct CoefficientVector {
    std::string system;  // spec string of the producing system, e.g. "dft:4x6"
    ComplexVector entries;

    std::size_t size() const noexcept { return entries.size(); }
    Complex operator[](std::size_t i) const { return entries[i]; }
    Complex& operator[](std::size_t i) { return entries[i]; }
};

}  // namespace frlab
