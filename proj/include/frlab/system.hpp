#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "frlab/group.hpp"
#include "frlab/signal.hpp"

namespace frlab {

enum class SystemKind : std::uint8_t { Dft = 0, Wht = 1, GaborBlock = 2, Haar = 3 };

std::string to_string(SystemKind kind);

/// Orthonormal basis {phi_j} of C^G together with its analysis map
/// f -> (<f, phi_j>)_j and synthesis map c -> sum_j c_j phi_j.
///
/// Coefficient index j is laid out like a group element (same mixed radix).
/// Conventions:
///   dft          phi_g(x)     = M^{-1/2} exp(+2 pi i <g, x>)
///   wht          phi_j(x)     = 2^{-n/2} (-1)^{popcount(j & x)}
///   gabor-block  g_{m,a}(t,b) = N^{-1/2} exp(+2 pi i m t / N) [b == a]   on Z_N x Z_T
///   haar         j = 0 scaling function, j = 2^l + k wavelet at level l, shift k
/// so analysis always carries the exp(-2 pi i ...) sign.
class OrthonormalSystem {
public:
    SystemKind kind() const noexcept { return kind_; }
    const FiniteAbelianGroup& group() const noexcept { return group_; }
    std::size_t dimension() const noexcept { return group_.size(); }

    /// max_{x,j} |phi_j(x)|
    double tau() const noexcept { return tau_; }

    /// "dft", "wht", "gabor-block" or "haar".
    std::string label() const { return to_string(kind_); }
    /// Round-trippable spec, e.g. "dft:4x6", "wht:5", "gabor:N=16,T=8", "haar:64".
    std::string spec() const;

    Complex basis_value(std::size_t j, std::size_t x) const;
    ComplexVector basis_vector(std::size_t j) const;

    ComplexVector analyze(std::span<const Complex> f) const;
    ComplexVector synthesize(std::span<const Complex> c) const;

    CoefficientVector analyze(const Signal& f) const;
    Signal synthesize(const CoefficientVector& c) const;

private:
    OrthonormalSystem(SystemKind kind, FiniteAbelianGroup group);

    friend OrthonormalSystem make_dft(const FiniteAbelianGroup&);
    friend OrthonormalSystem make_wht(std::size_t);
    friend OrthonormalSystem make_gabor_block(std::size_t, std::size_t);
    friend OrthonormalSystem make_haar(std::size_t);

    void check_length(std::size_t n, const char* what) const;

    SystemKind kind_;
    FiniteAbelianGroup group_;
    double tau_ = 0.0;
};

OrthonormalSystem make_dft(const FiniteAbelianGroup& group);
/// Walsh-Hadamard system on Z_2^n; n >= 1.
OrthonormalSystem make_wht(std::size_t n);
/// Block Gabor system on Z_N x Z_T: modulations of a width-N rectangular
/// window, one window per row. tau = N^{-1/2}.
OrthonormalSystem make_gabor_block(std::size_t N, std::size_t T);
/// Haar system on Z_M, M a power of two.
OrthonormalSystem make_haar(std::size_t M);

/// Rebuilds a system from its kind and group (used by descriptor decoding).
OrthonormalSystem make_system(SystemKind kind, const FiniteAbelianGroup& group);
OrthonormalSystem parse_system(const std::string& spec);

CoefficientVector analyze(const OrthonormalSystem& system, const Signal& f);
Signal synthesize(const OrthonormalSystem& system, const CoefficientVector& c);

struct BoundednessReport {
    double tau;
    double bound;  // M^{-1/2}
    bool passes;
};

/// Incoherence check tau <= M^{-1/2} (1 + 1e-12).
BoundednessReport check_boundedness(const OrthonormalSystem& system);

}  // namespace frlab
