#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frlab/bitstream.hpp"
#include "frlab/signal.hpp"
#include "frlab/system.hpp"

namespace frlab {

inline constexpr std::uint8_t kDescriptorVersion = 1;

/// Quantized sparse description of a signal.
///
/// Wire format (version 1):
///   "FRRD" | version u8 | factor count varint | factors varint... |
///   system kind u8 | k varint | ||f^||_2 f64 LE | eps f64 LE |
///   k support indices, ceil(log2 M) bits each, increasing |
///   k (re, im) integer pairs, each as BitWriter::write_signed |
///   zero padding to a byte boundary
struct Descriptor {
    FiniteAbelianGroup group{std::vector<std::size_t>{1}};
    SystemKind system = SystemKind::Dft;
    double coefficient_norm = 0.0;  // ||f^||_2 of the encoded signal
    double epsilon = 0.0;
    std::vector<std::size_t> support;
    std::vector<std::int64_t> re;
    std::vector<std::int64_t> im;

    std::size_t k() const noexcept { return support.size(); }
    /// eps ||f^||_2 / (4 sqrt(k)); recomputed identically by encoder and decoder.
    double delta() const;
};

/// Reference values of the description-length bound, for reporting.
struct BoundTerms {
    double r = 0.0;                  // FR of the encoded coefficients
    double main_term = 0.0;          // (r/eps)^2 log(r/eps)^2 log M   (C0 = 1)
    double log_term = 0.0;           // (r/eps)^2 log(r/eps)^3         (C1 = 1)
    std::size_t sparsifier_support = 0;   // min(M, ceil(16 r^2 / eps^2))
    double refined_support = 0.0;    // (4r/eps)^2 log(4r/eps)^2 log M
};

struct BitAccount {
    std::size_t header_bits = 0;
    std::size_t support_bits = 0;
    std::size_t coefficient_bits = 0;
    std::size_t padding_bits = 0;
    std::size_t total = 0;
    BoundTerms bound_terms;
};

struct EncodedDescriptor {
    Descriptor descriptor;
    std::vector<std::uint8_t> bytes;
    BitAccount account;
};

/// Sparsify with eta = eps/4, quantize the kept coefficients to multiples of
/// delta = eps ||f^||_2 / (4 sqrt k), serialize. ||f - decode||_2 <= eps ||f||_2.
EncodedDescriptor rd_encode(const OrthonormalSystem& system, const Signal& f, double eps);

std::vector<std::uint8_t> serialize(const Descriptor& d, BitAccount* account = nullptr);

/// Strict parse: the stream must be consumed exactly. Throws DecodeError.
Descriptor parse_descriptor(std::span<const std::uint8_t> bytes);

ComplexVector dequantize(const Descriptor& d);
Signal rd_decode(const Descriptor& d);
Signal rd_decode(std::span<const std::uint8_t> bytes);

/// C0 (r/eps)^2 log(r/eps)^2 log M + C1 (r/eps)^2 log(r/eps)^3, logs floored at 1.
double rd_bit_bound(double r, double eps, std::size_t M, double C0, double C1);

/// Gabor-class variant: C0 (r/eps)^2 log(r/eps)^2 log(NT) + C1 (r/eps)^2 log(r/eps)^2 log(1/eps).
double rd_bit_bound_gabor(double r, double eps, std::size_t N, std::size_t T, double C0, double C1);

/// Nearest integer to x, ties toward zero.
std::int64_t round_half_toward_zero(double x);

}  // namespace frlab
