#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frlab {

/// Malformed, truncated or unsupported encoded data.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// MSB-first bit writer.
class BitWriter {
public:
    void write_bits(std::uint64_t value, unsigned count);
    void write_byte(std::uint8_t b) { write_bits(b, 8); }
    void write_varint(std::uint64_t value);  // LEB128
    void write_f64(double value);            // IEEE-754, little-endian byte order
    /// Unary width prefix ((w-1) ones, one zero) followed by the w-bit two's
    /// complement payload, w minimal.
    void write_signed(std::int64_t value);
    void pad_to_byte();

    std::size_t bit_count() const noexcept { return bits_; }
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

    static unsigned signed_width(std::int64_t value);
    static std::size_t signed_code_length(std::int64_t value) { return 2 * std::size_t{signed_width(value)}; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint64_t read_bits(unsigned count);
    std::uint8_t read_byte() { return static_cast<std::uint8_t>(read_bits(8)); }
    std::uint64_t read_varint();
    double read_f64();
    std::int64_t read_signed();
    /// Skips to the next byte boundary; the skipped bits must be zero.
    void align_to_byte();

    std::size_t bit_position() const noexcept { return pos_; }
    std::size_t bits_remaining() const noexcept { return data_.size() * 8 - pos_; }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace frlab
