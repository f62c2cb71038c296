#include "frlab/bitstream.hpp"

#include <bit>
#include <cstring>

namespace frlab {

void BitWriter::write_bits(std::uint64_t value, unsigned count) {
    for (unsigned i = count; i-- > 0;) {
        if (bits_ % 8 == 0) bytes_.push_back(0);
        if ((value >> i) & 1U) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (bits_ % 8));
        ++bits_;
    }
}

void BitWriter::write_varint(std::uint64_t value) {
    do {
        std::uint8_t b = value & 0x7FU;
        value >>= 7;
        if (value) b |= 0x80U;
        write_byte(b);
    } while (value);
}

void BitWriter::write_f64(double value) {
    const auto bits = std::bit_cast<std::uint64_t>(value);
    for (int i = 0; i < 8; ++i) write_byte(static_cast<std::uint8_t>(bits >> (8 * i)));
}

unsigned BitWriter::signed_width(std::int64_t value) {
    const auto magnitude = static_cast<std::uint64_t>(value < 0 ? ~value : value);
    return static_cast<unsigned>(std::bit_width(magnitude)) + 1;
}

void BitWriter::write_signed(std::int64_t value) {
    const unsigned w = signed_width(value);
    for (unsigned i = 1; i < w; ++i) write_bits(1, 1);
    write_bits(0, 1);
    const std::uint64_t mask = (w == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1);
    write_bits(static_cast<std::uint64_t>(value) & mask, w);
}

void BitWriter::pad_to_byte() {
    while (bits_ % 8) write_bits(0, 1);
}

std::uint64_t BitReader::read_bits(unsigned count) {
    if (count > 64) throw DecodeError("bit field wider than 64 bits");
    if (count > bits_remaining()) throw DecodeError("truncated stream");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < count; ++i, ++pos_) {
        v = (v << 1) | ((data_[pos_ / 8] >> (7 - pos_ % 8)) & 1U);
    }
    return v;
}

std::uint64_t BitReader::read_varint() {
    std::uint64_t v = 0;
    for (unsigned shift = 0;; shift += 7) {
        if (shift > 63) throw DecodeError("varint overflows 64 bits");
        const std::uint8_t b = read_byte();
        if (shift == 63 && (b & 0x7EU)) throw DecodeError("varint overflows 64 bits");
        v |= static_cast<std::uint64_t>(b & 0x7FU) << shift;
        if (!(b & 0x80U)) {
            if (b == 0 && shift > 0) throw DecodeError("non-canonical varint");
            return v;
        }
    }
}

double BitReader::read_f64() {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(read_byte()) << (8 * i);
    return std::bit_cast<double>(bits);
}

std::int64_t BitReader::read_signed() {
    unsigned w = 1;
    while (read_bits(1) == 1) {
        if (++w > 64) throw DecodeError("integer width prefix exceeds 64");
    }
    const std::uint64_t raw = read_bits(w);
    std::int64_t v = static_cast<std::int64_t>(raw);
    if (w < 64 && ((raw >> (w - 1)) & 1U)) v = static_cast<std::int64_t>(raw | (~std::uint64_t{0} << w));
    if (BitWriter::signed_width(v) != w) throw DecodeError("non-canonical integer code");
    return v;
}

void BitReader::align_to_byte() {
    while (pos_ % 8) {
        if (read_bits(1) != 0) throw DecodeError("nonzero padding bits");
    }
}

}  // namespace frlab
