#include <catch_amalgamated.hpp>

#include <limits>

#include <frlab/bitstream.hpp>
#include <frlab/rng.hpp>

using namespace frlab;

TEST_CASE("bits are written most significant first") {
    BitWriter w;
    w.write_bits(0b101, 3);
    w.write_bits(0b1, 1);
    w.pad_to_byte();
    REQUIRE(w.bytes().size() == 1);
    CHECK(w.bytes()[0] == 0b10110000);
    CHECK(w.bit_count() == 8);
}

TEST_CASE("varint round trip and canonical form") {
    for (std::uint64_t v : std::initializer_list<std::uint64_t>{0, 1, 127, 128, 300, std::uint64_t{1} << 35, std::numeric_limits<std::uint64_t>::max()}) {
        BitWriter w;
        w.write_varint(v);
        BitReader r(w.bytes());
        CHECK(r.read_varint() == v);
        CHECK(r.bits_remaining() == 0);
    }
    const std::vector<std::uint8_t> padded{0x81, 0x00};
    CHECK_THROWS_AS(BitReader(padded).read_varint(), DecodeError);
    std::vector<std::uint8_t> too_long(10, 0xFF);
    too_long.push_back(0x01);
    CHECK_THROWS_AS(BitReader(too_long).read_varint(), DecodeError);
}

TEST_CASE("f64 is stored little-endian and exactly") {
    BitWriter w;
    w.write_f64(1.0);
    CHECK(w.bytes() == std::vector<std::uint8_t>{0, 0, 0, 0, 0, 0, 0xF0, 0x3F});
    for (double x : {0.1, -3.5e-300, std::numeric_limits<double>::max(), 0.0}) {
        BitWriter v;
        v.write_f64(x);
        BitReader r(v.bytes());
        CHECK(r.read_f64() == x);
    }
}

TEST_CASE("signed integer code") {
    CHECK(BitWriter::signed_width(0) == 1);
    CHECK(BitWriter::signed_width(-1) == 1);
    CHECK(BitWriter::signed_width(1) == 2);
    CHECK(BitWriter::signed_width(-2) == 2);
    CHECK(BitWriter::signed_width(2) == 3);
    CHECK(BitWriter::signed_code_length(20) == 12);

    BitWriter w;
    w.write_signed(0);  // "0" + "0"
    w.write_signed(-1);  // "0" + "1"
    w.write_signed(2);  // "110" + "010"
    CHECK(w.bit_count() == 10);
    w.pad_to_byte();
    CHECK(w.bytes() == std::vector<std::uint8_t>{0b00011100, 0b10000000});

    Rng rng(5);
    BitWriter many;
    std::vector<std::int64_t> values{std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()};
    for (int i = 0; i < 500; ++i) values.push_back(static_cast<std::int64_t>(rng.next()) >> rng.below(64));
    std::size_t expected_bits = 0;
    for (auto v : values) {
        many.write_signed(v);
        expected_bits += BitWriter::signed_code_length(v);
    }
    CHECK(many.bit_count() == expected_bits);
    BitReader r(many.bytes());
    for (auto v : values) CHECK(r.read_signed() == v);
}

TEST_CASE("non-canonical integer codes are rejected") {
    // width 2 payload "00" encodes 0, which has width 1
    BitWriter w;
    w.write_bits(0b10, 2);
    w.write_bits(0b00, 2);
    w.pad_to_byte();
    CHECK_THROWS_AS(BitReader(w.bytes()).read_signed(), DecodeError);
}

TEST_CASE("reader bounds and padding") {
    const std::vector<std::uint8_t> one{0xA0};
    BitReader r(one);
    CHECK(r.read_bits(3) == 0b101);
    CHECK_THROWS_AS(r.read_bits(6), DecodeError);
    BitReader pad(one);
    pad.read_bits(1);
    CHECK_THROWS_AS(pad.align_to_byte(), DecodeError);
    const std::vector<std::uint8_t> clean{0x80};
    BitReader ok(clean);
    ok.read_bits(1);
    ok.align_to_byte();
    CHECK(ok.bit_position() == 8);
}
