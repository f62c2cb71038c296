#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <frlab/fourier_ratio.hpp>
#include <frlab/rd_codec.hpp>
#include <frlab/signal_source.hpp>

#include "oracles.hpp"

using namespace frlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double roundtrip_error(const OrthonormalSystem& s, const Signal& f, double eps) {
    const auto enc = rd_encode(s, f, eps);
    return distance_l2(rd_decode(enc.bytes).values(), f.values());
}

std::vector<OrthonormalSystem> systems() {
    return {make_dft(FiniteAbelianGroup::cyclic(64)), make_dft(FiniteAbelianGroup({4, 6})), make_wht(6), make_gabor_block(16, 4),
            make_haar(64)};
}

}  // namespace

TEST_CASE("rounding is to nearest with ties toward zero") {
    CHECK(round_half_toward_zero(2.5) == 2);
    CHECK(round_half_toward_zero(-2.5) == -2);
    CHECK(round_half_toward_zero(0.5) == 0);
    CHECK(round_half_toward_zero(-0.5) == 0);
    CHECK(round_half_toward_zero(2.5000001) == 3);
    CHECK(round_half_toward_zero(-7.49) == -7);
    CHECK(round_half_toward_zero(0.0) == 0);
}

TEST_CASE("a single basis function codes with k = 1") {
    for (const auto& s : systems()) {
        const Signal f(s.group(), s.basis_vector(5));
        const auto enc = rd_encode(s, f, 0.2);
        CHECK(enc.descriptor.k() == 1);
        CHECK(enc.descriptor.support == std::vector<std::size_t>{5});
        CHECK(enc.account.support_bits == static_cast<std::size_t>(std::ceil(std::log2(double(s.dimension())))));
        CHECK(roundtrip_error(s, f, 0.2) < 1e-12);
    }
}

TEST_CASE("coefficients on the quantizer grid are reproduced") {
    // four equal-modulus coefficients a: ||c|| = 2a and delta = eps a / 4, so a / delta = 8 at eps = 1/2
    auto s = make_dft(FiniteAbelianGroup::cyclic(32));
    ComplexVector c(32, 0.0);
    const double a = 0.75;
    c[2] = a;
    c[9] = -a;
    c[17] = Complex(0.0, a);
    c[30] = Complex(0.0, -a);
    const Signal f(s.group(), s.synthesize(c));
    const auto enc = rd_encode(s, f, 0.5);
    CHECK(enc.descriptor.k() == 4);
    CHECK(enc.descriptor.re == std::vector<std::int64_t>{8, -8, 0, 0});
    CHECK(enc.descriptor.im == std::vector<std::int64_t>{0, 0, 8, -8});
    CHECK(oracle::max_abs_diff(dequantize(enc.descriptor), s.analyze(f.values())) < 1e-14);
    CHECK(distance_l2(rd_decode(enc.descriptor).values(), f.values()) < 1e-14);
}

TEST_CASE("harmonic coefficients on Z_256 at eps = 0.2") {
    auto s = make_dft(FiniteAbelianGroup::cyclic(256));
    const Signal f = synthesize(s, harmonic_model(256));
    const auto enc = rd_encode(s, f, 0.2);
    const double err = distance_l2(rd_decode(enc.bytes).values(), f.values());
    CHECK(err <= 0.2 * f.l2());
    // truncation alone stays within eps/4, quantization within eps/2
    const auto c = s.analyze(f.values());
    const auto q = dequantize(enc.descriptor);
    ComplexVector kept(256, 0.0);
    for (std::size_t j : enc.descriptor.support) kept[j] = c[j];
    CHECK(distance_l2(kept, c) <= 0.05 * f.l2());
    CHECK(distance_l2(kept, q) <= 0.1 * f.l2() * (1.0 + 1e-12));
    CHECK(enc.descriptor.k() <= enc.account.bound_terms.sparsifier_support);
    CHECK_THAT(enc.account.bound_terms.r, WithinRel(fourier_ratio(c), 1e-12));
}

TEST_CASE("distortion guarantee over random signals") {
    std::size_t violations = 0;
    for (const auto& s : systems()) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Signal f(s.group(), oracle::random_vector(s.dimension(), 400 + seed));
            for (double eps : {0.05, 0.1, 0.2, 0.5}) {
                const auto enc = rd_encode(s, f, eps);
                const double err = distance_l2(rd_decode(enc.bytes).values(), f.values());
                violations += err > eps * f.l2() * (1.0 + 1e-9);
                CHECK(enc.account.total == 8 * enc.bytes.size());
                CHECK(enc.account.total == enc.account.header_bits + enc.account.support_bits +
                                               enc.account.coefficient_bits + enc.account.padding_bits);
                CHECK(enc.account.padding_bits < 8);
                const double delta = enc.descriptor.delta();
                for (std::size_t i = 0; i < enc.descriptor.k(); ++i) {
                    CHECK(std::abs(enc.descriptor.re[i] * delta) <= enc.descriptor.coefficient_norm + 2 * delta);
                    CHECK(std::abs(enc.descriptor.im[i] * delta) <= enc.descriptor.coefficient_norm + 2 * delta);
                }
            }
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("encoding is deterministic and parse inverts serialize") {
    auto s = make_wht(5);
    const Signal f = generate_signal("rademacher", s, 8);
    const auto a = rd_encode(s, f, 0.1);
    const auto b = rd_encode(s, f, 0.1);
    CHECK(a.bytes == b.bytes);
    const Descriptor d = parse_descriptor(a.bytes);
    CHECK(d.group == s.group());
    CHECK(d.system == SystemKind::Wht);
    CHECK(d.support == a.descriptor.support);
    CHECK(d.re == a.descriptor.re);
    CHECK(d.im == a.descriptor.im);
    CHECK(d.coefficient_norm == a.descriptor.coefficient_norm);
    CHECK(d.epsilon == 0.1);
    CHECK(std::is_sorted(d.support.begin(), d.support.end()));
    CHECK(serialize(d) == a.bytes);
}

TEST_CASE("header layout") {
    auto s = make_dft(FiniteAbelianGroup({4, 6}));
    const Signal f(s.group(), s.basis_vector(0));
    const auto enc = rd_encode(s, f, 0.5);
    const auto& bytes = enc.bytes;
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "FRRD");
    CHECK(bytes[4] == kDescriptorVersion);
    CHECK(bytes[5] == 2);  // factor count
    CHECK(bytes[6] == 4);
    CHECK(bytes[7] == 6);
    CHECK(bytes[8] == static_cast<std::uint8_t>(SystemKind::Dft));
    CHECK(bytes[9] == 1);  // k
    CHECK(enc.account.header_bits == 8 * (10 + 16));
}

TEST_CASE("empty support decodes to the zero signal") {
    Descriptor d;
    d.group = FiniteAbelianGroup({8});
    d.system = SystemKind::Haar;
    d.coefficient_norm = 1.0;
    d.epsilon = 0.5;
    const auto bytes = serialize(d);
    const Signal z = rd_decode(bytes);
    CHECK(z.size() == 8);
    CHECK(z.l2() == 0.0);
    CHECK_THROWS_AS(rd_encode(make_haar(8), Signal(FiniteAbelianGroup({8})), 0.5), std::domain_error);
    CHECK_THROWS_AS(rd_encode(make_haar(8), Signal(FiniteAbelianGroup({8}), ComplexVector(8, 1.0)), 1.0), std::domain_error);
}

TEST_CASE("malformed streams are rejected") {
    auto s = make_dft(FiniteAbelianGroup::cyclic(64));
    const auto bytes = rd_encode(s, generate_signal("sparse:4", s, 1), 0.2).bytes;
    for (std::size_t n = 0; n < bytes.size(); ++n) {
        const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(n));
        CHECK_THROWS_AS(rd_decode(cut), DecodeError);
    }
    auto extra = bytes;
    extra.push_back(0);
    CHECK_THROWS_AS(parse_descriptor(extra), DecodeError);
    auto magic = bytes;
    magic[0] = 'X';
    CHECK_THROWS_AS(parse_descriptor(magic), DecodeError);
    auto version = bytes;
    version[4] = 2;
    CHECK_THROWS_AS(parse_descriptor(version), DecodeError);
    auto label = bytes;
    label[7] = 9;  // "FRRD" v, count 1, factor 64, kind
    CHECK_THROWS_AS(parse_descriptor(label), DecodeError);
    auto haar_on_6 = bytes;
    haar_on_6[6] = 6;
    haar_on_6[7] = static_cast<std::uint8_t>(SystemKind::Haar);
    CHECK_THROWS_AS(rd_decode(haar_on_6), DecodeError);
}

TEST_CASE("support indices must increase") {
    Descriptor d;
    d.group = FiniteAbelianGroup({16});
    d.coefficient_norm = 1.0;
    d.epsilon = 0.5;
    d.support = {5, 3};
    d.re = {1, 1};
    d.im = {0, 0};
    CHECK_THROWS_AS(parse_descriptor(serialize(d)), DecodeError);
    d.support = {3, 5};
    CHECK_NOTHROW(parse_descriptor(serialize(d)));
}

TEST_CASE("bit bound evaluators") {
    const double L = std::log(4.0);
    const double v = rd_bit_bound(2.0, 0.5, 1024, 1.0, 1.0);
    CHECK_THAT(v, WithinRel(16.0 * L * L * std::log(1024.0) + 16.0 * L * L * L, 1e-14));
    CHECK_THAT(v, WithinAbs(255.75, 0.02));
    // r / eps <= e: both logs floored at 1
    CHECK_THAT(rd_bit_bound(1.0, 0.5, 64, 2.0, 3.0), WithinRel(2.0 * 4.0 * std::log(64.0) + 3.0 * 4.0, 1e-14));
    CHECK_THAT(rd_bit_bound_gabor(2.0, 0.5, 32, 32, 1.0, 0.0), WithinRel(rd_bit_bound(2.0, 0.5, 1024, 1.0, 0.0), 1e-14));
    CHECK_THAT(rd_bit_bound_gabor(2.0, 0.01, 8, 4, 0.0, 1.0),
               WithinRel(40000.0 * std::pow(std::log(200.0), 2) * std::log(100.0), 1e-14));
    CHECK_THROWS_AS(rd_bit_bound(0.5, 0.5, 64, 1, 1), std::domain_error);
    CHECK_THROWS_AS(rd_bit_bound(2.0, 1.5, 64, 1, 1), std::domain_error);
}

TEST_CASE("bit totals follow A k log2 M + B k + H") {
    // grid-point means over 8 seeded signals; single signals scatter by the
    // random phases of their coefficients
    std::vector<double> bits, kl, ks;
    for (std::size_t M = 64; M <= 4096; M *= 2) {
        auto s = make_dft(FiniteAbelianGroup::cyclic(M));
        for (std::size_t sp : {1u, 2u, 4u, 8u, 16u, 32u}) {
            double total = 0.0;
            for (std::uint64_t seed = 0; seed < 8; ++seed) {
                const auto enc = rd_encode(s, generate_signal("sparse:" + std::to_string(sp), s, 1000 * M + 10 * sp + seed), 0.2);
                REQUIRE(enc.descriptor.k() == sp);
                total += static_cast<double>(enc.account.total);
            }
            bits.push_back(total / 8.0);
            kl.push_back(static_cast<double>(sp) * std::log2(double(M)));
            ks.push_back(static_cast<double>(sp));
        }
    }
    Eigen::MatrixXd X(bits.size(), 3);
    Eigen::VectorXd y(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        X(i, 0) = kl[i];
        X(i, 1) = ks[i];
        X(i, 2) = 1.0;
        y(i) = bits[i];
    }
    const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd fit = X * coef;
    double worst = 0.0;
    for (std::size_t i = 0; i < bits.size(); ++i) worst = std::max(worst, std::abs(fit(i) - y(i)) / y(i));
    CHECK(worst < 0.05);
    CHECK_THAT(coef(0), WithinAbs(1.0, 0.05));  // one index bit per log2 M
}
