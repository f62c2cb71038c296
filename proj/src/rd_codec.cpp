#include "frlab/rd_codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frlab/fourier_ratio.hpp"

namespace frlab {
namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'R', 'R', 'D'};
// decoding materializes the full signal
constexpr std::size_t kMaxDecodedSize = std::size_t{1} << 26;

unsigned index_width(std::size_t M) { return M <= 1 ? 0U : static_cast<unsigned>(std::bit_width(M - 1)); }

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
}

}  // namespace

double Descriptor::delta() const {
    if (support.empty()) return 0.0;
    return epsilon / (4.0 * std::sqrt(static_cast<double>(support.size()))) * coefficient_norm;
}

std::int64_t round_half_toward_zero(double x) {
    const double m = std::ceil(std::abs(x) - 0.5);
    if (!(m < 9.0e18)) throw std::overflow_error("quantized coefficient does not fit in 64 bits");
    const auto q = static_cast<std::int64_t>(m);
    return x < 0 ? -q : q;
}

EncodedDescriptor rd_encode(const OrthonormalSystem& system, const Signal& f, double eps) {
    check_eps(eps);
    if (!f.nonzero()) throw std::domain_error("rd_encode: zero signal");
    const ComplexVector c = system.analyze(std::span<const Complex>(f.values()));
    const std::size_t M = c.size();

    EncodedDescriptor out;
    Descriptor& d = out.descriptor;
    d.group = system.group();
    d.system = system.kind();
    d.coefficient_norm = norm_l2(c);
    d.epsilon = eps;

    const std::size_t k = minimal_support_size(c, eps / 4.0);
    d.support = top_indices(c, k);
    std::sort(d.support.begin(), d.support.end());
    const double delta = d.delta();
    for (std::size_t j : d.support) {
        d.re.push_back(round_half_toward_zero(c[j].real() / delta));
        d.im.push_back(round_half_toward_zero(c[j].imag() / delta));
    }

    out.bytes = serialize(d, &out.account);

    BoundTerms& b = out.account.bound_terms;
    b.r = fourier_ratio(c);
    const double ratio = b.r / eps;
    const double L = floored_log(ratio);
    b.main_term = ratio * ratio * L * L * std::log(static_cast<double>(std::max<std::size_t>(M, 2)));
    b.log_term = ratio * ratio * L * L * L;
    b.sparsifier_support = sparsity_level(b.r, eps / 4.0, M);
    if (M >= 2) b.refined_support = refined_support_bound(b.r, eps / 4.0, M);
    return out;
}

std::vector<std::uint8_t> serialize(const Descriptor& d, BitAccount* account) {
    const std::size_t M = d.group.size();
    if (d.re.size() != d.k() || d.im.size() != d.k()) throw std::invalid_argument("serialize: ragged descriptor");
    BitWriter w;
    for (auto b : kMagic) w.write_byte(b);
    w.write_byte(kDescriptorVersion);
    w.write_varint(d.group.rank());
    for (std::size_t n : d.group.factors()) w.write_varint(n);
    w.write_byte(static_cast<std::uint8_t>(d.system));
    w.write_varint(d.k());
    w.write_f64(d.coefficient_norm);
    w.write_f64(d.epsilon);
    const std::size_t header = w.bit_count();

    const unsigned width = index_width(M);
    for (std::size_t j : d.support) {
        if (j >= M) throw std::invalid_argument("serialize: support index out of range");
        w.write_bits(j, width);
    }
    const std::size_t after_support = w.bit_count();
    for (std::size_t i = 0; i < d.k(); ++i) {
        w.write_signed(d.re[i]);
        w.write_signed(d.im[i]);
    }
    const std::size_t after_coeffs = w.bit_count();
    w.pad_to_byte();

    if (account) {
        account->header_bits = header;
        account->support_bits = after_support - header;
        account->coefficient_bits = after_coeffs - after_support;
        account->padding_bits = w.bit_count() - after_coeffs;
        account->total = w.bit_count();
    }
    return w.bytes();
}

Descriptor parse_descriptor(std::span<const std::uint8_t> bytes) {
    BitReader r(bytes);
    for (auto b : kMagic) {
        if (r.read_byte() != b) throw DecodeError("bad magic, not an FRRD descriptor");
    }
    const std::uint8_t version = r.read_byte();
    if (version != kDescriptorVersion) throw DecodeError("unsupported descriptor version " + std::to_string(version));

    const std::uint64_t rank = r.read_varint();
    if (rank == 0 || rank > 64) throw DecodeError("implausible group rank");
    std::vector<std::size_t> factors;
    for (std::uint64_t i = 0; i < rank; ++i) {
        const std::uint64_t n = r.read_varint();
        if (n == 0) throw DecodeError("zero cyclic factor");
        factors.push_back(n);
    }

    Descriptor d;
    try {
        d.group = FiniteAbelianGroup(std::move(factors));
    } catch (const std::exception& e) {
        throw DecodeError(std::string("invalid group: ") + e.what());
    }
    const std::uint8_t kind = r.read_byte();
    if (kind > static_cast<std::uint8_t>(SystemKind::Haar)) throw DecodeError("unknown system label " + std::to_string(kind));
    d.system = static_cast<SystemKind>(kind);

    const std::size_t M = d.group.size();
    if (M > kMaxDecodedSize) throw DecodeError("group too large to decode");
    const std::uint64_t k = r.read_varint();
    if (k > M) throw DecodeError("support larger than the group");
    d.coefficient_norm = r.read_f64();
    d.epsilon = r.read_f64();
    if (!std::isfinite(d.coefficient_norm) || d.coefficient_norm < 0.0) throw DecodeError("invalid coefficient norm");
    if (!(d.epsilon > 0.0 && d.epsilon < 1.0)) throw DecodeError("eps outside (0,1)");

    const unsigned width = index_width(M);
    if (k * width > r.bits_remaining()) throw DecodeError("truncated stream");
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t j = r.read_bits(width);
        if (j >= M) throw DecodeError("support index out of range");
        if (!d.support.empty() && j <= d.support.back()) throw DecodeError("support indices must increase");
        d.support.push_back(j);
    }
    for (std::uint64_t i = 0; i < k; ++i) {
        d.re.push_back(r.read_signed());
        d.im.push_back(r.read_signed());
    }
    r.align_to_byte();
    if (r.bits_remaining() != 0) throw DecodeError("trailing bytes after descriptor");
    return d;
}

ComplexVector dequantize(const Descriptor& d) {
    ComplexVector c(d.group.size());
    const double delta = d.delta();
    for (std::size_t i = 0; i < d.k(); ++i) {
        c.at(d.support[i]) = Complex(static_cast<double>(d.re[i]) * delta, static_cast<double>(d.im[i]) * delta);
    }
    return c;
}

Signal rd_decode(const Descriptor& d) {
    const OrthonormalSystem system = [&] {
        try {
            return make_system(d.system, d.group);
        } catch (const std::invalid_argument& e) {
            throw DecodeError(std::string("descriptor names an impossible system: ") + e.what());
        }
    }();
    return Signal(d.group, system.synthesize(dequantize(d)));
}

Signal rd_decode(std::span<const std::uint8_t> bytes) { return rd_decode(parse_descriptor(bytes)); }

double rd_bit_bound(double r, double eps, std::size_t M, double C0, double C1) {
    if (!(r >= 1.0)) throw std::domain_error("rd_bit_bound: r must be >= 1");
    check_eps(eps);
    if (M < 2) throw std::domain_error("rd_bit_bound: M must be >= 2");
    const double ratio = r / eps;
    const double L = floored_log(ratio);
    return C0 * ratio * ratio * L * L * std::log(static_cast<double>(M)) + C1 * ratio * ratio * L * L * L;
}

double rd_bit_bound_gabor(double r, double eps, std::size_t N, std::size_t T, double C0, double C1) {
    if (!(r >= 1.0)) throw std::domain_error("rd_bit_bound_gabor: r must be >= 1");
    check_eps(eps);
    if (N * T < 2) throw std::domain_error("rd_bit_bound_gabor: NT must be >= 2");
    const double ratio = r / eps;
    const double L = floored_log(ratio);
    return C0 * ratio * ratio * L * L * std::log(static_cast<double>(N * T)) +
           C1 * ratio * ratio * L * L * floored_log(1.0 / eps);
}

}  // namespace frlab
