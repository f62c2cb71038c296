#include "frlab/system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <regex>
#include <stdexcept>

#include "fft.hpp"

namespace frlab {
namespace {

void scale(ComplexVector& v, double s) {
    for (auto& z : v) z *= s;
}

void haar_forward(ComplexVector& v) {
    const double r = std::numbers::sqrt2 / 2.0;
    ComplexVector out(v.size());
    for (std::size_t n = v.size(); n > 1; n /= 2) {
        const std::size_t half = n / 2;
        ComplexVector smooth(half);
        for (std::size_t i = 0; i < half; ++i) {
            smooth[i] = (v[2 * i] + v[2 * i + 1]) * r;
            out[half + i] = (v[2 * i] - v[2 * i + 1]) * r;
        }
        std::copy(smooth.begin(), smooth.end(), v.begin());
    }
    out[0] = v[0];
    v.swap(out);
}

void haar_inverse(ComplexVector& c) {
    const double r = std::numbers::sqrt2 / 2.0;
    ComplexVector v{c[0]};
    for (std::size_t half = 1; half < c.size(); half *= 2) {
        ComplexVector next(2 * half);
        for (std::size_t i = 0; i < half; ++i) {
            next[2 * i] = (v[i] + c[half + i]) * r;
            next[2 * i + 1] = (v[i] - c[half + i]) * r;
        }
        v.swap(next);
    }
    c.swap(v);
}

void walsh_hadamard(ComplexVector& v) {
    for (std::size_t h = 1; h < v.size(); h *= 2) {
        for (std::size_t i = 0; i < v.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const Complex a = v[j];
                const Complex b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
    scale(v, 1.0 / std::sqrt(static_cast<double>(v.size())));
}

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

}  // namespace

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Dft: return "dft";
        case SystemKind::Wht: return "wht";
        case SystemKind::GaborBlock: return "gabor-block";
        case SystemKind::Haar: return "haar";
    }
    throw std::invalid_argument("unknown system kind");
}

OrthonormalSystem::OrthonormalSystem(SystemKind kind, FiniteAbelianGroup group)
    : kind_(kind), group_(std::move(group)) {}

std::string OrthonormalSystem::spec() const {
    switch (kind_) {
        case SystemKind::Dft: return "dft:" + group_.to_string();
        case SystemKind::Wht: return "wht:" + std::to_string(group_.rank());
        case SystemKind::GaborBlock:
            return "gabor:N=" + std::to_string(group_.factors()[0]) + ",T=" + std::to_string(group_.factors()[1]);
        case SystemKind::Haar: return "haar:" + std::to_string(group_.size());
    }
    return {};
}

void OrthonormalSystem::check_length(std::size_t n, const char* what) const {
    if (n != dimension()) {
        throw std::invalid_argument(std::string(what) + ": length " + std::to_string(n) +
                                    " does not match system dimension " + std::to_string(dimension()));
    }
}

Complex OrthonormalSystem::basis_value(std::size_t j, std::size_t x) const {
    const std::size_t M = dimension();
    if (j >= M || x >= M) throw std::out_of_range("basis_value: index out of range");
    switch (kind_) {
        case SystemKind::Dft: {
            const double phase = 2.0 * std::numbers::pi * group_.pairing(j, x);
            return std::polar(1.0 / std::sqrt(static_cast<double>(M)), phase);
        }
        case SystemKind::Wht: {
            const double mag = 1.0 / std::sqrt(static_cast<double>(M));
            return (std::popcount(j & x) % 2 == 0) ? mag : -mag;
        }
        case SystemKind::GaborBlock: {
            const std::size_t N = group_.factors()[0];
            const std::size_t T = group_.factors()[1];
            const std::size_t m = j / T, a = j % T;
            const std::size_t t = x / T, b = x % T;
            if (a != b) return 0.0;
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((m * t) % N) / static_cast<double>(N);
            return std::polar(1.0 / std::sqrt(static_cast<double>(N)), phase);
        }
        case SystemKind::Haar: {
            if (j == 0) return 1.0 / std::sqrt(static_cast<double>(M));
            const std::size_t level = std::bit_width(j) - 1;
            const std::size_t shift = j - (std::size_t{1} << level);
            const std::size_t len = M >> level;
            if (x < shift * len || x >= (shift + 1) * len) return 0.0;
            const double mag = 1.0 / std::sqrt(static_cast<double>(len));
            return (x - shift * len < len / 2) ? mag : -mag;
        }
    }
    return 0.0;
}

ComplexVector OrthonormalSystem::basis_vector(std::size_t j) const {
    ComplexVector e(dimension());
    e.at(j) = 1.0;
    return synthesize(e);
}

ComplexVector OrthonormalSystem::analyze(std::span<const Complex> f) const {
    check_length(f.size(), "analyze");
    ComplexVector c(f.begin(), f.end());
    switch (kind_) {
        case SystemKind::Dft:
            detail::dft_axes(c, group_.factors(), std::vector<bool>(group_.rank(), true), detail::FftSign::Forward);
            scale(c, 1.0 / std::sqrt(static_cast<double>(dimension())));
            break;
        case SystemKind::GaborBlock:
            detail::dft_axes(c, group_.factors(), {true, false}, detail::FftSign::Forward);
            scale(c, 1.0 / std::sqrt(static_cast<double>(group_.factors()[0])));
            break;
        case SystemKind::Wht: walsh_hadamard(c); break;
        case SystemKind::Haar: haar_forward(c); break;
    }
    return c;
}

ComplexVector OrthonormalSystem::synthesize(std::span<const Complex> c) const {
    check_length(c.size(), "synthesize");
    ComplexVector f(c.begin(), c.end());
    switch (kind_) {
        case SystemKind::Dft:
            detail::dft_axes(f, group_.factors(), std::vector<bool>(group_.rank(), true), detail::FftSign::Backward);
            scale(f, 1.0 / std::sqrt(static_cast<double>(dimension())));
            break;
        case SystemKind::GaborBlock:
            detail::dft_axes(f, group_.factors(), {true, false}, detail::FftSign::Backward);
            scale(f, 1.0 / std::sqrt(static_cast<double>(group_.factors()[0])));
            break;
        case SystemKind::Wht: walsh_hadamard(f); break;
        case SystemKind::Haar: haar_inverse(f); break;
    }
    return f;
}

CoefficientVector OrthonormalSystem::analyze(const Signal& f) const {
    if (!(f.group() == group_)) {
        throw std::invalid_argument("analyze: signal lives on " + f.group().to_string() + ", system on " +
                                    group_.to_string());
    }
    return CoefficientVector{spec(), analyze(std::span<const Complex>(f.values()))};
}

Signal OrthonormalSystem::synthesize(const CoefficientVector& c) const {
    return Signal(group_, synthesize(std::span<const Complex>(c.entries)));
}

OrthonormalSystem make_dft(const FiniteAbelianGroup& group) {
    OrthonormalSystem s(SystemKind::Dft, group);
    s.tau_ = 1.0 / std::sqrt(static_cast<double>(group.size()));
    return s;
}

OrthonormalSystem make_wht(std::size_t n) {
    if (n == 0) throw std::invalid_argument("make_wht: n must be >= 1");
    if (n >= 8 * sizeof(std::size_t) - 1) throw std::invalid_argument("make_wht: n too large");
    OrthonormalSystem s(SystemKind::Wht, FiniteAbelianGroup(std::vector<std::size_t>(n, 2)));
    s.tau_ = 1.0 / std::sqrt(static_cast<double>(s.dimension()));
    return s;
}

OrthonormalSystem make_gabor_block(std::size_t N, std::size_t T) {
    if (N == 0 || T == 0) throw std::invalid_argument("make_gabor_block: N and T must be >= 1");
    OrthonormalSystem s(SystemKind::GaborBlock, FiniteAbelianGroup({N, T}));
    s.tau_ = 1.0 / std::sqrt(static_cast<double>(N));
    return s;
}

OrthonormalSystem make_haar(std::size_t M) {
    if (!is_power_of_two(M)) {
        throw std::invalid_argument("make_haar: M = " + std::to_string(M) + " is not a power of two");
    }
    OrthonormalSystem s(SystemKind::Haar, FiniteAbelianGroup::cyclic(M));
    // one function per dyadic level; moduli are constant within a level
    double tau = 0.0;
    for (std::size_t j = 0; j < M; j = (j == 0 ? 1 : 2 * j)) {
        tau = std::max(tau, norm_linf(s.basis_vector(j)));
    }
    s.tau_ = tau;
    return s;
}

OrthonormalSystem make_system(SystemKind kind, const FiniteAbelianGroup& group) {
    const auto& f = group.factors();
    switch (kind) {
        case SystemKind::Dft: return make_dft(group);
        case SystemKind::Wht:
            if (!std::all_of(f.begin(), f.end(), [](std::size_t n) { return n == 2; })) {
                throw std::invalid_argument("wht requires a group of the form 2x2x...x2");
            }
            return make_wht(f.size());
        case SystemKind::GaborBlock:
            if (f.size() != 2) throw std::invalid_argument("gabor-block requires a group NxT");
            return make_gabor_block(f[0], f[1]);
        case SystemKind::Haar:
            if (f.size() != 1) throw std::invalid_argument("haar requires a cyclic group");
            return make_haar(f[0]);
    }
    throw std::invalid_argument("unknown system kind");
}

OrthonormalSystem parse_system(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("system spec '" + spec + "' must look like label:params");
    }
    const std::string label = spec.substr(0, colon);
    const std::string params = spec.substr(colon + 1);
    auto positive = [&](const std::string& s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("malformed system spec '" + spec + "'");
        }
        return std::stoull(s);
    };
    if (label == "dft") return make_dft(parse_group(params));
    if (label == "wht") return make_wht(positive(params));
    if (label == "haar") return make_haar(positive(params));
    if (label == "gabor" || label == "gabor-block") {
        static const std::regex pattern(R"(N=(\d+),T=(\d+))");
        std::smatch m;
        if (!std::regex_match(params, m, pattern)) {
            throw std::invalid_argument("gabor spec must be gabor:N=<n>,T=<t>, got '" + spec + "'");
        }
        return make_gabor_block(positive(m[1]), positive(m[2]));
    }
    throw std::invalid_argument("unknown system label '" + label + "'");
}

CoefficientVector analyze(const OrthonormalSystem& system, const Signal& f) { return system.analyze(f); }

Signal synthesize(const OrthonormalSystem& system, const CoefficientVector& c) { return system.synthesize(c); }

BoundednessReport check_boundedness(const OrthonormalSystem& system) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(system.dimension()));
    return {system.tau(), bound, system.tau() <= bound * (1.0 + 1e-12)};
}

}  // namespace frlab
