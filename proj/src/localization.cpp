#include "frlab/localization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"
#include "frlab/fourier_ratio.hpp"
#include "frlab/system.hpp"

namespace frlab {
namespace {

FiniteAbelianGroup subgroup(const FiniteAbelianGroup& G, const std::vector<std::size_t>& axes) {
    std::vector<std::size_t> f;
    for (std::size_t a : axes) f.push_back(G.factors().at(a));
    return FiniteAbelianGroup(std::move(f));
}

std::vector<std::size_t> checked_axes(const FiniteAbelianGroup& G, std::vector<std::size_t> h,
                                      const std::vector<std::size_t>& k) {
    if (h.empty() || k.empty()) throw std::invalid_argument("product decomposition needs nonempty H and K");
    std::vector<int> seen(G.rank(), 0);
    for (const auto* axes : std::initializer_list<const std::vector<std::size_t>*>{&h, &k}) {
        for (std::size_t a : *axes) {
            if (a >= G.rank()) throw std::invalid_argument("product decomposition: factor position out of range");
            if (seen[a]++) throw std::invalid_argument("product decomposition: factor listed twice");
        }
    }
    if (std::count(seen.begin(), seen.end(), 0) != 0) {
        throw std::invalid_argument("product decomposition must use every factor of G");
    }
    return h;
}

}  // namespace

ProductDecomposition::ProductDecomposition(FiniteAbelianGroup G, std::vector<std::size_t> h_axes,
                                           std::vector<std::size_t> k_axes)
    : G_(std::move(G)),
      h_axes_(checked_axes(G_, std::move(h_axes), k_axes)),
      k_axes_(std::move(k_axes)),
      H_(subgroup(G_, h_axes_)),
      K_(subgroup(G_, k_axes_)) {
    join_.resize(G_.size());
    std::vector<std::size_t> coords(G_.rank());
    for (std::size_t k = 0; k < K_.size(); ++k) {
        const auto kc = K_.coordinates(k);
        for (std::size_t i = 0; i < k_axes_.size(); ++i) coords[k_axes_[i]] = kc[i];
        for (std::size_t h = 0; h < H_.size(); ++h) {
            const auto hc = H_.coordinates(h);
            for (std::size_t i = 0; i < h_axes_.size(); ++i) coords[h_axes_[i]] = hc[i];
            join_[k * H_.size() + h] = G_.index(coords);
        }
    }
}

std::string ProductDecomposition::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < h_axes_.size(); ++i) out << (i ? "," : "") << h_axes_[i] + 1;
    out << '|';
    for (std::size_t i = 0; i < k_axes_.size(); ++i) out << (i ? "," : "") << k_axes_[i] + 1;
    return out.str();
}

ProductDecomposition parse_split(const FiniteAbelianGroup& G, const std::string& split) {
    const auto bar = split.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("split spec '" + split + "' must look like 1|2");
    auto parse_list = [&](const std::string& part) {
        std::vector<std::size_t> axes;
        std::stringstream in(part);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || std::stoull(item) == 0) {
                throw std::invalid_argument("split spec '" + split + "': factor positions are 1-based integers");
            }
            axes.push_back(std::stoull(item) - 1);
        }
        return axes;
    };
    return ProductDecomposition(G, parse_list(split.substr(0, bar)), parse_list(split.substr(bar + 1)));
}

std::vector<Signal> slice(const Signal& f, const ProductDecomposition& d) {
    if (!(f.group() == d.G())) throw std::invalid_argument("slice: signal does not live on the decomposed group");
    std::vector<Signal> out;
    out.reserve(d.K().size());
    for (std::size_t k = 0; k < d.K().size(); ++k) {
        Signal s(d.H());
        for (std::size_t h = 0; h < d.H().size(); ++h) s[h] = f[d.join(h, k)];
        out.push_back(std::move(s));
    }
    return out;
}

Signal reassemble(const std::vector<Signal>& slices, const ProductDecomposition& d) {
    if (slices.size() != d.K().size()) throw std::invalid_argument("reassemble: expected one slice per element of K");
    Signal f(d.G());
    for (std::size_t k = 0; k < slices.size(); ++k) {
        if (!(slices[k].group() == d.H())) throw std::invalid_argument("reassemble: slice not on H");
        for (std::size_t h = 0; h < d.H().size(); ++h) f[d.join(h, k)] = slices[k][h];
    }
    return f;
}

std::string to_string(GlobalTransform t) { return t == GlobalTransform::Full ? "full" : "row-wise"; }

ComplexVector partial_transform(const Signal& f, const ProductDecomposition& d) {
    if (!(f.group() == d.G())) throw std::invalid_argument("partial_transform: group mismatch");
    ComplexVector c = f.values();
    std::vector<bool> axes(d.G().rank(), false);
    for (std::size_t a : d.h_axes()) axes[a] = true;
    detail::dft_axes(c, d.G().factors(), axes, detail::FftSign::Forward);
    const double s = 1.0 / std::sqrt(static_cast<double>(d.H().size()));
    for (auto& z : c) z *= s;
    return c;
}

LocalizationReport localization_check(const Signal& f, const ProductDecomposition& d, GlobalTransform transform) {
    if (!(f.group() == d.G())) throw std::invalid_argument("localization_check: group mismatch");
    if (!f.nonzero()) throw std::domain_error("localization_check: zero signal");

    LocalizationReport rep;
    rep.transform = transform;
    rep.global_fr = transform == GlobalTransform::Full ? fourier_ratio(make_dft(d.G()).analyze(f).entries)
                                                       : fourier_ratio(partial_transform(f, d));

    const auto dft_h = make_dft(d.H());
    bool found = false;
    for (std::size_t k = 0; k < d.K().size(); ++k) {
        Signal fk(d.H());
        for (std::size_t h = 0; h < d.H().size(); ++h) fk[h] = f[d.join(h, k)];
        const ComplexVector ck = dft_h.analyze(std::span<const Complex>(fk.values()));
        const double l2 = norm_l2(ck);
        rep.slice_l1_sum += norm_l1(ck);
        rep.slice_l2_sq_sum += l2 * l2;
        if (!(l2 > 0.0)) {
            ++rep.zero_slices;
            continue;
        }
        const double fr = norm_l1(ck) / l2;
        if (!found || fr > rep.max_slice_fr) {
            rep.max_slice_fr = fr;
            rep.achieving_k = k;
            found = true;
        }
    }
    rep.lower_bound = rep.global_fr / std::sqrt(static_cast<double>(d.K().size()));
    rep.holds = rep.max_slice_fr >= rep.lower_bound - 1e-9 * rep.global_fr;
    return rep;
}

}  // namespace frlab
