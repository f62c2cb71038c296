#include "frlab/signal_source.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "frlab/fourier_ratio.hpp"
#include "frlab/rng.hpp"

namespace frlab {
namespace {

std::size_t parse_count(const std::string& spec, const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("signal spec '" + spec + "' needs a nonnegative integer parameter");
    }
    return std::stoull(text);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, std::size_t line_no) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("signal file line " + std::to_string(line_no) + ": bad number '" + text + "'");
    }
    return v;
}

}  // namespace

Signal generate_signal(const std::string& spec, const OrthonormalSystem& system, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const std::size_t M = system.dimension();
    Rng rng(seed);

    if (kind == "sparse") {
        const std::size_t s = parse_count(spec, arg);
        if (s == 0 || s > M) throw std::invalid_argument("sparse:S needs 1 <= S <= M");
        std::vector<std::size_t> idx(M);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        ComplexVector c(M);
        for (std::size_t i = 0; i < s; ++i) {
            std::swap(idx[i], idx[i + rng.below(M - i)]);
            c[idx[i]] = std::polar(1.0, rng.phase());
        }
        return Signal(system.group(), system.synthesize(c));
    }
    if (kind == "harmonic") {
        if (M < 3) throw std::invalid_argument("harmonic signal needs M >= 3");
        return Signal(system.group(), system.synthesize(harmonic_model(M).entries));
    }
    if (kind == "rademacher") {
        ComplexVector v(M);
        for (auto& z : v) z = rng.bernoulli(0.5) ? 1.0 : -1.0;
        return Signal(system.group(), std::move(v));
    }
    if (kind == "row-delta") {
        const auto& G = system.group();
        if (G.rank() < 2) throw std::invalid_argument("row-delta needs a group with at least two factors");
        const std::size_t rows = G.factors().back();
        const std::size_t a0 = parse_count(spec, arg);
        if (a0 >= rows) throw std::invalid_argument("row-delta:A needs A < last factor");
        Signal f(G);
        for (std::size_t x = a0; x < M; x += rows) f[x] = Complex(rng.normal(), rng.normal());
        return f;
    }
    if (kind == "file") {
        Signal f = load_signal(arg);
        if (!(f.group() == system.group())) {
            throw std::invalid_argument("signal file group " + f.group().to_string() + " does not match system group " +
                                        system.group().to_string());
        }
        return f;
    }
    throw std::invalid_argument("unknown signal spec '" + spec + "'");
}

void write_signal(std::ostream& out, const Signal& f) {
    out << "group " << f.group().to_string() << '\n';
    for (std::size_t i = 0; i < f.size(); ++i) {
        out << i << ' ' << format_double(f[i].real()) << ' ' << format_double(f[i].imag()) << '\n';
    }
}

Signal read_signal(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("signal file is empty");
    std::istringstream header(line);
    std::string tag, group_text;
    if (!(header >> tag >> group_text) || tag != "group") {
        throw std::invalid_argument("signal file must start with 'group <factors>'");
    }
    Signal f(parse_group(group_text));
    std::vector<bool> seen(f.size(), false);
    std::size_t line_no = 1;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string idx_text, re_text, im_text, extra;
        if (!(row >> idx_text >> re_text >> im_text) || (row >> extra)) {
            throw std::invalid_argument("signal file line " + std::to_string(line_no) + ": expected 'index real imag'");
        }
        const std::size_t idx = parse_count("file", idx_text);
        if (idx >= f.size() || seen[idx]) {
            throw std::invalid_argument("signal file line " + std::to_string(line_no) + ": bad or repeated index");
        }
        seen[idx] = true;
        f[idx] = Complex(parse_double(re_text, line_no), parse_double(im_text, line_no));
        ++count;
    }
    if (count != f.size()) throw std::invalid_argument("signal file does not list every group element");
    return f;
}

void save_signal(const std::string& path, const Signal& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_signal(out, f);
}

Signal load_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open signal file " + path);
    return read_signal(in);
}

}  // namespace frlab
