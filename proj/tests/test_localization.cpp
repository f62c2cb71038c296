#include <catch_amalgamated.hpp>

#include <frlab/fourier_ratio.hpp>
#include <frlab/localization.hpp>
#include <frlab/system.hpp>

#include "oracles.hpp"

using namespace frlab;
using Catch::Matchers::WithinRel;

namespace {

Signal random_signal(const FiniteAbelianGroup& G, std::uint64_t seed) { return Signal(G, oracle::random_vector(G.size(), seed)); }

// Element of G with H-coordinates taken from h and K-coordinates from k.
std::size_t oracle_join(const std::vector<std::size_t>& factors, const std::vector<std::size_t>& h_axes,
                        const std::vector<std::size_t>& k_axes, std::size_t h, std::size_t k) {
    std::vector<std::size_t> hf, kf;
    for (auto a : h_axes) hf.push_back(factors[a]);
    for (auto a : k_axes) kf.push_back(factors[a]);
    const auto hd = oracle::digits(h, hf), kd = oracle::digits(k, kf);
    std::vector<std::size_t> x(factors.size());
    for (std::size_t i = 0; i < h_axes.size(); ++i) x[h_axes[i]] = hd[i];
    for (std::size_t i = 0; i < k_axes.size(); ++i) x[k_axes[i]] = kd[i];
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i] + x[i];
    return idx;
}

double oracle_fr(const oracle::Vec& v, const std::vector<std::size_t>& factors) {
    const auto c = oracle::character_sum_dft(v, factors);
    return oracle::l1(c) / oracle::l2(c);
}

}  // namespace

TEST_CASE("decomposition bookkeeping") {
    FiniteAbelianGroup G({2, 3, 4});
    ProductDecomposition d(G, {0, 2}, {1});
    CHECK(d.H().factors() == std::vector<std::size_t>{2, 4});
    CHECK(d.K().factors() == std::vector<std::size_t>{3});
    CHECK(d.H().size() * d.K().size() == G.size());
    CHECK(d.to_string() == "1,3|2");
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t h = 0; h < 8; ++h) CHECK(d.join(h, k) == oracle_join(G.factors(), {0, 2}, {1}, h, k));

    CHECK(parse_split(G, "1,3|2").to_string() == "1,3|2");
    CHECK(parse_split(FiniteAbelianGroup({8, 4}), "1|2").K().size() == 4);
    CHECK_THROWS_AS(ProductDecomposition(G, {0, 1, 2}, {}), std::invalid_argument);
    CHECK_THROWS_AS(ProductDecomposition(G, {0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(ProductDecomposition(G, {0, 1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS(parse_split(G, "1|4"));
    CHECK_THROWS(parse_split(G, "1,2,3"));
    CHECK_THROWS(parse_split(G, "0|1,2"));
}

TEST_CASE("slice then reassemble is the identity") {
    FiniteAbelianGroup G({4, 3});
    ProductDecomposition d(G, {0}, {1});
    const Signal f = random_signal(G, 1);
    const auto parts = slice(f, d);
    REQUIRE(parts.size() == 3);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t h = 0; h < 4; ++h) CHECK(parts[k][h] == f[h * 3 + k]);
    CHECK(reassemble(parts, d).values() == f.values());
    CHECK_THROWS_AS(slice(random_signal(FiniteAbelianGroup({3, 4}), 1), d), std::invalid_argument);
}

TEST_CASE("a delta row slices to g and zeros") {
    const std::size_t N = 8, T = 5, a0 = 2;
    FiniteAbelianGroup G({N, T});
    ProductDecomposition d(G, {0}, {1});
    const auto g = oracle::random_vector(N, 9);
    Signal f(G);
    for (std::size_t t = 0; t < N; ++t) f[t * T + a0] = g[t];
    const auto parts = slice(f, d);
    for (std::size_t a = 0; a < T; ++a)
        for (std::size_t t = 0; t < N; ++t) CHECK(parts[a][t] == (a == a0 ? g[t] : Complex{}));
}

TEST_CASE("constant signal") {
    FiniteAbelianGroup G({6, 4});
    ProductDecomposition d(G, {0}, {1});
    const Signal f(G, ComplexVector(24, Complex(1.5, -0.5)));
    const auto rep = localization_check(f, d, GlobalTransform::Full);
    CHECK_THAT(rep.global_fr, WithinRel(1.0, 1e-12));
    CHECK_THAT(rep.max_slice_fr, WithinRel(1.0, 1e-12));
    CHECK_THAT(rep.lower_bound, WithinRel(0.5, 1e-12));
    CHECK(rep.holds);
    CHECK(rep.zero_slices == 0);
}

TEST_CASE("row-delta family attains the bound") {
    const std::size_t N = 16, T = 4;
    FiniteAbelianGroup G({N, T});
    ProductDecomposition d(G, {0}, {1});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = oracle::random_vector(N, 40 + seed);
        const double frg = oracle_fr(g, {N});
        Signal f(G);
        const std::size_t a0 = seed % T;
        for (std::size_t t = 0; t < N; ++t) f[t * T + a0] = g[t];
        const auto rep = localization_check(f, d, GlobalTransform::Full);
        CHECK_THAT(rep.global_fr, WithinRel(std::sqrt(double(T)) * frg, 1e-9));
        CHECK_THAT(rep.max_slice_fr, WithinRel(frg, 1e-9));
        CHECK(rep.max_slice_fr <= rep.lower_bound * (1.0 + 1e-9));
        CHECK(rep.holds);
        CHECK(rep.achieving_k == a0);
        CHECK(rep.zero_slices == T - 1);

        const auto row = localization_check(f, d, GlobalTransform::RowWise);
        CHECK_THAT(row.global_fr, WithinRel(frg, 1e-9));
        CHECK(row.holds);
    }
}

TEST_CASE("inequality holds on random signals for the row-wise transform") {
    struct Case {
        std::vector<std::size_t> factors;
        std::string split;
    };
    for (const auto& c : {Case{{8, 8}, "1|2"}, Case{{16, 4}, "1|2"}, Case{{2, 2, 3}, "1|2,3"}, Case{{2, 2, 3}, "1,2|3"}}) {
        FiniteAbelianGroup G(c.factors);
        const auto d = parse_split(G, c.split);
        std::size_t failures = 0;
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const Signal f = random_signal(G, 7000 + seed);
            const auto rep = localization_check(f, d);
            CHECK(rep.transform == GlobalTransform::RowWise);
            failures += !(rep.max_slice_fr >= rep.global_fr / std::sqrt(double(d.K().size())) * (1.0 - 1e-9));
            failures += !rep.holds;
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("row-constant family attains the row-wise bound") {
    const std::size_t N = 8, T = 6;
    FiniteAbelianGroup G({N, T});
    ProductDecomposition d(G, {0}, {1});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = oracle::random_vector(N, 60 + seed);
        Signal f(G);
        for (std::size_t t = 0; t < N; ++t)
            for (std::size_t a = 0; a < T; ++a) f[t * T + a] = g[t];
        const auto rep = localization_check(f, d);
        CHECK_THAT(rep.global_fr, WithinRel(std::sqrt(double(T)) * oracle_fr(g, {N}), 1e-9));
        CHECK_THAT(rep.max_slice_fr, WithinRel(rep.lower_bound, 1e-9));
        CHECK(rep.holds);
    }
}

TEST_CASE("the full two-dimensional transform admits counterexamples") {
    FiniteAbelianGroup G({2, 2});
    ProductDecomposition d(G, {0}, {1});
    // rows a = 0 and a = 1 of f(t, a): (1, 1) and (1, -1)
    const Signal f(G, ComplexVector{1.0, 1.0, 1.0, -1.0});
    const auto full = localization_check(f, d, GlobalTransform::Full);
    CHECK_THAT(full.global_fr, WithinRel(2.0, 1e-14));
    CHECK_THAT(full.max_slice_fr, WithinRel(1.0, 1e-14));
    CHECK_THAT(full.lower_bound, WithinRel(std::sqrt(2.0), 1e-14));
    CHECK_FALSE(full.holds);

    const auto row = localization_check(f, d, GlobalTransform::RowWise);
    CHECK_THAT(row.global_fr, WithinRel(std::sqrt(2.0), 1e-14));
    CHECK_THAT(row.lower_bound, WithinRel(1.0, 1e-14));
    CHECK(row.holds);

    // random signals on Z_16 x Z_4 violate the full reading at a visible rate
    FiniteAbelianGroup G2({16, 4});
    const auto d2 = parse_split(G2, "1|2");
    std::size_t violations = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        violations += !localization_check(random_signal(G2, 7000 + seed), d2, GlobalTransform::Full).holds;
    CHECK(violations > 0);
}

TEST_CASE("report values agree with oracle transforms") {
    FiniteAbelianGroup G({2, 2, 3});
    const auto d = parse_split(G, "1,3|2");
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Signal f = random_signal(G, seed);
        const auto rep = localization_check(f, d, GlobalTransform::Full);
        CHECK_THAT(rep.global_fr, WithinRel(oracle_fr(f.values(), G.factors()), 1e-12));
        double best = 0.0;
        for (std::size_t k = 0; k < d.K().size(); ++k) {
            oracle::Vec s(d.H().size());
            for (std::size_t h = 0; h < s.size(); ++h) s[h] = f[oracle_join(G.factors(), {0, 2}, {1}, h, k)];
            best = std::max(best, oracle_fr(s, d.H().factors()));
        }
        CHECK_THAT(rep.max_slice_fr, WithinRel(best, 1e-12));
        CHECK(rep.transform == GlobalTransform::Full);
    }
}

TEST_CASE("row-wise transform: energy and l1 add up over slices") {
    FiniteAbelianGroup G({8, 6});
    ProductDecomposition d(G, {0}, {1});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Signal f = random_signal(G, 300 + seed);
        const auto P = partial_transform(f, d);
        const auto full = make_dft(G).analyze(f.values());
        const auto rep = localization_check(f, d, GlobalTransform::RowWise);
        CHECK_THAT(oracle::l2(P) * oracle::l2(P), WithinRel(rep.slice_l2_sq_sum, 1e-10));
        CHECK_THAT(oracle::l2(full) * oracle::l2(full), WithinRel(rep.slice_l2_sq_sum, 1e-10));
        CHECK_THAT(oracle::l1(P), WithinRel(rep.slice_l1_sum, 1e-12));
        // entry (m, a) of the partial transform is the 1-D dft of row a at m
        for (std::size_t a = 0; a < 6; ++a) {
            oracle::Vec row(8);
            for (std::size_t t = 0; t < 8; ++t) row[t] = f[t * 6 + a];
            const auto ref = oracle::character_sum_dft(row, {8});
            for (std::size_t m = 0; m < 8; ++m) CHECK(std::abs(P[d.join(m, a)] - ref[m]) < 1e-12);
        }
    }
}

TEST_CASE("zero slices are skipped and zero signals rejected") {
    FiniteAbelianGroup G({4, 4});
    ProductDecomposition d(G, {0}, {1});
    Signal f(G);
    CHECK_THROWS_AS(localization_check(f, d), std::domain_error);
    f[1] = 1.0;
    f[2] = Complex(0.0, 1.0);
    const auto rep = localization_check(f, d);
    CHECK(rep.zero_slices == 2);
    CHECK(rep.holds);
    CHECK(to_string(GlobalTransform::RowWise) == "row-wise");
    CHECK(to_string(GlobalTransform::Full) == "full");
}
