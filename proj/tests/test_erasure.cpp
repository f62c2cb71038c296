#include <catch_amalgamated.hpp>

#include <boost/math/distributions/binomial.hpp>

#include <frlab/erasure.hpp>

using namespace frlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("binomial cdf agrees with boost") {
    for (std::size_t n : {1u, 10u, 50u, 100u, 400u, 2000u})
        for (double p : {0.001, 0.05, 0.2, 0.5, 0.9})
            for (std::size_t k = 0; k <= n; k += 1 + n / 23) {
                const double ref = boost::math::cdf(boost::math::binomial(static_cast<double>(n), p), static_cast<double>(k));
                INFO("n=" << n << " p=" << p << " k=" << k);
                CHECK_THAT(binomial_cdf(k, n, p), WithinAbs(ref, 1e-12));
            }
    CHECK(binomial_cdf(3, 10, 0.0) == 1.0);
    CHECK(binomial_cdf(3, 10, 1.0) == 0.0);
    CHECK(binomial_cdf(10, 10, 0.7) == 1.0);
}

TEST_CASE("row threshold is the largest m below N / (2 E_max)") {
    for (std::size_t N : {1u, 2u, 7u, 50u, 100u, 101u})
        for (std::size_t E : {1u, 2u, 3u}) {
            const std::size_t t = erasure_row_threshold(N, E);
            CHECK(2.0 * E * t < static_cast<double>(N));
            CHECK(2.0 * E * (t + 1) >= static_cast<double>(N));
        }
    CHECK(erasure_row_threshold(100, 2) == 24);
}

TEST_CASE("exact probability for N=100 T=10 theta=0.05 E_max=2") {
    const auto st = erasure_row_statistics(100, 10, 0.05, 2, 10000, 2024);
    const double ref = std::pow(boost::math::cdf(boost::math::binomial(100.0, 0.05), 24.0), 10.0);
    CHECK_THAT(st.exact_prob, WithinRel(ref, 1e-12));
    CHECK(st.threshold == 24);
    CHECK(st.trials == 10000);
    CHECK_THAT(st.empirical_prob, WithinAbs(st.exact_prob, 0.02));
}

TEST_CASE("Monte-Carlo agrees with the exact value away from 1") {
    // a regime where the probability is not saturated
    const auto st = erasure_row_statistics(40, 8, 0.15, 2, 10000, 7);
    CHECK(st.exact_prob > 0.1);
    CHECK(st.exact_prob < 0.9);
    CHECK_THAT(st.empirical_prob, WithinAbs(st.exact_prob, 0.02));
}

TEST_CASE("exact probability grows toward 1 with N") {
    for (double theta : {0.1, 0.2}) {
        double prev = 0.0;
        for (std::size_t N : {50u, 100u, 200u, 400u}) {
            const double p = erasure_row_statistics(N, 10, theta, 2, 1, 0).exact_prob;
            CHECK(p >= prev);
            prev = p;
        }
        CHECK(prev > 0.9);
    }
}

TEST_CASE("small theta makes every trial succeed") {
    const auto st = erasure_row_statistics(64, 16, 1e-9, 1, 200, 3);
    CHECK(st.exact_prob > 1.0 - 1e-5);
    CHECK(st.empirical_prob == 1.0);
}

TEST_CASE("erasure statistics are seeded") {
    const auto a = erasure_row_statistics(30, 5, 0.2, 2, 500, 11);
    const auto b = erasure_row_statistics(30, 5, 0.2, 2, 500, 11);
    CHECK(a.empirical_prob == b.empirical_prob);
}

TEST_CASE("theta outside the hypothesis is rejected") {
    CHECK_THROWS_AS(erasure_row_statistics(100, 10, 0.25, 2, 10, 0), std::domain_error);
    CHECK_THROWS_AS(erasure_row_statistics(100, 10, 0.0, 2, 10, 0), std::domain_error);
    CHECK_THROWS_AS(erasure_row_statistics(100, 10, 0.1, 0, 10, 0), std::domain_error);
    try {
        erasure_row_statistics(100, 10, 0.6, 1, 10, 0);
        FAIL("expected an exception");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("0<\\theta<\\frac{1}{2E_{\\max}}") != std::string::npos);
    }
}
