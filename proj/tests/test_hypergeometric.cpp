#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fockng/errors.hpp"
#include "fockng/hypergeometric.hpp"
#include "oracles.hpp"

using namespace fockng;

TEST_CASE("terminating sum, single-term and forced-zero cases") {
    CHECK(hyp2f1_terminating(0, 7.3, 2.1, 0.9) == 1.0);
    // 1 - (1*2/1) * 0.5 cancels exactly
    CHECK(hyp2f1_terminating(1, 2.0, 1.0, 0.5) == 0.0);
}

TEST_CASE("terminating sum matches extended-precision term summation") {
    const long double ref = oracles::hyp2f1_terminating_ext(2, 2.0L, 1.0L, 0.25L);
    CHECK(static_cast<double>(ref) == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(hyp2f1_terminating(2, 2.0, 1.0, 0.25) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = static_cast<int>(unif(rng) * 20);
        const double b = -3.0 + 6.0 * unif(rng);
        const double c = 0.4 + 3.0 * unif(rng);
        const double z = -2.0 * unif(rng);
        const double got = hyp2f1_terminating(m, b, c, z);
        const long double want = oracles::hyp2f1_terminating_ext(m, b, c, z);
        CHECK(got == doctest::Approx(static_cast<double>(want))
                         .epsilon(1e-12)
                         .scale(1.0));
    }
}

TEST_CASE("terminating sum reports a pole in (c)_n") {
    CHECK_THROWS_AS(hyp2f1_terminating(3, 1.5, -1.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(hyp2f1_terminating(2, 2.0, 0.0, 0.5), std::domain_error);
    // b cuts the series off strictly before the pole is reached
    CHECK_NOTHROW(hyp2f1_terminating(8, -2.0, -4.0, 0.7));
}

TEST_CASE("convergent series, closed-form spot values") {
    // geometric series 1/(1-z)
    CHECK(hyp2f1_series(1.0, 1.0, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-13));
    // sum (n+1)^2 z^n = (1+z)/(1-z)^3
    CHECK(hyp2f1_series(2.0, 2.0, 1.0, 0.25) ==
          doctest::Approx(80.0 / 27.0).epsilon(1e-13));
    CHECK(hyp2f1_series(2.0, 2.0, 1.0, 0.0) == 1.0);
}

TEST_CASE("convergent series domain checks") {
    CHECK_THROWS_AS(hyp2f1_series(1.0, 1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hyp2f1_series(1.0, 1.0, 1.0, -1.2), std::domain_error);
    CHECK_THROWS_AS(hyp2f1_series(1.0, 1.0, -2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(hyp2f1_series(1.0, 1.0, 1.0, 0.5, -1e-10), std::domain_error);
    // a terminates at n=2, before the pole of c at n=4
    CHECK_NOTHROW(hyp2f1_series(-1.0, 2.5, -3.0, 0.5));
}

TEST_CASE("series and terminating branch agree for non-positive integer a") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = static_cast<int>(unif(rng) * 13);
        const double b = 0.3 + 2.7 * unif(rng);
        const double c = 0.3 + 2.7 * unif(rng);
        const double z = -0.9 + 1.8 * unif(rng);
        const double series = hyp2f1_series(-static_cast<double>(m), b, c, z);
        const double finite = hyp2f1_terminating(m, b, c, z);
        CHECK(std::abs(series - finite) <=
              1e-13 * std::max({std::abs(series), std::abs(finite), 1e-3}));
    }
}

TEST_CASE("transformation z -> z/(z-1) leaves the series invariant") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = -2.5 + 5.5 * unif(rng);
        const double b = 0.2 + 2.3 * unif(rng);
        const double c = b + 0.3 + 2.0 * unif(rng);
        const double z = -0.85 + 1.3 * unif(rng);
        const double lhs = hyp2f1_series(a, b, c, z);
        const double rhs = std::pow(1.0 - z, -b) *
                           hyp2f1_series(c - a, b, c, z / (z - 1.0));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("dispatcher picks the right branch") {
    CHECK(hyp2f1({-2.0, 2.0, 1.0, 0.25}) ==
          hyp2f1_terminating(2, 2.0, 1.0, 0.25));
    CHECK(hyp2f1({2.0, 2.0, 1.0, 0.25}) == hyp2f1_series(2.0, 2.0, 1.0, 0.25));
}

TEST_CASE("Legendre polynomial spot values") {
    CHECK(legendre_p(0, 42.0) == 1.0);
    for (double z : {-3.0, -0.7, 0.0, 0.4, 5.0}) {
        CHECK(legendre_p(1, z) == doctest::Approx(z).epsilon(1e-15));
    }
    // (3 z^2 - 1)/2 at z = 3
    CHECK(legendre_p(2, 3.0) == doctest::Approx(13.0).epsilon(1e-14));
    CHECK(oracles::bonnet_legendre(2, 3.0) == doctest::Approx(13.0));
}

TEST_CASE("Legendre polynomial matches the three-term recurrence") {
    for (int l = 0; l <= 30; ++l) {
        for (double z : {-10.0, -5.0, -2.0, -1.0, -0.45, 0.0, 0.3, 0.77, 1.0,
                         2.0, 7.0, 10.0}) {
            const double got = legendre_p(l, z);
            const double want = oracles::bonnet_legendre(l, z);
            CHECK(std::abs(got - want) <=
                  1e-12 * std::max({std::abs(got), std::abs(want), 1.0}));
        }
    }
}

TEST_CASE("binomial-type summation identity over the terminating family") {
    // sum_n C(xi, n) t^n 2F1(-n, b; c; z) = (1+t)^xi 2F1(-xi, b; c; tz/(1+t))
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int xi = static_cast<int>(unif(rng) * 9);
        const double b = -static_cast<double>(static_cast<int>(unif(rng) * 9));
        const double c = 0.5 + 3.0 * unif(rng);
        const double z = 0.05 + 1.95 * unif(rng);
        const double t = 0.05 + 0.85 * unif(rng);

        double lhs = 0.0;
        double binom = 1.0;
        double t_pow = 1.0;
        for (int n = 0; n <= xi; ++n) {
            lhs += binom * t_pow * hyp2f1_terminating(n, b, c, z);
            binom *= static_cast<double>(xi - n) / (n + 1.0);
            t_pow *= t;
        }
        const double rhs = std::pow(1.0 + t, xi) *
                           hyp2f1_terminating(xi, b, c, t * z / (1.0 + t));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("iteration cap surfaces as an accuracy error with the partial sum") {
    // z close to 1 with slowly growing terms cannot reach 1e-16 within a
    // tiny cap; the partial sum must still be finite and positive.
    try {
        // terms decay like 0.999999^n, far too slowly for 1e-30
        hyp2f1_series(1.0, 1.0, 1.0, 0.999999, 1e-30);
        FAIL("expected accuracy_error");
    } catch (const accuracy_error& e) {
        CHECK(std::isfinite(e.partial_sum));
        CHECK(e.partial_sum > 0.0);
    }
}
