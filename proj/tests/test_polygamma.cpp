#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "monotone/polygamma.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace monotone;

namespace {

constexpr Real kPiSq6 = 1.644934066848226436472415L;
constexpr Real kZeta3 = 1.202056903159594285399738L;
constexpr Real kPsi1At10 = 0.105166335681685746122201L;
constexpr Real kPsi1At1e4 = 0.0001000050001666666663333333L;

}  // namespace

TEST_CASE("reference constants from direct summation") {
    // Direct sums with integral tail bounds; independent of the library.
    CHECK_REL(oracle::zeta_direct(2, 10'000'000), kPiSq6, 1e-15L);
    CHECK_REL(oracle::zeta_direct(3, 1'000'000), kZeta3, 1e-15L);
    CHECK_REL(oracle::zeta_direct(4, 100'000), std::pow(oracle::pi, 4.0L) / 90, 1e-15L);
}

TEST_CASE("Bernoulli table anchors") {
    CHECK(bernoulli_even(1).num == 1);
    CHECK(bernoulli_even(1).den == 6);
    CHECK(bernoulli_even(2).to_real() == -1.0L / 30);
    CHECK(bernoulli_even(3).to_real() == 1.0L / 42);
    CHECK(kBernoulliEven.size() == 10);
    CHECK(bernoulli_series_coeff(0) == 1);
    CHECK(bernoulli_series_coeff(1) == 0.5L);
    CHECK_REL(bernoulli_series_coeff(2), 1.0L / 12, 1e-18L);
    CHECK_REL(bernoulli_series_coeff(4), -1.0L / 720, 1e-18L);
    CHECK(bernoulli_series_coeff(5) == 0);
}

TEST_CASE("u_over_one_minus_exp") {
    CHECK(u_over_one_minus_exp(0) == 1);
    for (Real u : {1e-8L, 1e-3L, 0.1L, 0.3L, 0.4999L, 0.5L, 2.0L, 40.0L}) {
        CHECK_REL(u_over_one_minus_exp(u), u / -std::expm1(-u), 1e-17L);
    }
    CHECK_REL(u_over_one_minus_exp(1), 1 / (1 - std::exp(-1.0L)), 1e-18L);
    CHECK_THROWS_AS(u_over_one_minus_exp(-1), DomainError);
}

TEST_CASE("trigamma") {
    CHECK_REL(trigamma(1), kPiSq6, 1e-18L);
    CHECK_REL(trigamma(2), kPiSq6 - 1, 1e-17L);
    CHECK_REL(trigamma(10), kPsi1At10, 1e-17L);
    CHECK_REL(trigamma(1e4L), kPsi1At1e4, 1e-17L);
    // t psi'(t) -> 1
    CHECK_REL(trigamma(1e4L) * 1e4L, 1 + 0.5e-4L, 1e-7L);
    CHECK(trigamma(0.01L) > 1e4L);
    CHECK_REL(trigamma(0.01L), 1e4L + trigamma(1.01L), 1e-17L);

    SUBCASE("telescoping") {
        for (Real t : {0.5L, 1.0L, 3.0L}) {
            CHECK_REL(trigamma(t) - trigamma(t + 1), 1 / (t * t), 1e-12L);
        }
    }
    SUBCASE("strictly decreasing") {
        Real prev = trigamma(0.001L);
        for (int i = 1; i <= 300; ++i) {
            const Real t = 0.001L * std::pow(1e7L, Real(i) / 300);
            const Real v = trigamma(t);
            CHECK(v < prev);
            prev = v;
        }
    }
    CHECK_THROWS_AS(trigamma(0), DomainError);
    CHECK_THROWS_AS(trigamma(-1), DomainError);
    CHECK_THROWS_AS(trigamma(NAN), DomainError);
}

TEST_CASE("polygamma") {
    CHECK_REL(polygamma(PolygammaOrder(2), 1), -2 * kZeta3, 1e-18L);
    CHECK_REL(polygamma(PolygammaOrder(3), 1), std::pow(oracle::pi, 4.0L) / 15, 1e-18L);
    CHECK_THROWS_AS(PolygammaOrder(0), DomainError);
    CHECK_THROWS_AS(PolygammaOrder(26), DomainError);

    SUBCASE("sign alternation") {
        for (unsigned m = 1; m <= PolygammaOrder::kMax; ++m) {
            for (Real t : {0.05L, 0.7L, 3.0L, 19.5L, 45.0L, 1000.0L}) {
                const Real v = polygamma(PolygammaOrder(m), t);
                CHECK((m % 2 == 1 ? v : -v) > 0);
            }
        }
    }
    SUBCASE("recurrence exactness") {
        for (unsigned m = 1; m <= PolygammaOrder::kMax; ++m) {
            for (Real t : {0.3L, 1.0L, 7.5L, 30.0L}) {
                const PolygammaOrder o(m);
                const Real single = (m % 2 == 1 ? 1 : -1) * factorial(m) * std::pow(t, -Real(m + 1));
                CHECK_REL(polygamma(o, t) - polygamma(o, t + 1), single, 1e-12L);
            }
        }
    }
    SUBCASE("agrees with direct Hurwitz sums") {
        // psi^{(m)}(t) = (-1)^{m+1} m! sum_n (t+n)^{-(m+1)}; for m >= 3 a modest
        // N plus integral tail suffices.
        for (unsigned m : {3u, 5u, 11u}) {
            for (Real t : {0.5L, 2.0L, 25.0L}) {
                Real sum = 0;
                const unsigned N = 200000;
                for (unsigned n = N; n-- > 0;) sum += std::pow(t + n, -Real(m + 1));
                sum += std::pow(t + N - 0.5L, -Real(m)) / m;
                const Real expected = (m % 2 == 1 ? 1 : -1) * oracle::fact(m) * sum;
                CHECK_REL(polygamma(PolygammaOrder(m), t), expected, 1e-14L);
            }
        }
    }
    SUBCASE("asymptotic remainder is negligible at the shift threshold") {
        for (unsigned m = 1; m <= PolygammaOrder::kMax; ++m) {
            const Real x = kAsymptoticBase + m;
            const Real lead = factorial(m - 1) * std::pow(x, -Real(m));
            CHECK(polygamma_asymptotic_remainder(PolygammaOrder(m), x) < 1e-19L * lead);
        }
    }
}

TEST_CASE("polygamma_integral") {
    SUBCASE("m = 1 at t = 1") {
        const auto q = polygamma_integral(PolygammaOrder(1), 1, 1e-12L);
        CHECK_ABS(q.value, kPiSq6, 1e-11L);
        CHECK(q.error_estimate >= 0);
        CHECK(q.evaluations >= 1);
    }
    CHECK(polygamma_integral(PolygammaOrder(2), 1, 1e-10L).value < 0);
    CHECK_REL(polygamma_integral(PolygammaOrder(1), 10, 1e-12L).value, trigamma(10), 1e-8L);

    SUBCASE("two-path agreement") {
        for (unsigned m = 1; m <= 4; ++m) {
            for (Real t : {0.1L, 0.5L, 1.0L, 2.0L, 10.0L, 50.0L}) {
                const Real series = polygamma(PolygammaOrder(m), t);
                const Real integral = polygamma_integral(PolygammaOrder(m), t, 1e-11L).value;
                CHECK(std::abs(series - integral) <= std::max(1e-8L, 1e-8L * std::abs(series)));
            }
        }
    }
    CHECK_THROWS_AS(polygamma_integral(PolygammaOrder(1), 0, 1e-8L), DomainError);
}
