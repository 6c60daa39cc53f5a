// Trigamma and higher polygamma functions on the positive real axis.
#pragma once

#include <array>
#include <cstdint>

#include "monotone/core.hpp"
#include "monotone/quadrature.hpp"
#include "monotone/series.hpp"

namespace monotone {

/// Order m >= 1 of psi^{(m)}. Digamma is not provided.
class PolygammaOrder {
public:
    static constexpr unsigned kMax = kMaxDerivativeOrder + 1;

    explicit PolygammaOrder(unsigned m) : m_(m) {
        detail::require(m >= 1 && m <= kMax, "polygamma order must lie in [1, 25]");
    }
    unsigned value() const noexcept { return m_; }

private:
    unsigned m_;
};

struct Rational {
    std::int64_t num;
    std::int64_t den;
    constexpr Real to_real() const { return Real(num) / Real(den); }
};

/// Even-index Bernoulli numbers B_2, B_4, ..., B_20.
inline constexpr std::array<Rational, 10> kBernoulliEven{{
    {1, 6},
    {-1, 30},
    {1, 42},
    {-1, 30},
    {5, 66},
    {-691, 2730},
    {7, 6},
    {-3617, 510},
    {43867, 798},
    {-174611, 330},
}};

/// B_{2i}, i in [1, 10].
constexpr Rational bernoulli_even(unsigned i) { return kBernoulliEven.at(i - 1); }

/// B_22, the first Bernoulli number past the table; used only in error bounds.
inline constexpr Rational kBernoulli22{854513, 138};

/// Recurrence shift target: psi^{(m)} is shifted until its argument reaches
/// kAsymptoticBase + m, then the Euler-Maclaurin tail is applied.
inline constexpr Real kAsymptoticBase = 20;

/// Below this argument u / (1 - e^{-u}) is summed from its Bernoulli series.
inline constexpr Real kBernoulliSeriesSwitch = 0.5L;

/// psi^{(m)}(t) for t > 0.
Real polygamma(PolygammaOrder m, Real t);

/// psi'(t).
Real trigamma(Real t);

/// Magnitude of the first term dropped from the asymptotic expansion of
/// psi^{(m)} at argument x.
Real polygamma_asymptotic_remainder(PolygammaOrder m, Real x);

/// psi^{(m)}(t) = (-1)^{m+1} int_0^inf u^m e^{-tu} / (1 - e^{-u}) du, by quadrature.
QuadratureValue polygamma_integral(PolygammaOrder m, Real t, Real tol);

/// u / (1 - e^{-u}) for u >= 0, with value 1 at u = 0.
Real u_over_one_minus_exp(Real u);

/// Coefficient b_k of u^k in the expansion of u / (1 - e^{-u}), for k <= 21.
Real bernoulli_series_coeff(unsigned k);

}  // namespace monotone
