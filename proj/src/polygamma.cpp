#include "monotone/polygamma.hpp"

#include <cmath>

namespace monotone {

namespace {

// Euler-Maclaurin tail of |psi^{(m)}(x)|:
//   (m-1)!/x^m + m!/(2 x^{m+1}) + sum_i B_{2i} (2i+m-1)! / ((2i)! x^{2i+m})
Real asymptotic_magnitude(unsigned m, Real x) {
    const Real inv = 1 / x;
    const Real inv_m = std::pow(inv, Real(m));
    const Real inv2 = inv * inv;
    Real sum = 0;
    for (unsigned i = kBernoulliEven.size(); i >= 1; --i) {
        const Real coeff = bernoulli_even(i).to_real() * factorial(2 * i + m - 1) / factorial(2 * i);
        sum += coeff * inv_m * std::pow(inv2, Real(i));
    }
    sum += factorial(m) / 2 * inv_m * inv;
    sum += factorial(m - 1) * inv_m;
    return sum;
}

}  // namespace

Real polygamma_asymptotic_remainder(PolygammaOrder order, Real x) {
    const unsigned m = order.value();
    return std::abs(kBernoulli22.to_real()) * factorial(21 + m) / factorial(22) *
           std::pow(x, -Real(22 + m));
}

Real polygamma(PolygammaOrder order, Real t) {
    detail::require_finite(t, "t");
    detail::require(t > 0, "polygamma requires t > 0");
    const unsigned m = order.value();
    const Real threshold = kAsymptoticBase + Real(m);
    const unsigned shifts = t < threshold ? static_cast<unsigned>(std::ceil(threshold - t)) : 0;

    // psi^{(m)}(t) = psi^{(m)}(t+N) + (-1)^{m+1} m! sum_{j<N} (t+j)^{-(m+1)}
    Real shifted = 0;
    for (unsigned j = shifts; j-- > 0;) shifted += std::pow(t + Real(j), -Real(m + 1));
    const Real magnitude = asymptotic_magnitude(m, t + Real(shifts)) + factorial(m) * shifted;
    if (!std::isfinite(magnitude)) throw std::overflow_error("polygamma overflows Real");
    return m % 2 == 1 ? magnitude : -magnitude;
}

Real trigamma(Real t) { return polygamma(PolygammaOrder(1), t); }

Real bernoulli_series_coeff(unsigned k) {
    if (k == 0) return 1;
    if (k == 1) return Real(0.5);
    detail::require(k <= 2 * kBernoulliEven.size() + 1, "Bernoulli series index out of range");
    if (k % 2 == 1) return 0;
    return bernoulli_even(k / 2).to_real() / factorial(k);
}

Real u_over_one_minus_exp(Real u) {
    detail::require_finite(u, "u");
    detail::require(u >= 0, "u_over_one_minus_exp requires u >= 0");
    if (u < kBernoulliSeriesSwitch) {
        const Real u2 = u * u;
        Real sum = 0;
        for (unsigned i = kBernoulliEven.size(); i >= 1; --i) {
            sum = sum * u2 + bernoulli_series_coeff(2 * i);
        }
        return 1 + u / 2 + sum * u2;
    }
    return u / -std::expm1(-u);
}

QuadratureValue polygamma_integral(PolygammaOrder order, Real t, Real tol) {
    detail::require_finite(t, "t");
    detail::require(t > 0, "polygamma_integral requires t > 0");
    const unsigned m = order.value();
    IntegrandSpec spec{
        [m](Real u) { return std::pow(u, Real(m - 1)) * u_over_one_minus_exp(u); },
        GrowthEnvelope{1, 0, Real(m)},
    };
    QuadratureValue q = laplace_integral(spec, t, tol);
    if (m % 2 == 0) q.value = -q.value;
    return q;
}

}  // namespace monotone
