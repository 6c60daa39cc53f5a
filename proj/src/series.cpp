#include "monotone/series.hpp"

#include <array>
#include <vector>

namespace monotone {

namespace {

const std::vector<Real>& factorial_table() {
    static const std::vector<Real> table = [] {
        std::vector<Real> t{1};
        for (unsigned n = 1;; ++n) {
            const Real next = t.back() * Real(n);
            if (!std::isfinite(next)) break;
            t.push_back(next);
        }
        return t;
    }();
    return table;
}

void require_tol(Real tol) {
    detail::require(std::isfinite(tol) && tol > 0, "tol must be positive and finite");
}

Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("derivative coefficient overflow");
    return r;
}

Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("derivative coefficient overflow");
    return r;
}

// Q^{(d)}(u) = sum_{m >= 5-d} (m+d-3)(m+d-4) u^m / m!  for d = 0, 1, 2.
Real q_series(unsigned d, Real u) {
    const unsigned first = 5 - d;
    Real power_over_fact = 1;
    for (unsigned m = 1; m <= first; ++m) power_over_fact *= u / Real(m);
    Real sum = 0;
    for (unsigned m = first; m < first + 40; ++m) {
        const Real j = Real(m + d);
        const Real term = (j - 3) * (j - 4) * power_over_fact;
        sum += term;
        if (term <= kEpsilon * sum / 8) break;
        power_over_fact *= u / Real(m + 1);
    }
    return sum;
}

}  // namespace

Real factorial(unsigned n) {
    const auto& table = factorial_table();
    if (n >= table.size()) throw std::overflow_error("factorial overflows Real");
    return table[n];
}

Real shifted_factorial(Real a, unsigned n) {
    Real product = 1;
    for (unsigned i = 0; i < n; ++i) product *= a + Real(i);
    return product;
}

SeriesValue bessel_i(unsigned n, Real z, Real tol) {
    detail::require_finite(z, "z");
    detail::require(z >= 0, "bessel_i requires z >= 0");
    require_tol(tol);
    const Real half = z / 2;
    Real first = 1;
    for (unsigned j = 1; j <= n; ++j) first *= half / Real(j);
    const Real q = half * half;
    return sum_positive_series(
        first, [&](std::size_t k) { return q / (Real(k + 1) * Real(k + n + 1)); }, tol);
}

SeriesValue bessel_i_scaled(unsigned n, Real u, Real tol) {
    detail::require_finite(u, "u");
    detail::require(u >= 0, "bessel_i_scaled requires u >= 0");
    require_tol(tol);
    return sum_positive_series(
        1 / factorial(n), [&](std::size_t k) { return u / (Real(k + 1) * Real(k + n + 1)); },
        tol);
}

SeriesValue bessel_kernel(Real u, Real tol) { return bessel_i_scaled(1, u, tol); }

SeriesValue hyper_1f2(unsigned k, Real t, Real tol) {
    detail::require_finite(t, "t");
    detail::require(t >= 0, "hyper_1f2 requires t >= 0");
    require_tol(tol);
    // term ratio: (1+n) t / ((k+1+n)(k+2+n)(n+1))
    return sum_positive_series(
        1, [&](std::size_t n) { return t / (Real(k + 1 + n) * Real(k + 2 + n)); }, tol);
}

Real exp_tail_h(unsigned k, Real z) {
    detail::require_finite(z, "z");
    detail::require(z > 0, "exp_tail_h requires z > 0");
    const Real x = 1 / z;
    Real first = 1;
    for (unsigned m = 1; m <= k + 1; ++m) first *= x / Real(m);
    const auto s = sum_positive_series(
        first, [&](std::size_t i) { return x / Real(k + 2 + i); }, kEpsilon);
    return s.value + s.error_bound / 2;
}

QFamily q_family(Real u) {
    detail::require_finite(u, "u");
    detail::require(u >= 0, "q_family requires u >= 0");
    QFamily out;
    const Real eu = std::exp(u);
    const Real u2 = u * u;
    out.q3 = u2 * eu;
    if (u < kQSeriesSwitch) {
        out.q = q_series(0, u);
        out.q1 = q_series(1, u);
        out.q2 = q_series(2, u);
    } else {
        out.q = eu * (12 - 6 * u + u2) - 12 - 6 * u - u2;
        out.q1 = eu * (u2 - 4 * u + 6) - 2 * (u + 3);
        out.q2 = eu * (u2 - 2 * u + 2) - 2;
    }
    return out;
}

const DerivativeCoeffs& exp_inv_derivative_coeffs(unsigned n) {
    static const std::array<DerivativeCoeffs, kMaxDerivativeOrder + 1> table = [] {
        std::array<DerivativeCoeffs, kMaxDerivativeOrder + 1> t;
        t[0].order = 0;
        t[0].coeffs = {{0u, Int128(1)}};
        for (unsigned n = 0; n < kMaxDerivativeOrder; ++n) {
            // d/dt [c t^{-j} e^{1/t}] = e^{1/t} (-j c t^{-j-1} - c t^{-j-2})
            std::map<unsigned, Int128> next;
            for (const auto& [j, c] : t[n].coeffs) {
                next[j + 1] = checked_add(next[j + 1], checked_mul(-Int128(j), c));
                next[j + 2] = checked_add(next[j + 2], -c);
            }
            std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
            t[n + 1].order = n + 1;
            t[n + 1].coeffs = std::move(next);
        }
        return t;
    }();
    detail::require(n <= kMaxDerivativeOrder, "derivative order exceeds kMaxDerivativeOrder");
    return table[n];
}

Real exp_inv_derivative(unsigned n, Real t) {
    detail::require_finite(t, "t");
    detail::require(t > 0, "exp_inv_derivative requires t > 0");
    const auto& d = exp_inv_derivative_coeffs(n);
    const Real inv = 1 / t;
    Real sum = 0;
    for (const auto& [j, c] : d.coeffs) sum += static_cast<Real>(c) * std::pow(inv, Real(j));
    return std::exp(inv) * sum;
}

}  // namespace monotone
