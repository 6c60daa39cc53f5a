// Power-series evaluators: modified Bessel I_n, 1F2, the exponential tails
// H_k, the Q polynomial-exponential family and exact derivatives of e^{1/t}.
#pragma once

#include <map>

#include "monotone/core.hpp"

namespace monotone {

using Int128 = __int128;

/// Largest derivative order of e^{1/t} with exact 128-bit coefficients.
inline constexpr unsigned kMaxDerivativeOrder = 24;

/// Below this argument Q, Q' and Q'' are summed from their power series.
inline constexpr Real kQSeriesSwitch = 0.25L;

/// d^n/dt^n e^{1/t} = e^{1/t} * sum_j coeffs[j] * t^{-j}
struct DerivativeCoeffs {
    unsigned order = 0;
    std::map<unsigned, Int128> coeffs;
};

struct QFamily {
    Real q = 0;
    Real q1 = 0;
    Real q2 = 0;
    Real q3 = 0;
};

/// Pochhammer symbol (a)_n = a(a+1)...(a+n-1), with (a)_0 = 1.
Real shifted_factorial(Real a, unsigned n);

/// I_n(z) from its ascending series.
SeriesValue bessel_i(unsigned n, Real z, Real tol);

/// I_n(2 sqrt(u)) / u^{n/2} = sum_k u^k / (k! (k+n)!), summed directly in u so
/// that u = 0 is regular.
SeriesValue bessel_i_scaled(unsigned n, Real u, Real tol);

/// I_1(2 sqrt(u)) / sqrt(u) = sum_k u^k / (k! (k+1)!).
SeriesValue bessel_kernel(Real u, Real tol);

/// 1F2(1; k+1, k+2; t).
SeriesValue hyper_1f2(unsigned k, Real t, Real tol);

/// H_k(z) = e^{1/z} - sum_{m<=k} z^{-m}/m!, summed as the positive tail
/// sum_{m>k} z^{-m}/m!.
Real exp_tail_h(unsigned k, Real z);

/// Q(u) = e^u (12 - 6u + u^2) - 12 - 6u - u^2 and its first three derivatives.
QFamily q_family(Real u);

/// Exact coefficients of the n-th derivative of e^{1/t}; n <= kMaxDerivativeOrder.
const DerivativeCoeffs& exp_inv_derivative_coeffs(unsigned n);

/// d^n/dt^n e^{1/t} at t > 0.
Real exp_inv_derivative(unsigned n, Real t);

/// Sums a series whose terms are positive with a non-increasing term ratio.
///
/// `ratio(k)` must return term_{k+1} / term_k. Summation stops at the first
/// term below tol * partial_sum / 4 whose successor ratio is at most 1/2; that
/// term is not added and twice its size is reported as the error bound.
template <class RatioFn>
SeriesValue sum_positive_series(Real first_term, RatioFn&& ratio, Real tol,
                                std::size_t max_terms = 1'000'000) {
    detail::require(tol > 0, "tol must be positive");
    SeriesValue out;
    Real sum = 0;
    Real term = first_term;
    std::size_t k = 0;
    for (;; ++k) {
        if (term == 0) {
            out.error_bound = 0;
            break;
        }
        const Real r = ratio(k);
        if (sum > 0 && term < tol * sum / 4 && r <= Real(0.5)) {
            out.error_bound = 2 * term;
            break;
        }
        if (k >= max_terms) throw std::runtime_error("series did not converge");
        sum += term;
        term *= r;
        if (!std::isfinite(sum)) throw std::overflow_error("series sum overflows Real");
    }
    out.value = sum;
    out.terms_used = k > 0 ? k : 1;
    return out;
}

}  // namespace monotone
