// Laplace-type integrals int_0^inf g(u) e^{-tu} du with a certified tail cut.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "monotone/core.hpp"

namespace monotone {

struct QuadratureValue {
    Real value = 0;
    Real error_estimate = 0;
    std::size_t evaluations = 0;
};

/// Certifies |g(u)| <= scale * exp(alpha * sqrt(u)) * (1 + u)^power for u >= 0.
struct GrowthEnvelope {
    Real scale = 1;
    Real alpha = 0;
    Real power = 0;

    Real operator()(Real u) const {
        return scale * std::exp(alpha * std::sqrt(u)) * std::pow(1 + u, power);
    }
};

struct IntegrandSpec {
    std::function<Real(Real)> evaluator;
    GrowthEnvelope envelope;
};

class QuadratureError : public std::runtime_error {
public:
    enum class Kind { tail_unbounded, max_subdivision, envelope_violation };

    QuadratureError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

namespace quadrature {

inline constexpr std::size_t kMaxPanels = 10'000;

/// Largest truncation point tried before giving up with tail_unbounded.
inline constexpr Real kMaxCutoff = 1e15L;

/// Upper bound on int_U^inf |g(u)| e^{-tu} du implied by the envelope, or +inf
/// when the bound is not valid at U.
Real tail_bound(const GrowthEnvelope& env, Real t, Real cutoff);

/// Smallest cutoff (to within a few percent) with tail_bound < target.
Real choose_cutoff(const GrowthEnvelope& env, Real t, Real target);

/// Adaptive Gauss-Kronrod (7/15) integral of f over the panels delimited by
/// `edges` (strictly increasing). Bisects the panel with the largest
/// |K15 - G7| until the summed difference is <= tol * max(1, |value|).
QuadratureValue integrate_panels(const std::function<Real(Real)>& f, std::span<const Real> edges,
                                 Real tol, std::size_t max_panels = kMaxPanels);

inline QuadratureValue integrate_finite(const std::function<Real(Real)>& f, Real a, Real b,
                                        Real tol, std::size_t max_panels = kMaxPanels) {
    const Real edges[] = {a, b};
    return integrate_panels(f, edges, tol, max_panels);
}

}  // namespace quadrature

/// Approximates int_0^inf g(u) e^{-tu} du with error_estimate <= tol * max(1, |value|).
QuadratureValue laplace_integral(const IntegrandSpec& g, Real t, Real tol);

}  // namespace monotone
