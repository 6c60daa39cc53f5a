// Scalar type, series result carrier and domain errors shared by every module.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace monotone {

/// Working real type. On x86-64 this is the 80-bit extended format with a
/// 64-bit mantissa.
using Real = long double;

static_assert(std::numeric_limits<Real>::digits >= 60,
              "monotone requires a floating type with at least 60 mantissa bits");

inline constexpr Real kEpsilon = std::numeric_limits<Real>::epsilon();

/// Raised when an argument violates a documented precondition.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result of a truncated series: the partial sum, an absolute bound on the
/// discarded tail and the number of terms summed.
struct SeriesValue {
    Real value = 0;
    Real error_bound = 0;
    std::size_t terms_used = 1;
};

/// n! as a Real. Tabulated up to the overflow limit of Real; larger n throws.
Real factorial(unsigned n);

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw DomainError(message);
}

inline void require_finite(Real x, const char* name) {
    require(std::isfinite(x), std::string(name) + " must be finite");
}

}  // namespace detail
}  // namespace monotone
