// Sampled verification of the inequalities, integral representations,
// complete monotonicity and the limit at infinity of
//   h(t) = e^{1/t} - psi'(t).
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monotone/core.hpp"

namespace monotone::verify {

enum class Spacing { log, linear };

struct GridSpec {
    Real lo = 0;
    Real hi = 0;
    std::size_t count = 0;
    Spacing spacing = Spacing::log;
};

/// Strictly increasing sample points with first point lo and last point hi.
struct Grid {
    std::vector<Real> points;
    GridSpec spec;
};

Grid make_grid(const GridSpec& spec);

/// Grid from explicit points; the recorded GridSpec uses the first and last point.
Grid make_grid(std::vector<Real> points);

enum class Suite {
    ineq1,            // e^{1/t} - 1 > psi'(t)
    thm13,            // I_1(t) > (t/2)^3 / (1 - e^{-(t/2)^2})
    polybound,        // 1 + u/2 + u^2/12 >= u / (1 - e^{-u})
    kernel_pos,       // I_1(2 sqrt(u)) / sqrt(u) > u / (1 - e^{-u})
    cm_direct,        // (-1)^k h^{(k)}(t) > 0 from exact derivatives
    cm_laplace,       // same quantity from the Laplace representation
    representations,  // integral representations of H_k(z) and e^{1/z}
    limit,            // h(t) - 1 ~ 1/(24 t^4)
};

inline constexpr Suite kAllSuites[] = {Suite::ineq1,      Suite::thm13,           Suite::polybound,
                                       Suite::kernel_pos, Suite::cm_direct,       Suite::cm_laplace,
                                       Suite::representations, Suite::limit};

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

struct CheckEntry {
    Real point = 0;
    std::optional<unsigned> k;
    Real lhs = 0;
    Real rhs = 0;
    Real margin = 0;
    std::string label;  // which identity or bound the entry checks
    std::string error;  // set when the evaluation at this point threw
};

struct CheckReport {
    std::string suite_id;
    GridSpec grid;
    std::optional<unsigned> k_max;
    std::vector<CheckEntry> entries;
    Real min_margin = 0;
    bool pass = false;
    Real tol = 0;
    double elapsed_seconds = 0;
};

/// Default grids and tolerances for each suite.
GridSpec default_grid(Suite s);
unsigned default_k_max(Suite s);
Real default_tol(Suite s);

/// h(t) = e^{1/t} - psi'(t).
Real h_value(Real t);

/// h(t) - 1, free of cancellation for large t.
Real h_minus_one(Real t);

/// Below this argument kernel_w uses the merged power series.
inline constexpr Real kKernelSeriesSwitch = 0.5L;

/// w(u) = I_1(2 sqrt(u)) / sqrt(u) - u / (1 - e^{-u}).
Real kernel_w(Real u);

/// (1 + u/2 + u^2/12) - u / (1 - e^{-u}), cancellation-free near 0.
Real polybound_margin(Real u);

/// (-1)^k h^{(k)}(t) from the exact derivative of e^{1/t} and psi^{(k+1)}.
Real cm_direct_value(unsigned k, Real t);

/// (-1)^k h^{(k)}(t) from the Laplace representation (including the constant
/// 1 when k = 0), with relative accuracy about `rel_tol`.
Real cm_laplace_value(unsigned k, Real t, Real rel_tol);

/// One of ineq1, thm13, polybound, kernel_pos.
CheckReport check_inequality(Suite suite, const Grid& grid);

CheckReport check_cm_direct(unsigned k_max, const Grid& grid);

/// `tol` is the relative agreement required with the direct path.
CheckReport check_cm_laplace(unsigned k_max, const Grid& grid, Real tol);

CheckReport check_representations(unsigned k_max, const Grid& z_grid, Real tol);

CheckReport check_limit(const Grid& t_grid);

/// Runs `suite` with the given grid, k_max and tol; k_max and tol are ignored
/// by suites that do not take them.
CheckReport run_suite(Suite suite, const Grid& grid, unsigned k_max, Real tol);

}  // namespace monotone::verify
