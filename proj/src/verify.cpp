#include "monotone/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <thread>

#include "monotone/polygamma.hpp"
#include "monotone/quadrature.hpp"
#include "monotone/series.hpp"

namespace monotone::verify {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();
constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

// Evaluates fn(i) for i in [0, n) across hardware threads. Results must be
// written to slots owned by index i, so the output order does not depend on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
}

// Catches evaluation failures so that one bad point fails the suite instead of
// aborting it.
template <class Fn>
void guarded(CheckEntry& e, Fn&& fn) {
    try {
        fn(e);
        if (!std::isfinite(e.lhs) || !std::isfinite(e.rhs) || !std::isfinite(e.margin)) {
            throw std::overflow_error("evaluation is not finite in Real");
        }
    } catch (const std::exception& ex) {
        e.lhs = e.rhs = e.margin = kNaN;
        e.error = ex.what();
    }
}

void finalize(CheckReport& r, Real threshold) {
    r.min_margin = kInf;
    r.pass = !r.entries.empty();
    for (const auto& e : r.entries) {
        if (!e.error.empty() || std::isnan(e.margin)) {
            r.pass = false;
            r.min_margin = kNaN;
            continue;
        }
        if (!std::isnan(r.min_margin)) r.min_margin = std::min(r.min_margin, e.margin);
        if (!(e.margin > threshold)) r.pass = false;
    }
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Laplace integral whose absolute error is at most abs_target.
Real integrate_absolute(const IntegrandSpec& spec, Real t, Real abs_target) {
    QuadratureValue q = laplace_integral(spec, t, abs_target);
    if (std::abs(q.value) > 1) q = laplace_integral(spec, t, abs_target / std::abs(q.value));
    return q.value;
}

// Laplace integral with relative error about rel_target.
Real integrate_relative(const IntegrandSpec& spec, Real t, Real rel_target) {
    QuadratureValue q = laplace_integral(spec, t, rel_target);
    const Real scale = std::abs(q.value);
    if (scale < 1) {
        q = laplace_integral(spec, t, rel_target * std::max(scale, Real(1e-300)));
    }
    return q.value;
}

// (1 + u/2 + u^2/12) - u/(1 - e^{-u}) = -sum_{i>=2} b_{2i} u^{2i}
Real polybound_series(Real u) {
    const Real u2 = u * u;
    Real sum = 0;
    for (unsigned i = 10; i >= 2; --i) sum = sum * u2 + bernoulli_series_coeff(2 * i);
    return -sum * u2 * u2;
}

void require_grid(const Grid& grid) { detail::require(!grid.points.empty(), "grid is empty"); }

CheckReport start_report(Suite suite, const Grid& grid, std::optional<unsigned> k_max, Real tol) {
    CheckReport r;
    r.suite_id = std::string(to_string(suite));
    r.grid = grid.spec;
    r.k_max = k_max;
    r.tol = tol;
    return r;
}

}  // namespace

Grid make_grid(const GridSpec& spec) {
    detail::require(std::isfinite(spec.lo) && std::isfinite(spec.hi), "grid bounds must be finite");
    detail::require(spec.count >= 1, "grid count must be positive");
    detail::require(spec.lo > 0, "grid points must be positive");
    detail::require(spec.count == 1 ? spec.lo <= spec.hi : spec.lo < spec.hi,
                    "grid requires lo < hi");
    Grid g;
    g.spec = spec;
    g.points.resize(spec.count);
    if (spec.count == 1) {
        g.points[0] = spec.lo;
        return g;
    }
    const Real n = Real(spec.count - 1);
    const Real log_ratio = std::log(spec.hi / spec.lo);
    for (std::size_t i = 0; i < spec.count; ++i) {
        const Real f = Real(i) / n;
        g.points[i] = spec.spacing == Spacing::log ? spec.lo * std::exp(f * log_ratio)
                                                   : spec.lo + (spec.hi - spec.lo) * f;
    }
    g.points.front() = spec.lo;
    g.points.back() = spec.hi;
    for (std::size_t i = 1; i < g.points.size(); ++i) {
        detail::require(g.points[i] > g.points[i - 1], "grid is not strictly increasing");
    }
    return g;
}

Grid make_grid(std::vector<Real> points) {
    detail::require(!points.empty(), "grid is empty");
    for (std::size_t i = 0; i < points.size(); ++i) {
        detail::require(std::isfinite(points[i]) && points[i] > 0, "grid points must be positive");
        if (i > 0) detail::require(points[i] > points[i - 1], "grid is not strictly increasing");
    }
    Grid g;
    g.spec = {points.front(), points.back(), points.size(), Spacing::linear};
    g.points = std::move(points);
    return g;
}

std::string_view to_string(Suite s) {
    switch (s) {
        case Suite::ineq1: return "ineq1";
        case Suite::thm13: return "thm13";
        case Suite::polybound: return "polybound";
        case Suite::kernel_pos: return "kernel_pos";
        case Suite::cm_direct: return "cm_direct";
        case Suite::cm_laplace: return "cm_laplace";
        case Suite::representations: return "representations";
        case Suite::limit: return "limit";
    }
    return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name) {
    for (Suite s : kAllSuites) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

GridSpec default_grid(Suite s) {
    switch (s) {
        case Suite::ineq1: return {1e-2L, 1e3L, 200, Spacing::log};
        case Suite::thm13: return {1e-2L, 50, 200, Spacing::log};
        case Suite::polybound: return {1e-6L, 50, 200, Spacing::log};
        case Suite::kernel_pos: return {1e-4L, 200, 1000, Spacing::log};
        case Suite::cm_direct:
        case Suite::cm_laplace: return {1e-1L, 1e2L, 200, Spacing::log};
        case Suite::representations: return {1e-1L, 1e2L, 200, Spacing::log};
        case Suite::limit: return {10, 1e4L, 200, Spacing::log};
    }
    return {};
}

unsigned default_k_max(Suite s) {
    switch (s) {
        case Suite::cm_direct:
        case Suite::cm_laplace: return 10;
        case Suite::representations: return 5;
        default: return 0;
    }
}

Real default_tol(Suite s) {
    switch (s) {
        case Suite::polybound: return 1e-14L;
        case Suite::cm_laplace: return 1e-6L;
        case Suite::representations: return 1e-8L;
        default: return 0;
    }
}

Real h_minus_one(Real t) {
    detail::require_finite(t, "t");
    detail::require(t > 0, "h requires t > 0");
    if (t < kAsymptoticBase) return std::expm1(1 / t) - trigamma(t);
    // e^{1/t} - 1 = sum_{m>=1} t^{-m}/m!  and
    // psi'(t) ~ 1/t + 1/(2t^2) + sum_i B_{2i} t^{-(2i+1)};
    // the t^{-1}, t^{-2}, t^{-3} terms cancel exactly.
    const Real inv = 1 / t;
    Real sum = 0;
    for (unsigned m = 21; m >= 4; --m) {
        Real c = 1 / factorial(m);
        if (m % 2 == 1) c -= bernoulli_even((m - 1) / 2).to_real();
        sum = sum * inv + c;
    }
    return sum * std::pow(inv, Real(4));
}

Real h_value(Real t) {
    detail::require_finite(t, "t");
    detail::require(t > 0, "h requires t > 0");
    if (t >= kAsymptoticBase) return 1 + h_minus_one(t);
    return std::exp(1 / t) - trigamma(t);
}

Real kernel_w(Real u) {
    detail::require_finite(u, "u");
    detail::require(u > 0, "kernel_w requires u > 0");
    if (u < kKernelSeriesSwitch) {
        // sum_{k>=3} (1/(k!(k+1)!) - b_k) u^k; the k = 0, 1, 2 coefficients vanish.
        Real sum = 0;
        for (unsigned k = 21; k >= 3; --k) {
            sum = sum * u + (1 / (factorial(k) * factorial(k + 1)) - bernoulli_series_coeff(k));
        }
        return sum * u * u * u;
    }
    return bessel_kernel(u, kEpsilon).value - u_over_one_minus_exp(u);
}

Real polybound_margin(Real u) {
    detail::require_finite(u, "u");
    detail::require(u > 0, "polybound requires u > 0");
    if (u < kBernoulliSeriesSwitch) return polybound_series(u);
    return (1 + u / 2 + u * u / 12) - u_over_one_minus_exp(u);
}

Real cm_direct_value(unsigned k, Real t) {
    if (k == 0) return h_value(t);
    const Real sign = k % 2 == 0 ? 1 : -1;
    return sign * (exp_inv_derivative(k, t) - polygamma(PolygammaOrder(k + 1), t));
}

Real cm_laplace_value(unsigned k, Real t, Real rel_tol) {
    IntegrandSpec spec{
        [k](Real u) { return kernel_w(u) * std::pow(u, Real(k)); },
        GrowthEnvelope{2, 2, Real(k + 1)},
    };
    if (k == 0) return 1 + laplace_integral(spec, t, rel_tol).value;
    return integrate_relative(spec, t, rel_tol);
}

CheckReport check_inequality(Suite suite, const Grid& grid) {
    require_grid(grid);
    detail::require(suite == Suite::ineq1 || suite == Suite::thm13 || suite == Suite::polybound ||
                         suite == Suite::kernel_pos,
                     "check_inequality handles ineq1, thm13, polybound and kernel_pos");
    const Stopwatch clock;
    CheckReport r = start_report(suite, grid, std::nullopt, default_tol(suite));
    r.entries.resize(grid.points.size());
    parallel_for(grid.points.size(), [&](std::size_t i) {
        CheckEntry& e = r.entries[i];
        e.point = grid.points[i];
        e.label = r.suite_id;
        guarded(e, [&](CheckEntry& e) {
            const Real x = e.point;
            switch (suite) {
                case Suite::ineq1:
                    e.lhs = std::expm1(1 / x);
                    e.rhs = trigamma(x);
                    e.margin = h_minus_one(x);
                    break;
                case Suite::thm13: {
                    const Real u = (x / 2) * (x / 2);
                    e.lhs = bessel_i(1, x, kEpsilon).value;
                    e.rhs = (x / 2) * u / -std::expm1(-u);
                    // I_1(t) - rhs = sqrt(u) * w(u) with u = (t/2)^2
                    e.margin = u < kKernelSeriesSwitch ? std::sqrt(u) * kernel_w(u) : e.lhs - e.rhs;
                    break;
                }
                case Suite::polybound:
                    e.lhs = 1 + x / 2 + x * x / 12;
                    e.rhs = u_over_one_minus_exp(x);
                    e.margin = polybound_margin(x);
                    break;
                case Suite::kernel_pos:
                    e.lhs = bessel_kernel(x, kEpsilon).value;
                    e.rhs = u_over_one_minus_exp(x);
                    e.margin = kernel_w(x);
                    break;
                default: break;
            }
        });
    });
    finalize(r, suite == Suite::polybound ? -default_tol(Suite::polybound) : 0);
    r.elapsed_seconds = clock.seconds();
    return r;
}

CheckReport check_cm_direct(unsigned k_max, const Grid& grid) {
    require_grid(grid);
    detail::require(k_max <= kMaxDerivativeOrder, "k_max exceeds the derivative table");
    const Stopwatch clock;
    CheckReport r = start_report(Suite::cm_direct, grid, k_max, 0);
    const std::size_t per_point = k_max + 1;
    r.entries.resize(grid.points.size() * per_point);
    parallel_for(grid.points.size(), [&](std::size_t i) {
        const Real t = grid.points[i];
        for (unsigned k = 0; k <= k_max; ++k) {
            CheckEntry& e = r.entries[i * per_point + k];
            e.point = t;
            e.k = k;
            e.label = "cm_direct";
            guarded(e, [&](CheckEntry& e) {
                const Real sign = k % 2 == 0 ? 1 : -1;
                if (k == 0) {
                    e.lhs = std::exp(1 / t);
                    e.rhs = trigamma(t);
                } else {
                    e.lhs = sign * exp_inv_derivative(k, t);
                    e.rhs = sign * polygamma(PolygammaOrder(k + 1), t);
                }
                e.margin = cm_direct_value(k, t);
            });
        }
    });
    finalize(r, 0);
    r.elapsed_seconds = clock.seconds();
    return r;
}

CheckReport check_cm_laplace(unsigned k_max, const Grid& grid, Real tol) {
    require_grid(grid);
    detail::require(k_max <= kMaxDerivativeOrder, "k_max exceeds the derivative table");
    detail::require(tol > 0 && tol < 1, "cm_laplace tol must lie in (0, 1)");
    detail::require(grid.points.front() >= 0.1L, "cm_laplace requires t >= 0.1");
    const Stopwatch clock;
    CheckReport r = start_report(Suite::cm_laplace, grid, k_max, tol);
    const std::size_t per_point = k_max + 1;
    r.entries.resize(grid.points.size() * per_point);
    const Real quad_tol = tol / 100;
    parallel_for(r.entries.size(), [&](std::size_t idx) {
        const Real t = grid.points[idx / per_point];
        const unsigned k = static_cast<unsigned>(idx % per_point);
        CheckEntry& e = r.entries[idx];
        e.point = t;
        e.k = k;
        e.label = "cm_laplace";
        guarded(e, [&](CheckEntry& e) {
            e.lhs = cm_laplace_value(k, t, quad_tol);
            e.rhs = cm_direct_value(k, t);
            e.margin = tol * std::abs(e.rhs) - std::abs(e.lhs - e.rhs);
        });
    });
    finalize(r, 0);
    r.elapsed_seconds = clock.seconds();
    return r;
}

CheckReport check_representations(unsigned k_max, const Grid& z_grid, Real tol) {
    require_grid(z_grid);
    detail::require(tol > 0, "tol must be positive");
    detail::require(z_grid.points.front() >= 0.1L, "representations require z >= 0.1");
    const Stopwatch clock;
    CheckReport r = start_report(Suite::representations, z_grid, k_max, tol);
    // Per z: H_k via the 1F2 and the I_{k+2} representations for k = 0..k_max,
    // then e^{1/z} via the I_1 and I_2 kernels.
    const std::size_t per_point = 2 * (k_max + 1) + 2;
    r.entries.resize(z_grid.points.size() * per_point);
    const Real quad_scale = tol / 100;

    parallel_for(r.entries.size(), [&](std::size_t idx) {
        const Real z = z_grid.points[idx / per_point];
        const std::size_t slot = idx % per_point;
        CheckEntry& e = r.entries[idx];
        e.point = z;
        guarded(e, [&](CheckEntry& e) {
            if (slot < 2 * (k_max + 1)) {
                const unsigned k = static_cast<unsigned>(slot / 2);
                e.k = k;
                e.lhs = exp_tail_h(k, z);
                const Real allowed = std::max(tol, tol * std::abs(e.lhs));
                const Real abs_target = quad_scale * std::max(Real(1), std::abs(e.lhs));
                if (slot % 2 == 0) {
                    e.label = "tail_hyper_1f2";
                    const Real norm = 1 / (factorial(k) * factorial(k + 1));
                    IntegrandSpec spec{
                        [k, norm](Real s) {
                            return norm * hyper_1f2(k, s, kEpsilon).value * std::pow(s, Real(k));
                        },
                        GrowthEnvelope{norm, 2, Real(k)},
                    };
                    e.rhs = integrate_absolute(spec, z, abs_target);
                } else {
                    e.label = "tail_bessel";
                    const Real zk = std::pow(z, Real(k + 1));
                    IntegrandSpec spec{
                        [k](Real s) { return bessel_i_scaled(k + 2, s, kEpsilon).value; },
                        GrowthEnvelope{1 / factorial(k + 2), 2, 0},
                    };
                    const Real integral = integrate_absolute(spec, z, abs_target * zk);
                    e.rhs = (1 / factorial(k + 1) + integral) / zk;
                }
                e.margin = allowed - std::abs(e.lhs - e.rhs);
                return;
            }
            e.k = 0;
            e.lhs = std::exp(1 / z);
            const Real allowed = std::max(tol, tol * e.lhs);
            const Real abs_target = quad_scale * e.lhs;
            if (slot == per_point - 2) {
                e.label = "exp_bessel_kernel";
                IntegrandSpec spec{[](Real s) { return bessel_kernel(s, kEpsilon).value; },
                                   GrowthEnvelope{1, 2, 0}};
                e.rhs = 1 + integrate_absolute(spec, z, abs_target);
            } else {
                e.label = "exp_bessel_i2";
                IntegrandSpec spec{[](Real s) { return bessel_i_scaled(2, s, kEpsilon).value; },
                                   GrowthEnvelope{Real(0.5), 2, 0}};
                e.rhs = 1 + (1 + integrate_absolute(spec, z, abs_target * z)) / z;
            }
            e.margin = allowed - std::abs(e.lhs - e.rhs);
        });
    });
    finalize(r, 0);
    r.elapsed_seconds = clock.seconds();
    return r;
}

CheckReport check_limit(const Grid& t_grid) {
    require_grid(t_grid);
    detail::require(t_grid.points.front() >= 10 && t_grid.points.back() <= Real(1e4),
                    "limit grid must lie within [10, 1e4]");
    const Stopwatch clock;
    CheckReport r = start_report(Suite::limit, t_grid, std::nullopt, 0);
    r.entries.resize(t_grid.points.size());
    for (std::size_t i = 0; i < t_grid.points.size(); ++i) {
        CheckEntry& e = r.entries[i];
        e.point = t_grid.points[i];
        e.label = "limit";
        guarded(e, [&](CheckEntry& e) {
            const Real t = e.point;
            e.lhs = h_minus_one(t);
            e.rhs = 1 / (24 * std::pow(t, Real(4)));
            const Real ratio = e.lhs / e.rhs;
            e.margin = std::min(5 / t - std::abs(ratio - 1), 2 - std::abs(ratio));
            if (i > 0 && r.entries[i - 1].error.empty()) {
                const Real prev = std::abs(r.entries[i - 1].lhs);
                e.margin = std::min(e.margin, (prev - std::abs(e.lhs)) / prev);
            }
        });
    }
    finalize(r, 0);
    r.elapsed_seconds = clock.seconds();
    return r;
}

CheckReport run_suite(Suite suite, const Grid& grid, unsigned k_max, Real tol) {
    switch (suite) {
        case Suite::cm_direct: return check_cm_direct(k_max, grid);
        case Suite::cm_laplace: return check_cm_laplace(k_max, grid, tol);
        case Suite::representations: return check_representations(k_max, grid, tol);
        case Suite::limit: return check_limit(grid);
        default: return check_inequality(suite, grid);
    }
}

}  // namespace monotone::verify
