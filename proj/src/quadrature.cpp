#include "monotone/quadrature.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <vector>

namespace monotone {

namespace {

// Kronrod nodes on [0, 1]; odd indices are the Gauss-7 nodes.
constexpr std::array<Real, 8> kKronrodNodes{
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L,
};
constexpr std::array<Real, 8> kKronrodWeights{
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L,
};
// Gauss weights for nodes 1, 3, 5, 7 above.
constexpr std::array<Real, 4> kGaussWeights{
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L,
};

struct Panel {
    Real a;
    Real b;
    Real value;
    Real error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<Real(Real)>& f, Real a, Real b) {
    const Real center = (a + b) / 2;
    const Real half = (b - a) / 2;
    const Real fc = f(center);
    Real kronrod = fc * kKronrodWeights[7];
    Real gauss = fc * kGaussWeights[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const Real dx = half * kKronrodNodes[i];
        const Real pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }
    const Real value = kronrod * half;
    const Real error = std::abs((kronrod - gauss) * half);
    if (!std::isfinite(value) || !std::isfinite(error)) {
        throw DomainError("integrand is not finite on the integration range");
    }
    return {a, b, value, error};
}

Real decay_rate(const GrowthEnvelope& env, Real t) { return env.alpha > 0 ? t / 2 : t; }

}  // namespace

namespace quadrature {

Real tail_bound(const GrowthEnvelope& env, Real t, Real cutoff) {
    const Real s = decay_rate(env, t);
    if (!(s > 0) || cutoff < 1) return std::numeric_limits<Real>::infinity();
    if (env.alpha > 0 && std::sqrt(cutoff) < 2 * env.alpha / t) {
        return std::numeric_limits<Real>::infinity();
    }
    const Real denom = s * (1 + cutoff) - env.power;
    if (!(denom > 0)) return std::numeric_limits<Real>::infinity();
    // int_U^inf (1+u)^p e^{-su} du <= (1+U)^{p+1} e^{-sU} / (s(1+U) - p)
    return std::exp(std::log(env.scale) + (env.power + 1) * std::log1p(cutoff) - s * cutoff -
                    std::log(denom));
}

Real choose_cutoff(const GrowthEnvelope& env, Real t, Real target) {
    if (!(t > 0) || !std::isfinite(t)) {
        throw QuadratureError(QuadratureError::Kind::tail_unbounded,
                              "tail-unbounded: Laplace parameter must be positive");
    }
    const Real s = decay_rate(env, t);
    const Real growth = 2 * env.alpha / t;
    Real lo = std::max({Real(1), growth * growth, (env.power + 1) / s});
    if (tail_bound(env, t, lo) < target) return lo;
    Real hi = lo;
    while (!(tail_bound(env, t, hi) < target)) {
        lo = hi;
        hi *= 2;
        if (hi > kMaxCutoff) {
            throw QuadratureError(QuadratureError::Kind::tail_unbounded,
                                  "tail-unbounded: no finite cutoff meets the tail target");
        }
    }
    for (int i = 0; i < 40 && hi - lo > Real(0.01) * lo; ++i) {
        const Real mid = (lo + hi) / 2;
        (tail_bound(env, t, mid) < target ? hi : lo) = mid;
    }
    return hi;
}

QuadratureValue integrate_panels(const std::function<Real(Real)>& f, std::span<const Real> edges,
                                 Real tol, std::size_t max_panels) {
    detail::require(edges.size() >= 2, "need at least one panel");
    detail::require(tol > 0, "tol must be positive");
    std::priority_queue<Panel> queue;
    QuadratureValue out;
    Real total = 0;
    Real error = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gauss_kronrod(f, edges[i], edges[i + 1]);
        out.evaluations += 15;
        total += p.value;
        error += p.error;
        queue.push(p);
    }
    while (error > tol * std::max(Real(1), std::abs(total))) {
        if (queue.size() >= max_panels) {
            throw QuadratureError(QuadratureError::Kind::max_subdivision,
                                  "max-subdivision: panel cap reached before tolerance");
        }
        const Panel worst = queue.top();
        queue.pop();
        const Real mid = (worst.a + worst.b) / 2;
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    // Re-sum to drop drift from the incremental updates.
    total = 0;
    error = 0;
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : panels) {
        total += p.value;
        error += p.error;
    }
    out.value = total;
    out.error_estimate = error;
    return out;
}

}  // namespace quadrature

QuadratureValue laplace_integral(const IntegrandSpec& g, Real t, Real tol) {
    detail::require(std::isfinite(tol) && tol > 0, "tol must be positive and finite");
    detail::require(bool(g.evaluator), "integrand evaluator is empty");
    const auto& env = g.envelope;
    detail::require(env.scale > 0 && env.alpha >= 0 && env.power >= 0,
                    "envelope requires scale > 0, alpha >= 0, power >= 0");

    const Real cutoff = quadrature::choose_cutoff(env, t, tol / 2);
    const Real tail = quadrature::tail_bound(env, t, cutoff);

    // Spot-check the envelope on the truncation range.
    constexpr int kEnvelopeSamples = 16;
    for (int i = 1; i <= kEnvelopeSamples; ++i) {
        const Real frac = Real(i) / kEnvelopeSamples;
        const Real u = cutoff * frac * frac;
        const Real gu = g.evaluator(u);
        if (!(std::abs(gu) <= env(u) * (1 + Real(1e-9)))) {
            throw QuadratureError(QuadratureError::Kind::envelope_violation,
                                  "integrand exceeds its growth envelope at u = " +
                                      std::to_string(static_cast<double>(u)));
        }
    }

    std::vector<Real> edges{0};
    const Real inner = std::min(Real(1), 1 / t) / 4;
    std::vector<Real> ladder;
    for (Real e = cutoff; e > inner; e /= 2) ladder.push_back(e);
    edges.insert(edges.end(), ladder.rbegin(), ladder.rend());
    if (edges.size() == 1) edges.push_back(cutoff);

    const auto& f = g.evaluator;
    auto integrand = [&f, t](Real u) { return f(u) * std::exp(-t * u); };
    QuadratureValue out = quadrature::integrate_panels(integrand, edges, tol / 2);
    out.evaluations += kEnvelopeSamples;
    out.error_estimate += tail;
    return out;
}

}  // namespace monotone
