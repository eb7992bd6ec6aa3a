#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schw/distances.hpp"
#include "schw/geometry.hpp"
#include "schw/profiles.hpp"
#include "schw/quadrature.hpp"

// Weighted Hardy and Heisenberg functionals for radial profiles, plus the
// two extremal families: the Hardy minimising sequence psi_eps and the
// exact Heisenberg minimisers A exp(-B int_1^r s * metric_factor).

namespace schw {

struct HardyReport {
    double numerator = 0.0;   // int |psi'|^2 gradient_weight dr
    double denominator = 0.0; // int psi^2 / W^2 measure_weight dr
    double quotient = 0.0;
    double constant_bound = 0.0; // ((n-2)/2)^2
};

struct HeisenbergReport {
    double lhs = 0.0;    // (1/2) int psi^2 measure_weight dr
    double moment = 0.0; // int s^2 psi^2 measure_weight dr
    double energy = 0.0; // int |psi'|^2 gradient_weight dr
    double rhs = 0.0;    // sqrt(moment) sqrt(energy)
    double slack = 0.0;  // rhs - lhs
};

namespace detail {

// Integrate `f` over the profile's support, splitting at breakpoints and
// `extra_split`, declaring `gamma` at the horizon when the support touches
// it and `tail` when it is unbounded.
template <class F>
quad::QuadratureResult integrate_segmented(F&& f, const RadialProfile& psi, double gamma,
                                           quad::TailSpec tail, double extra_split,
                                           double tol) {
    const double lo = std::max(psi.support_lo, 1.0);
    const double hi = psi.support_hi;
    std::vector<double> pts;
    pts.push_back(lo);
    auto add = [&](double x) {
        if (x > lo && (std::isinf(hi) || x < hi))
            pts.push_back(x);
    };
    for (double b : psi.breakpoints)
        add(b);
    if (extra_split > 0.0)
        add(extra_split);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(hi);

    const std::size_t pieces = pts.size() - 1;
    const double piece_tol = tol / static_cast<double>(pieces);
    quad::QuadratureResult total;
    total.converged = true;
    for (std::size_t i = 0; i < pieces; ++i) {
        const bool first = i == 0;
        const bool last_infinite = std::isinf(pts[i + 1]);
        quad::SingularitySpec sing = (first && lo == 1.0 && gamma < 0.0)
                                         ? quad::SingularitySpec::power(gamma)
                                         : quad::SingularitySpec::none();
        total += quad::integrate(f, pts[i], pts[i + 1], sing,
                                 last_infinite ? tail : quad::TailSpec::compact(), piece_tol);
    }
    if (!total.converged)
        throw QuadratureFailure(total);
    return total;
}

// Tail class of a derived integrand, shifting a PowerLaw exponent by
// `power_shift` (profiles assert |psi'| = O(psi/r) for PowerLaw tails).
inline quad::TailSpec shift_tail(const quad::TailSpec& t, double power_shift) {
    if (t.kind == quad::TailSpec::Kind::PowerLaw)
        return quad::TailSpec::power_law(t.power + power_shift);
    return t;
}

inline double hardy_gamma(const RadialProfile& psi) {
    // Energy and weighted-mass integrands both behave like
    // (r-1)^(2 alpha - 3/2) at the horizon; for alpha >= 1/2 declaring -1/2
    // still regularises the half-integer powers exactly.
    return std::min(2.0 * psi.horizon_decay - 1.5, -0.5);
}

inline void screen_derivative(const RadialProfile& psi, const char* caller) {
    const double lo = std::max(psi.support_lo, 1.0);
    const double hi = std::min(psi.support_hi, 50.0);
    if (!(hi > lo))
        return;
    std::vector<double> probes;
    const double a = std::max(lo, 1.02), b = std::max(hi, a * 1.01);
    for (int i = 1; i <= 4; ++i)
        probes.push_back(a * std::pow(b / a, i / 5.0));
    const double worst = derivative_consistency(psi, probes);
    if (worst > 1e-4)
        throw std::invalid_argument(std::string(caller) +
                                    ": profile derivative inconsistent with value (rel. " +
                                    std::to_string(worst) + ")");
}

} // namespace detail

/// Rayleigh quotient of the Hardy functional with weight W in {d, delta, s}.
/// Requires the Hardy admissibility conditions: psi = O((r-1)^alpha) with
/// alpha > 1/4 at the horizon, and a weighted mass integral that converges.
inline HardyReport hardy_quotient(Dimension n, const RadialProfile& psi, DistanceKind kind,
                                  double tol = 1e-10) {
    const int nn = n.value();
    if (psi.support_lo <= 1.0 && !(psi.horizon_decay > 0.25))
        throw std::invalid_argument(
            "hardy_quotient: inadmissible profile, needs psi = O((r-1)^a) with a > 1/4");
    if (psi.infinity_decay.kind == quad::TailSpec::Kind::PowerLaw &&
        !(psi.infinity_decay.power < 1.0))
        throw std::invalid_argument(
            "hardy_quotient: inadmissible profile, weighted mass diverges at infinity");
    detail::screen_derivative(psi, "hardy_quotient");

    const double gamma = detail::hardy_gamma(psi);
    const double split = kind == DistanceKind::CriticalDelta ? branch_radius(n) : 0.0;
    const double half = 0.5 * (nn - 1);

    auto energy = detail::integrate_segmented(
        [&, nn](double r) {
            const double g = psi.derivative(r) * std::pow(r, half);
            return g * g * detail::lapse(nn, r);
        },
        psi, gamma, detail::shift_tail(psi.infinity_decay, -2.0), split, tol);

    auto mass = detail::integrate_segmented(
        [&, nn](double r) {
            const double q = psi.value(r) * std::pow(r, half) / distance(kind, n, r);
            return q * q * metric_factor(n, r);
        },
        psi, gamma, detail::shift_tail(psi.infinity_decay, -2.0), split, tol);

    HardyReport rep;
    rep.numerator = energy.value;
    rep.denominator = mass.value;
    rep.quotient = energy.value / mass.value;
    rep.constant_bound = 0.25 * (nn - 2) * (nn - 2);
    return rep;
}

/// The Hardy minimising sequence: psi_eps(R) = 1, increasing on (1, R),
/// decreasing beyond, with |psi_eps'| = eps psi_eps (n-2) metric_factor /
/// delta. Its Rayleigh quotient approaches ((n-2)/2)^2 as eps -> 1/2+.
/// The exponent integral has the elementary antiderivative
///   int (n-2) mf/delta dxi = (1/2) log(v/(1+v))            on (1, R),
///                          = (1/2) log(1+v) + asinh(sqrt v) on (R, inf),
/// with v = xi^(n-2) - 1, which the closed forms below implement.
inline RadialProfile sharpness_profile(Dimension n, double eps) {
    if (!(eps > 0.5))
        throw std::invalid_argument(
            "sharpness_profile: need eps > 1/2, the weighted mass integral diverges otherwise");
    const int nn = n.value();
    const double R = branch_radius(n);
    auto value = [n, nn, eps, R](double r) {
        detail::require_exterior(r, "sharpness_profile");
        if (r <= R)
            return std::pow(2.0 * detail::lapse(nn, r), eps);
        const double L = (nn - 2) * std::log1p(r - 1.0); // log r^(n-2)
        const double G = detail::lapse(nn, r);
        return std::exp(eps * (std::log(2.0) - L - std::log1p(G)));
    };
    RadialProfile p;
    p.value = value;
    p.derivative = [n, nn, eps, R, value](double r) {
        const double h = (nn - 2) * metric_factor(n, r) / critical_delta(n, r);
        return (r < R ? 1.0 : -1.0) * eps * value(r) * h;
    };
    p.horizon_decay = 0.5 * eps;
    p.infinity_decay = quad::TailSpec::power_law(nn - 1 - 2.0 * eps * (nn - 2));
    p.breakpoints = {R};
    return p;
}

namespace detail {

struct MinimiserCore {
    Dimension n;
    double B;
    double r_max = 0.0;
    std::vector<double> anchor_r;
    std::vector<double> anchor_sigma;
    double sigma_max = 0.0;
    double s_at_rmax = 0.0;

    MinimiserCore(Dimension dim, double b) : n(dim), B(b) {}

    double s(double r) const {
        return n.value() <= 4 ? induced_distance(n, r)
                              : induced_distance_quadrature(n, r, 1e-12);
    }
    double exponent_integrand(double r) const { return s(r) * metric_factor(n, r); }

    // Sigma(r) = int_1^r s * metric_factor; bounded integrand (-> 2/(n-2)
    // at the horizon). Anchored on a monotone grid so repeated evaluations
    // only integrate short stretches.
    double sigma(double r) const {
        if (!(r > 1.0))
            return 0.0;
        if (r >= r_max)
            return sigma_max + s_at_rmax * (r - r_max); // psi underflows here anyway
        auto f = [this](double x) { return exponent_integrand(x); };
        auto it = std::upper_bound(anchor_r.begin(), anchor_r.end(), r);
        if (it == anchor_r.begin())
            return checked(quad::integrate(f, 1.0, r, quad::SingularitySpec::inverse_sqrt(),
                                           quad::TailSpec::compact(), 1e-12));
        const std::size_t i = static_cast<std::size_t>(it - anchor_r.begin()) - 1;
        if (anchor_r[i] == r)
            return anchor_sigma[i];
        return anchor_sigma[i] + checked(quad::integrate(f, anchor_r[i], r,
                                                         quad::SingularitySpec::none(),
                                                         quad::TailSpec::compact(), 1e-12));
    }
};

} // namespace detail

/// Exact minimiser family of the Heisenberg inequality (A = 1):
/// psi(r) = exp(-B int_1^r s(xi) metric_factor(xi) dxi), B > 0.
inline RadialProfile heisenberg_minimiser(Dimension n, double B) {
    if (!(B > 0.0))
        throw std::invalid_argument(
            "heisenberg_minimiser: need B > 0, the limit condition at infinity fails otherwise");
    auto core = std::make_shared<detail::MinimiserCore>(n, B);
    core->r_max = std::sqrt(2.0 * n.value() * 500.0 / B) + 10.0;

    const int m = 160;
    std::vector<double> grid(m);
    const double w0 = 1e-6, w1 = core->r_max - 1.0;
    for (int i = 0; i < m; ++i)
        grid[i] = 1.0 + w0 * std::pow(w1 / w0, static_cast<double>(i) / (m - 1));
    auto cum = quad::cumulative([&](double x) { return core->exponent_integrand(x); }, 1.0,
                                grid, quad::SingularitySpec::inverse_sqrt(), 1e-12);
    core->anchor_r = grid;
    core->anchor_sigma.reserve(cum.size());
    for (const auto& c : cum) {
        if (!c.converged)
            throw QuadratureFailure(c);
        core->anchor_sigma.push_back(c.value);
    }
    core->sigma_max = core->anchor_sigma.back();
    core->r_max = grid.back();
    core->s_at_rmax = core->s(core->r_max);

    RadialProfile p;
    p.value = [core](double r) { return std::exp(-core->B * core->sigma(r)); };
    p.derivative = [core](double r) {
        const double v = std::exp(-core->B * core->sigma(r));
        return -core->B * core->s(r) * metric_factor(core->n, r) * v;
    };
    p.horizon_decay = 0.0;
    p.infinity_decay = quad::TailSpec::exponential();
    return p;
}

/// Uncertainty product for an admissible profile (psi^2 r^n -> 0 at
/// infinity). slack >= 0 up to quadrature error, with equality exactly on
/// the heisenberg_minimiser family.
inline HeisenbergReport heisenberg_report(Dimension n, const RadialProfile& psi,
                                          double tol = 1e-10) {
    const int nn = n.value();
    if (psi.infinity_decay.kind == quad::TailSpec::Kind::PowerLaw &&
        !(psi.infinity_decay.power < -3.0))
        throw std::invalid_argument("heisenberg_report: inadmissible profile, needs "
                                    "psi^2 r^(n+1) integrable at infinity");
    detail::screen_derivative(psi, "heisenberg_report");

    const double gamma =
        psi.support_lo <= 1.0 ? std::min(2.0 * psi.horizon_decay - 0.5, -0.5) : 0.0;
    const double half = 0.5 * (nn - 1);

    auto mass = detail::integrate_segmented(
        [&, nn](double r) {
            const double q = psi.value(r) * std::pow(r, half);
            return q * q * metric_factor(n, r);
        },
        psi, gamma, psi.infinity_decay, 0.0, tol);
    auto moment = detail::integrate_segmented(
        [&, nn](double r) {
            const double q = psi.value(r) * induced_distance(n, r) * std::pow(r, half);
            return q * q * metric_factor(n, r);
        },
        psi, -0.5, detail::shift_tail(psi.infinity_decay, 2.0), 0.0, tol);
    auto energy = detail::integrate_segmented(
        [&, nn](double r) {
            const double g = psi.derivative(r) * std::pow(r, half);
            return g * g * detail::lapse(nn, r);
        },
        psi, -0.5, detail::shift_tail(psi.infinity_decay, -2.0), 0.0, tol);

    HeisenbergReport rep;
    rep.lhs = 0.5 * mass.value;
    rep.moment = moment.value;
    rep.energy = energy.value;
    rep.rhs = std::sqrt(moment.value) * std::sqrt(energy.value);
    rep.slack = rep.rhs - rep.lhs;
    return rep;
}

/// Flat-space comparison values for a profile supported far from the hole:
/// (Hardy quotient with weight |x|^2, Heisenberg ratio rhs/lhs).
inline std::pair<double, double> euclidean_reference(Dimension n, const RadialProfile& psi,
                                                     double tol = 1e-10) {
    if (!(psi.support_lo >= 10.0))
        throw std::invalid_argument(
            "euclidean_reference: support too close to the horizon (need r0 >= 10)");
    const int nn = n.value();
    auto piece = [&](auto&& f, quad::TailSpec tail) {
        return detail::integrate_segmented(f, psi, 0.0, tail, 0.0, tol).value;
    };
    const auto& t = psi.infinity_decay;
    const double energy = piece(
        [&](double r) { return psi.derivative(r) * psi.derivative(r) * std::pow(r, nn - 1); },
        detail::shift_tail(t, -2.0));
    const double den = piece(
        [&](double r) { return psi.value(r) * psi.value(r) * std::pow(r, nn - 3); },
        detail::shift_tail(t, -2.0));
    const double mass = piece(
        [&](double r) { return psi.value(r) * psi.value(r) * std::pow(r, nn - 1); }, t);
    const double moment = piece(
        [&](double r) { return psi.value(r) * psi.value(r) * std::pow(r, nn + 1); },
        detail::shift_tail(t, 2.0));
    const double hardy_flat = energy / den;
    const double heis_ratio = std::sqrt(moment) * std::sqrt(energy) / (0.5 * nn * mass);
    return {hardy_flat, heis_ratio};
}

} // namespace schw
