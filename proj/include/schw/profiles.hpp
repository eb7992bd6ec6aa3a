#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "schw/distances.hpp"
#include "schw/geometry.hpp"
#include "schw/quadrature.hpp"

// Radial test functions psi(r) together with the decay metadata the
// weighted functionals need to pick integration strategies and to check
// admissibility. Profiles are immutable once built.

namespace schw {

struct RadialProfile {
    std::function<double(double)> value;
    std::function<double(double)> derivative;

    // psi(r) = O((r-1)^horizon_decay) as r -> 1+. Profiles supported away
    // from the horizon use +inf.
    double horizon_decay = 0.0;

    // Tail class of psi^2 r^(n-1). For PowerLaw(p) the profile also asserts
    // |psi'| = O(psi / r), so derived integrands shift p by fixed offsets.
    quad::TailSpec infinity_decay = quad::TailSpec::compact();

    // Radii where psi or psi' has reduced smoothness; integrals split here.
    std::vector<double> breakpoints{};

    double support_lo = 1.0; // psi == 0 on (1, support_lo]
    double support_hi = std::numeric_limits<double>::infinity();
};

/// C^1 quartic bump a*(1-x^2)^2 on (lo, hi), zero outside.
inline RadialProfile bump_profile(double lo, double hi, double amplitude = 1.0) {
    if (!(1.0 < lo && lo < hi))
        throw std::invalid_argument("bump_profile: need 1 < lo < hi");
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    RadialProfile p;
    p.value = [=](double r) {
        const double x = (r - mid) / half;
        if (std::abs(x) >= 1.0)
            return 0.0;
        const double y = 1.0 - x * x;
        return amplitude * y * y;
    };
    p.derivative = [=](double r) {
        const double x = (r - mid) / half;
        if (std::abs(x) >= 1.0)
            return 0.0;
        return amplitude * -4.0 * x * (1.0 - x * x) / half;
    };
    p.horizon_decay = std::numeric_limits<double>::infinity();
    p.infinity_decay = quad::TailSpec::compact(hi);
    p.breakpoints = {lo, hi};
    p.support_lo = lo;
    p.support_hi = hi;
    return p;
}

struct BumpComponent {
    double lo, hi, amplitude;
};

/// Sum of quartic bumps (possibly overlapping).
inline RadialProfile bump_sum_profile(const std::vector<BumpComponent>& parts) {
    if (parts.empty())
        throw std::invalid_argument("bump_sum_profile: no components");
    RadialProfile p;
    double lo = std::numeric_limits<double>::infinity(), hi = 1.0;
    for (const auto& c : parts) {
        if (!(1.0 < c.lo && c.lo < c.hi))
            throw std::invalid_argument("bump_sum_profile: need 1 < lo < hi");
        lo = std::min(lo, c.lo);
        hi = std::max(hi, c.hi);
        p.breakpoints.push_back(c.lo);
        p.breakpoints.push_back(c.hi);
    }
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    p.value = [parts](double r) {
        double v = 0.0;
        for (const auto& c : parts) {
            const double mid = 0.5 * (c.lo + c.hi), half = 0.5 * (c.hi - c.lo);
            const double x = (r - mid) / half;
            if (std::abs(x) < 1.0) {
                const double y = 1.0 - x * x;
                v += c.amplitude * y * y;
            }
        }
        return v;
    };
    p.derivative = [parts](double r) {
        double v = 0.0;
        for (const auto& c : parts) {
            const double mid = 0.5 * (c.lo + c.hi), half = 0.5 * (c.hi - c.lo);
            const double x = (r - mid) / half;
            if (std::abs(x) < 1.0)
                v += c.amplitude * -4.0 * x * (1.0 - x * x) / half;
        }
        return v;
    };
    p.horizon_decay = std::numeric_limits<double>::infinity();
    p.infinity_decay = quad::TailSpec::compact(hi);
    p.support_lo = lo;
    p.support_hi = hi;
    return p;
}

/// Piecewise-linear hat through (knots[i], values[i]); endpoints must be 0.
inline RadialProfile hat_profile(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() < 3 || knots.size() != values.size())
        throw std::invalid_argument("hat_profile: need matching knots/values, >= 3");
    if (!(knots.front() > 1.0) || values.front() != 0.0 || values.back() != 0.0)
        throw std::invalid_argument("hat_profile: support must start past r=1 and close");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i] > knots[i - 1]))
            throw std::invalid_argument("hat_profile: knots must be ascending");
    RadialProfile p;
    p.support_lo = knots.front();
    p.support_hi = knots.back();
    p.breakpoints = knots;
    p.horizon_decay = std::numeric_limits<double>::infinity();
    p.infinity_decay = quad::TailSpec::compact(knots.back());
    auto segment = [knots](double r) -> std::ptrdiff_t {
        if (r <= knots.front() || r >= knots.back())
            return -1;
        return std::upper_bound(knots.begin(), knots.end(), r) - knots.begin() - 1;
    };
    p.value = [knots, values, segment](double r) {
        const auto i = segment(r);
        if (i < 0)
            return 0.0;
        const double t = (r - knots[i]) / (knots[i + 1] - knots[i]);
        return values[i] + t * (values[i + 1] - values[i]);
    };
    p.derivative = [knots, values, segment](double r) {
        const auto i = segment(r);
        if (i < 0)
            return 0.0;
        return (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
    };
    return p;
}

/// psi = exp(-lambda d) - exp(-(lambda+1) d): vanishes like d ~ (r-1)^(1/2)
/// at the horizon and decays exponentially in r.
inline RadialProfile exp_decay_profile(Dimension n, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("exp_decay_profile: lambda must be positive");
    RadialProfile p;
    p.value = [n, lambda](double r) {
        const double d = riemannian_distance(n, r);
        return std::exp(-lambda * d) - std::exp(-(lambda + 1.0) * d);
    };
    p.derivative = [n, lambda](double r) {
        const double d = riemannian_distance(n, r);
        return metric_factor(n, r) *
               (-lambda * std::exp(-lambda * d) + (lambda + 1.0) * std::exp(-(lambda + 1.0) * d));
    };
    p.horizon_decay = 0.5;
    p.infinity_decay = quad::TailSpec::exponential();
    return p;
}

/// psi |-> psi * (1 + 0.1 sin d(r)); keeps decay classes, breaks minimality.
inline RadialProfile perturb_with_sin_d(Dimension n, const RadialProfile& base) {
    RadialProfile p = base;
    auto v = base.value;
    auto dv = base.derivative;
    p.value = [n, v](double r) { return v(r) * (1.0 + 0.1 * std::sin(riemannian_distance(n, r))); };
    p.derivative = [n, v, dv](double r) {
        const double d = riemannian_distance(n, r);
        return dv(r) * (1.0 + 0.1 * std::sin(d)) +
               v(r) * 0.1 * std::cos(d) * metric_factor(n, r);
    };
    return p;
}

/// Cross-check derivative metadata against central differences at probe
/// points (skipping breakpoint neighbourhoods). Returns the worst mismatch
/// scaled by max(1, |psi'|).
inline double derivative_consistency(const RadialProfile& psi, const std::vector<double>& probes) {
    double worst = 0.0;
    for (double r : probes) {
        const double h = 1e-6 * std::max(1.0, r);
        bool near_kink = false;
        for (double b : psi.breakpoints)
            if (std::abs(r - b) < 4.0 * h)
                near_kink = true;
        if (near_kink || r - h <= 1.0)
            continue;
        const double fd = (psi.value(r + h) - psi.value(r - h)) / (2.0 * h);
        const double an = psi.derivative(r);
        const double scale = std::max({1.0, std::abs(fd), std::abs(an)});
        worst = std::max(worst, std::abs(fd - an) / scale);
    }
    return worst;
}

} // namespace schw
