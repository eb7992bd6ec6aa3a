#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

// Adaptive Gauss-Kronrod integration on (a, b) or (a, +inf) for integrands
// with an algebraic endpoint singularity (r-a)^gamma, gamma in (-1, 0], at
// the lower endpoint, and power-law / exponential / compactly supported
// behaviour at infinity.
//
// The singular weight is removed exactly by the substitution
//     t = (r-a)^(1+gamma),  A(w) = f(a+w) * w^(-gamma),
// which reduces to the classic u^2 = r-a map when gamma = -1/2. A power-law
// tail f ~ C r^p (p < -1) is likewise mapped exactly onto a finite interval
// by t = r^(p+1). Nodes are strictly interior, so the integrand is never
// evaluated at an endpoint.

namespace schw::quad {

struct SingularitySpec {
    // Declared leading behaviour f(r) ~ C (r-a)^exponent as r -> a+.
    // Integrands that vanish faster are fine; the extracted amplitude then
    // tends to zero at the endpoint.
    double exponent = 0.0;
    bool at_lower_endpoint = false;

    static SingularitySpec none() noexcept { return {}; }
    static SingularitySpec inverse_sqrt() noexcept { return {-0.5, true}; }
    static SingularitySpec power(double exponent) {
        if (!(exponent > -1.0) || exponent > 0.0)
            throw std::invalid_argument("SingularitySpec: exponent must lie in (-1, 0]");
        return {exponent, exponent != 0.0};
    }
};

struct TailSpec {
    enum class Kind { Compact, PowerLaw, Exponential };

    Kind kind = Kind::Compact;
    double power = 0.0; // PowerLaw: f(r) ~ C r^power; needs power < -1 on (a, inf)
    double support_end = std::numeric_limits<double>::infinity();

    static TailSpec compact(double end = std::numeric_limits<double>::infinity()) noexcept {
        return {Kind::Compact, 0.0, end};
    }
    static TailSpec power_law(double p) noexcept { return {Kind::PowerLaw, p, 0.0}; }
    static TailSpec exponential() noexcept { return {Kind::Exponential, 0.0, 0.0}; }
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    bool converged = false;
    std::int64_t evaluations = 0;

    QuadratureResult& operator+=(const QuadratureResult& o) noexcept {
        value += o.value;
        abs_error_estimate += o.abs_error_estimate;
        converged = converged && o.converged;
        evaluations += o.evaluations;
        return *this;
    }
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (positive abscissae and weights).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
};

// One G7-K15 panel with the QUADPACK error heuristic.
template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::abs(resk);
    double fv[7][2];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j][0] = f(center - dx);
        fv[j][1] = f(center + dx);
        const double sum = fv[j][0] + fv[j][1];
        resk += kWgk[j] * sum;
        if (j % 2 == 1)
            resg += kWg[j / 2] * sum;
        resabs += kWgk[j] * (std::abs(fv[j][0]) + std::abs(fv[j][1]));
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j][0] - mean) + std::abs(fv[j][1] - mean));

    PanelEstimate out;
    out.value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    out.error = err;
    return out;
}

struct Panel {
    double a, b, value, error;
};

// Worst-panel-first adaptive bisection. Convergence target is
// tol * max(1, |integral|), i.e. absolute-or-relative, whichever is larger.
template <class F>
QuadratureResult adaptive(F&& f, double a, double b, double tol, int max_panels) {
    QuadratureResult out;
    if (!(b > a)) {
        out.converged = true;
        return out;
    }
    std::vector<Panel> panels;     // splittable panels
    panels.reserve(64);
    double frozen_value = 0.0;     // panels at roundoff width, kept aside
    double frozen_error = 0.0;
    {
        PanelEstimate e = gk15(f, a, b);
        panels.push_back({a, b, e.value, e.error});
    }
    const double eps = std::numeric_limits<double>::epsilon();
    while (true) {
        double total = frozen_value, toterr = frozen_error;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            toterr += panels[i].error;
            if (panels[i].error > panels[worst].error)
                worst = i;
        }
        const double target = tol * std::max(1.0, std::abs(total));
        out.value = total;
        out.abs_error_estimate = toterr;
        if (toterr <= target) {
            out.converged = true;
            return out;
        }
        if (panels.empty() || static_cast<int>(panels.size()) >= max_panels) {
            out.converged = false;
            return out;
        }
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid - p.a < 4.0 * eps * std::max(1.0, std::abs(mid))) {
            frozen_value += p.value;
            frozen_error += p.error;
            panels.erase(panels.begin() + static_cast<std::ptrdiff_t>(worst));
            continue;
        }
        PanelEstimate left = gk15(f, p.a, mid);
        PanelEstimate right = gk15(f, mid, p.b);
        panels[worst] = {p.a, mid, left.value, left.error};
        panels.push_back({mid, p.b, right.value, right.error});
    }
}

// Radii handed to a tail-mapped amplitude are capped here; beyond it the
// amplitude of a valid PowerLaw integrand is constant to ~cap^(p+1).
inline constexpr double kTailRadiusCap = 1e100;

} // namespace detail

/// Integrate f over (a, b) (b may be +inf). `sing` declares an algebraic
/// singularity at the lower endpoint, `tail` the behaviour at infinity
/// (ignored for finite b). Returns best value with converged=false instead
/// of throwing when the error target cannot be met.
template <class F>
QuadratureResult integrate(F&& f, double a, double b,
                           SingularitySpec sing = SingularitySpec::none(),
                           TailSpec tail = TailSpec::compact(),
                           double tol = 1e-10, int max_panels = 4000) {
    if (!(a >= 1.0))
        throw std::invalid_argument("integrate: lower endpoint must satisfy a >= 1");
    if (!(tol > 0.0))
        throw std::invalid_argument("integrate: tol must be positive");
    const bool infinite = std::isinf(b);
    if (!infinite && !(b >= a))
        throw std::invalid_argument("integrate: need b >= a");
    if (infinite && tail.kind == TailSpec::Kind::PowerLaw && !(tail.power < -1.0))
        throw std::invalid_argument("integrate: PowerLaw tail needs p < -1 on (a, inf)");
    if (infinite && tail.kind == TailSpec::Kind::Compact && !std::isfinite(tail.support_end))
        throw std::invalid_argument(
            "integrate: Compact tail on (a, inf) needs a finite support end");

    std::int64_t evals = 0;
    auto fc = [&](double r) {
        ++evals;
        return f(r);
    };

    auto finite_piece = [&](double lo, double hi, SingularitySpec s,
                            double piece_tol) -> QuadratureResult {
        if (!(hi > lo))
            return {0.0, 0.0, true, 0};
        if (!s.at_lower_endpoint || s.exponent == 0.0)
            return detail::adaptive(fc, lo, hi, piece_tol, max_panels);
        const double gamma = s.exponent;
        const double q = 1.0 / (1.0 + gamma);
        const double T = std::pow(hi - lo, 1.0 + gamma);
        const double wfloor =
            4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo));
        auto g = [&](double t) {
            double w = std::pow(t, q);
            if (w < wfloor)
                w = wfloor; // amplitude extends continuously to the endpoint
            const double r = lo + w;
            const double weff = r - lo;
            return fc(r) * std::pow(weff, -gamma) * q;
        };
        return detail::adaptive(g, 0.0, T, piece_tol, max_panels);
    };

    QuadratureResult total;
    total.converged = true;

    if (!infinite) {
        total += finite_piece(a, b, sing, tol);
        total.evaluations = evals;
        return total;
    }

    // Head piece covering the singular endpoint, then the mapped tail.
    double c = a;
    if (sing.at_lower_endpoint && sing.exponent != 0.0) {
        c = a + 1.0;
        total += finite_piece(a, c, sing, 0.5 * tol);
    }

    switch (tail.kind) {
    case TailSpec::Kind::Compact: {
        total += finite_piece(c, tail.support_end, SingularitySpec::none(), 0.5 * tol);
        break;
    }
    case TailSpec::Kind::PowerLaw: {
        const double p = tail.power;
        double start = std::max(c, std::max(2.0, 2.0 * a));
        if (start > c)
            total += finite_piece(c, start, SingularitySpec::none(), 0.25 * tol);
        const double T = std::pow(start, p + 1.0);
        const double inv = 1.0 / (p + 1.0); // negative
        auto g = [&](double t) {
            double r = std::pow(t, inv);
            if (r > detail::kTailRadiusCap)
                r = detail::kTailRadiusCap;
            return fc(r) * std::pow(r, -p) * (-inv);
        };
        total += detail::adaptive(g, 0.0, T, 0.25 * tol, max_panels);
        break;
    }
    case TailSpec::Kind::Exponential: {
        // Extend by doubling segments until the last one certifies, by its
        // geometric decay, that the remainder is below tol/10.
        double lo = c;
        double len = std::max(1.0, c);
        double prev = std::numeric_limits<double>::infinity();
        bool certified = false;
        for (int k = 0; k < 120; ++k) {
            const double hi = lo + len;
            QuadratureResult seg =
                finite_piece(lo, hi, SingularitySpec::none(), 0.05 * tol);
            total.value += seg.value;
            total.abs_error_estimate += seg.abs_error_estimate;
            total.converged = total.converged && seg.converged;
            const double mag = std::abs(seg.value);
            const double scale = std::max(1.0, std::abs(total.value));
            if (mag <= 0.1 * tol * scale && mag <= 0.5 * prev) {
                // Remaining mass is bounded by a geometric series with
                // ratio <= 1/2, i.e. by `mag` itself.
                total.abs_error_estimate += mag;
                certified = true;
                break;
            }
            prev = mag;
            lo = hi;
            len *= 2.0;
        }
        if (!certified)
            total.converged = false;
        break;
    }
    }
    total.evaluations = evals;
    return total;
}

/// Running integrals int_a^{grid[k]} f, sharing work between consecutive
/// grid points. The singularity spec applies to the first sub-interval only.
template <class F>
std::vector<QuadratureResult> cumulative(F&& f, double a, const std::vector<double>& grid,
                                         SingularitySpec sing = SingularitySpec::none(),
                                         double tol = 1e-10, int max_panels = 4000) {
    std::vector<QuadratureResult> out;
    out.reserve(grid.size());
    double prev = a;
    QuadratureResult acc;
    acc.converged = true;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double g = grid[k];
        if (!(g > prev))
            throw std::invalid_argument("cumulative: grid must be ascending and > a");
        if (!std::isfinite(g))
            throw std::invalid_argument("cumulative: grid points must be finite");
        acc += integrate(f, prev, g, k == 0 ? sing : SingularitySpec::none(),
                         TailSpec::compact(), tol, max_panels);
        out.push_back(acc);
        prev = g;
    }
    return out;
}

} // namespace schw::quad
