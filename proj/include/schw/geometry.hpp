#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Radial coefficients of the reduced Schwarzschild metric on the exterior
// E = { r > 1 } in horizon-radius units, for spatial dimension n >= 3.
//
// All functions are pure and total over representable r > 1; out-of-domain
// radii raise std::domain_error (no clamping, callers rely on exact domain
// errors when driving singular quadrature).

namespace schw {

class Dimension {
  public:
    explicit Dimension(int n) : n_(n) {
        if (n < 3)
            throw std::invalid_argument("Dimension: need n >= 3, got " + std::to_string(n));
    }
    int value() const noexcept { return n_; }
    friend bool operator==(Dimension a, Dimension b) noexcept { return a.n_ == b.n_; }

  private:
    int n_;
};

namespace detail {

// r^(n-2) - 1 without cancellation near r = 1. For r in [1,2] the
// subtraction r - 1 is exact, and expm1/log1p keep the digits at the
// (r-1) scale; overflow saturates to +inf for very large r^(n-2).
inline double pow_n2_m1(int n, double r) {
    return std::expm1(static_cast<double>(n - 2) * std::log1p(r - 1.0));
}

inline void require_exterior(double r, const char* caller) {
    if (!(r > 1.0))
        throw std::domain_error(std::string(caller) + ": requires r > 1 (got " +
                                std::to_string(r) + ")");
}

// sqrt((r^(n-2)-1)/r^(n-2)) in a form stable at both ends: -> sqrt((n-2)(r-1))
// near the horizon, -> 1 at infinity (even when r^(n-2) overflows).
inline double lapse(int n, double r) {
    const double em = pow_n2_m1(n, r);
    return 1.0 / std::sqrt(1.0 + 1.0 / em);
}

} // namespace detail

/// sqrt(r^(n-2)/(r^(n-2)-1)), the square root of the radial metric
/// coefficient. Diverges like ((n-2)(r-1))^(-1/2) as r -> 1+.
inline double metric_factor(Dimension n, double r) {
    detail::require_exterior(r, "metric_factor");
    const double em = detail::pow_n2_m1(n.value(), r);
    return std::sqrt(1.0 + 1.0 / em);
}

/// r^(n-1) * metric_factor: radial density of the Riemannian volume measure.
inline double measure_weight(Dimension n, double r) {
    detail::require_exterior(r, "measure_weight");
    return std::pow(r, n.value() - 1) * metric_factor(n, r);
}

/// r^(n-1) / metric_factor: radial density weighting |psi'|^2 in the
/// gradient energy. Satisfies measure_weight * gradient_weight = r^(2(n-1)).
inline double gradient_weight(Dimension n, double r) {
    detail::require_exterior(r, "gradient_weight");
    return std::pow(r, n.value() - 1) / metric_factor(n, r);
}

} // namespace schw
