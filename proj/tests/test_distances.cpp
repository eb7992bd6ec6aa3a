#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "schw/distances.hpp"
#include "testutil.hpp"

using schw::DeltaBranch;
using schw::Dimension;
using schw::DistanceKind;
using testutil::rel_err;

TEST_CASE("riemannian distance closed forms") {
    // n=3: sqrt(r)sqrt(r-1) + log(sqrt r + sqrt(r-1)); at 4/3 this is 2/3 + ln3/2.
    REQUIRE(rel_err(schw::riemannian_distance(Dimension(3), 4.0 / 3.0), 1.2159728110007215) <
            1e-14);
    REQUIRE(rel_err(schw::riemannian_distance(Dimension(3), 2.0), 2.2955871493926381) < 1e-14);
    REQUIRE(rel_err(schw::riemannian_distance(Dimension(4), 2.0), std::sqrt(3.0)) < 1e-14);
    REQUIRE(rel_err(schw::riemannian_distance(Dimension(4), 1.5), std::sqrt(1.25)) < 1e-14);
}

TEST_CASE("closed forms agree with quadrature for n = 3, 4") {
    for (int n : {3, 4}) {
        for (int k = 0; k < 50; ++k) {
            const double r = 1.01 * std::pow(50.0 / 1.01, k / 49.0);
            REQUIRE(rel_err(schw::riemannian_distance_quadrature(Dimension(n), r),
                            schw::riemannian_distance(Dimension(n), r)) < 1e-8);
            REQUIRE(rel_err(schw::induced_distance_quadrature(Dimension(n), r),
                            schw::induced_distance(Dimension(n), r)) < 1e-8);
        }
    }
}

TEST_CASE("near-horizon asymptotics of d") {
    for (int n = 3; n <= 8; ++n) {
        const double w = 1e-8;
        const double coeff =
            schw::riemannian_distance(Dimension(n), 1.0 + w) / std::sqrt(w);
        REQUIRE(rel_err(coeff, 2.0 / std::sqrt(n - 2.0)) < 1e-3);
    }
}

TEST_CASE("branch radius") {
    REQUIRE(rel_err(schw::branch_radius(Dimension(3)), 4.0 / 3.0) < 1e-15);
    REQUIRE(rel_err(schw::branch_radius(Dimension(4)), 1.1547005383792515) < 1e-15);
    double prev = schw::branch_radius(Dimension(3));
    for (int n = 4; n <= 30; ++n) {
        const double R = schw::branch_radius(Dimension(n));
        REQUIRE(R > 1.0);
        REQUIRE(R < prev);
        // R^(n-2) = 4/3 to machine precision (a few ulp through pow).
        REQUIRE(rel_err(std::pow(R, n - 2), 4.0 / 3.0) < 4e-15);
        prev = R;
    }
}

TEST_CASE("critical delta values and branch structure") {
    REQUIRE(rel_err(schw::critical_delta(Dimension(3), 4.0 / 3.0), 16.0 / 9.0) < 1e-13);
    REQUIRE(rel_err(schw::critical_delta(Dimension(3), 2.0), 8.0 * (1.0 - 1.0 / std::sqrt(2.0))) <
            1e-14);
    for (int n = 3; n <= 8; ++n) {
        const Dimension dim(n);
        const double R = schw::branch_radius(dim);
        const double inner = schw::critical_delta_branch(dim, R, DeltaBranch::Inner);
        const double outer = schw::critical_delta_branch(dim, R, DeltaBranch::Outer);
        REQUIRE(rel_err(inner, outer) < 1e-12);
        REQUIRE(rel_err(schw::critical_delta(dim, R), std::pow(R, n - 1)) < 1e-12);
        for (double h : {1e-3, 1e-6, 1e-9}) {
            REQUIRE(std::abs(schw::critical_delta(dim, R - h) -
                             schw::critical_delta(dim, R + h)) < 50.0 * h);
        }
    }
}

TEST_CASE("one-sided delta derivatives at the kink") {
    for (int n = 3; n <= 6; ++n) {
        const Dimension dim(n);
        const double R = schw::branch_radius(dim);
        const double left = schw::critical_delta_derivative(dim, R, DeltaBranch::Inner);
        const double right = schw::critical_delta_derivative(dim, R, DeltaBranch::Outer);
        REQUIRE(left != right); // genuine kink
        const double h = 1e-7;
        const double fd_left =
            (schw::critical_delta(dim, R) - schw::critical_delta(dim, R - h)) / h;
        const double fd_right =
            (schw::critical_delta(dim, R + h) - schw::critical_delta(dim, R)) / h;
        // mixed tolerance: the outer derivative vanishes exactly at R for n=4
        REQUIRE(std::abs(fd_left - left) < 1e-5 * std::max(1.0, std::abs(left)));
        REQUIRE(std::abs(fd_right - right) < 1e-5 * std::max(1.0, std::abs(right)));
    }
}

TEST_CASE("delta solves the branch ODE") {
    REQUIRE(std::abs(schw::delta_ode_residual(Dimension(3), 1.1)) < 1e-8);
    REQUIRE(std::abs(schw::delta_ode_residual(Dimension(3), 3.0)) < 1e-8);
    REQUIRE(std::abs(schw::delta_ode_residual(Dimension(5), 2.0)) < 1e-8);
    for (int n = 3; n <= 8; ++n) {
        const Dimension dim(n);
        const double R = schw::branch_radius(dim);
        for (int k = 0; k < 20; ++k) {
            const double t = (k + 0.5) / 20.0;
            const double r_in = 1.0 + (R - 1.0) * t;
            const double r_out = R * std::pow(100.0 / R, t);
            REQUIRE(std::abs(schw::delta_ode_residual(dim, r_in)) < 1e-8);
            REQUIRE(std::abs(schw::delta_ode_residual(dim, r_out)) < 1e-8);
        }
        REQUIRE_THROWS_AS(schw::delta_ode_residual(dim, R), std::domain_error);
    }
}

TEST_CASE("induced distance closed forms and quadrature") {
    REQUIRE(rel_err(schw::induced_distance(Dimension(3), 2.0), 1.1247178383780262) < 1e-14);
    REQUIRE(rel_err(schw::induced_distance(Dimension(3), 1.2), 0.7341863260150707) < 1e-14);
    // n=4 explicit antiderivative: (sqrt(r^2-1)/8)(2 + 3/r^2) + (3/(8r^3)) log(r + sqrt(r^2-1)).
    REQUIRE(rel_err(schw::induced_distance(Dimension(4), 2.0), 0.6571248665201524) < 1e-14);
    REQUIRE(rel_err(schw::induced_distance_quadrature(Dimension(4), 2.0), 0.6571248665201524) <
            1e-10);
    REQUIRE(rel_err(schw::induced_distance(Dimension(5), 2.0), 0.4657917192232953) < 1e-9);
}

TEST_CASE("induced distance solves its IVP") {
    REQUIRE(std::abs(schw::induced_ivp_residual(Dimension(3), 2.0)) < 1e-6);
    REQUIRE(std::abs(schw::induced_ivp_residual(Dimension(4), 1.5)) < 1e-6);
    REQUIRE(std::abs(schw::induced_ivp_residual(Dimension(6), 3.0)) < 1e-6);
    for (int n = 3; n <= 8; ++n)
        for (double r : {1.2, 2.0, 7.0, 40.0})
            REQUIRE(std::abs(schw::induced_ivp_residual(Dimension(n), r)) < 1e-6);
}

TEST_CASE("near-horizon asymptotics of delta and s") {
    const double w = 1e-8;
    for (int n = 3; n <= 8; ++n) {
        const Dimension dim(n);
        REQUIRE(rel_err(schw::critical_delta(dim, 1.0 + w) / std::sqrt(w),
                        2.0 * std::sqrt(n - 2.0)) < 1e-3);
        REQUIRE(rel_err(schw::induced_distance(dim, 1.0 + w) / std::sqrt(w),
                        2.0 / std::sqrt(n - 2.0)) < 1e-3);
        REQUIRE(std::abs(schw::riemannian_distance(dim, 1.0 + w) /
                             schw::critical_delta(dim, 1.0 + w) -
                         1.0 / (n - 2.0)) < 1e-3);
        REQUIRE(std::abs(schw::riemannian_distance(dim, 1.0 + w) /
                             schw::induced_distance(dim, 1.0 + w) -
                         1.0) < 1e-3);
    }
}

TEST_CASE("far-field laws") {
    for (int n = 3; n <= 8; ++n) {
        const Dimension dim(n);
        for (double r : {1e3, 1e6}) {
            const double tol = 10.0 / r;
            REQUIRE(std::abs(schw::riemannian_distance(dim, r) / r - 1.0) < tol);
            REQUIRE(std::abs(schw::critical_delta(dim, r) / r - 1.0) < tol);
            REQUIRE(std::abs(n * schw::induced_distance(dim, r) / r - 1.0) < tol);
        }
    }
}

TEST_CASE("monotonicity and ordering") {
    for (int n = 3; n <= 8; ++n) {
        const Dimension dim(n);
        double prev_d = 0.0, prev_s = 0.0;
        for (int k = 0; k < 150; ++k) {
            const double r = 1.01 * std::pow(100.0 / 1.01, k / 149.0);
            const double d = schw::riemannian_distance(dim, r);
            const double s = schw::induced_distance(dim, r);
            REQUIRE(d > prev_d);
            REQUIRE(s > prev_s);
            REQUIRE(s <= d);
            prev_d = d;
            prev_s = s;
        }
    }
    // d decreases with the dimension.
    for (int k = 0; k < 40; ++k) {
        const double r = 1.01 * std::pow(100.0 / 1.01, k / 39.0);
        double prev = std::numeric_limits<double>::infinity();
        for (int n = 3; n <= 8; ++n) {
            const double d = schw::riemannian_distance(Dimension(n), r);
            REQUIRE(d < prev);
            prev = d;
        }
    }
}

TEST_CASE("distance dispatcher and domain errors") {
    const Dimension n(3);
    REQUIRE(schw::distance(DistanceKind::Riemannian, n, 2.0) ==
            schw::riemannian_distance(n, 2.0));
    REQUIRE(schw::distance(DistanceKind::CriticalDelta, n, 2.0) ==
            schw::critical_delta(n, 2.0));
    REQUIRE(schw::distance(DistanceKind::InducedS, n, 2.0) ==
            schw::induced_distance(n, 2.0));
    for (double r : {1.0, 0.2}) {
        REQUIRE_THROWS_AS(schw::riemannian_distance(n, r), std::domain_error);
        REQUIRE_THROWS_AS(schw::critical_delta(n, r), std::domain_error);
        REQUIRE_THROWS_AS(schw::induced_distance(n, r), std::domain_error);
        REQUIRE_THROWS_AS(schw::delta_ode_residual(n, r), std::domain_error);
    }
}
