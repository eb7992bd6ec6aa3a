#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "schw/analysis.hpp"
#include "testutil.hpp"

using schw::Dimension;
using testutil::rel_err;

TEST_CASE("ratio of d to delta at the branch point, n=3") {
    // d(4/3)/delta(4/3) = (9/16)(2/3 + ln3/2)
    const double expected = 9.0 / 16.0 * (2.0 / 3.0 + 0.5 * std::log(3.0));
    REQUIRE(rel_err(schw::distance_ratio(Dimension(3), 4.0 / 3.0), expected) < 1e-10);
    REQUIRE(rel_err(expected, 0.6839847061879059) < 1e-14);
}

TEST_CASE("ratio infimum scan") {
    const auto scan3 = schw::ratio_infimum(Dimension(3));
    // The scan localises the minimum at the branch kink (reported finding).
    REQUIRE(std::abs(scan3.argmin_r - 4.0 / 3.0) < 1e-4);
    REQUIRE(rel_err(scan3.min_ratio, 0.6839847061879059) < 1e-8);
    REQUIRE(scan3.refined);
    REQUIRE(scan3.bracket_lo <= scan3.argmin_r);
    REQUIRE(scan3.bracket_hi >= scan3.argmin_r);
    REQUIRE(scan3.grid_size >= 2000);

    for (int n = 3; n <= 8; ++n) {
        const auto scan = schw::ratio_infimum(Dimension(n));
        REQUIRE(scan.min_ratio > 0.0);
        REQUIRE(scan.min_ratio <= std::min(1.0 / (n - 2.0), 1.0) + 1e-6);
    }

    // n=4: closed forms give ratio(R) = 3/8 exactly; the scan cannot sit above it.
    const auto scan4 = schw::ratio_infimum(Dimension(4));
    REQUIRE(scan4.min_ratio <= 0.375 + 1e-9);
    REQUIRE(scan4.min_ratio > 0.37);
}

TEST_CASE("ratio infimum is stable under grid doubling") {
    for (int n : {3, 5}) {
        const auto coarse = schw::ratio_infimum(Dimension(n), 2000);
        const auto fine = schw::ratio_infimum(Dimension(n), 4000);
        REQUIRE(std::abs(coarse.min_ratio - fine.min_ratio) <= 1e-8);
    }
}

TEST_CASE("kappa lower bound") {
    const double kappa3 = schw::kappa_lower_bound(Dimension(3));
    REQUIRE(std::abs(kappa3 - 0.117) < 1e-3);
    const double expected = std::pow(9.0 / 32.0 * (2.0 / 3.0 + 0.5 * std::log(3.0)), 2);
    REQUIRE(rel_err(kappa3, expected) < 1e-7);
    for (int n = 4; n <= 6; ++n) {
        const double k = schw::kappa_lower_bound(Dimension(n));
        REQUIRE(k > 0.0);
        REQUIRE(k < 0.25 * (n - 2) * (n - 2)); // strictly below the delta constant
    }
}

TEST_CASE("limit suite passes for n = 3..8") {
    for (int n = 3; n <= 8; ++n) {
        const auto rep = schw::limit_suite(Dimension(n));
        for (const auto& c : rep.checks) {
            INFO("n=" << n << " check " << c.name << " computed " << c.computed);
            REQUIRE(c.pass);
        }
    }
}

TEST_CASE("sharpness table") {
    const std::vector<double> eps{0.9, 0.7, 0.6, 0.55, 0.52};
    const auto rows = schw::sharpness_rows(Dimension(3), eps);
    REQUIRE(rows.size() == eps.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].gap_rel <= 1e-6);
        REQUIRE(rows[i].quotient_quadrature > 0.25);
        // exact quotient for this family is eps^2 (n-2)^2
        REQUIRE(rel_err(rows[i].quotient_quadrature, eps[i] * eps[i]) < 1e-6);
        if (i > 0) {
            REQUIRE(rows[i].quotient_quadrature < rows[i - 1].quotient_quadrature);
            REQUIRE(rows[i].D_eps > rows[i - 1].D_eps);
        }
    }
    REQUIRE(rows.back().D_eps / rows.front().D_eps > 10.0);

    const auto rep = schw::sharpness_table(Dimension(3), eps);
    REQUIRE(rep.all_pass());
    REQUIRE_THROWS_AS(schw::sharpness_table(Dimension(3), {0.9, 0.5}), std::invalid_argument);
}

TEST_CASE("hardy property battery") {
    for (int nv : {3, 4, 5}) {
        const Dimension n(nv);
        const double bound = 0.25 * (nv - 2) * (nv - 2);
        const double kappa = schw::kappa_lower_bound(n);
        const auto profiles = schw::random_admissible_profiles(n, 12, 7u);
        REQUIRE(profiles.size() == 12);
        for (const auto& psi : profiles) {
            REQUIRE(schw::derivative_consistency(psi, {1.2, 2.0, 5.0, 20.0}) < 1e-6);
            const auto qd = schw::hardy_quotient(n, psi, schw::DistanceKind::CriticalDelta);
            REQUIRE(qd.quotient >= bound - 1e-8);
            const auto qr = schw::hardy_quotient(n, psi, schw::DistanceKind::Riemannian);
            REQUIRE(qr.quotient >= kappa - 1e-8);
        }
    }
}

TEST_CASE("verification bundle all green for n = 3") {
    const auto rep = schw::verify_suite(Dimension(3), /*battery_count=*/9);
    for (const auto& c : rep.checks) {
        INFO("check " << c.name << " computed " << c.computed);
        REQUIRE(c.pass);
    }
    REQUIRE(rep.all_pass());
    REQUIRE(rep.n == 3);
}
