#include <doctest.h>

#include <cmath>

#include "rotlab/integrability.hpp"

using namespace rotlab;

TEST_CASE("verdict names") {
    CHECK(verdict_name(NumericVerdict::Converged) == "converged");
    CHECK(verdict_name(NumericVerdict::Diverged) == "diverged");
    CHECK(verdict_name(NumericVerdict::Inconclusive) == "inconclusive");
}

TEST_CASE("identity integrates to e^p * pi / 4") {
    for (double p : {0.5, 1.0, 2.0}) {
        const IntegrabilityVerdict v = radial_exp_integral(MapSpec::identity(), p);
        CHECK(v.analytic);
        CHECK(v.numeric == NumericVerdict::Converged);
        REQUIRE(v.value.has_value());
        CHECK(*v.value == doctest::Approx(std::exp(p) * M_PI / 4.0).epsilon(1e-3));
    }
}

TEST_CASE("spiral family: convergent and divergent parameter points") {
    // c1 + c2^2 / c1 = 0.8 < 1: summable
    const IntegrabilityVerdict good = radial_exp_integral(MapSpec::spiral(0.4, 0.4), 1.0);
    CHECK(good.analytic);
    CHECK(good.numeric == NumericVerdict::Converged);
    REQUIRE(good.value.has_value());
    CHECK(*good.value > 0.0);
    CHECK(std::isfinite(*good.value));

    // c1 + c2^2 / c1 = 1.22 > 1: the shell contributions grow
    const IntegrabilityVerdict bad = radial_exp_integral(MapSpec::spiral(0.5, 0.6), 1.0);
    CHECK_FALSE(bad.analytic);
    CHECK(bad.numeric == NumericVerdict::Diverged);
    CHECK_FALSE(bad.value.has_value());
}

TEST_CASE("shell trend follows the sign of p * beta - 2") {
    // K ~ beta log(1/r) with beta = 2 (c1 + c2^2 / c1), so the per-shell log
    // contribution changes by -(2 - p beta) log 2 asymptotically
    const auto tail_trend = [](const IntegrabilityVerdict& v) {
        const std::size_t m = v.shells.size();
        REQUIRE(m >= 10);
        return v.shells[m - 1].second - v.shells[m - 6].second;
    };

    const IntegrabilityVerdict conv = radial_exp_integral(MapSpec::spiral(0.4, 0.4), 1.0);
    CHECK(tail_trend(conv) < 0.0);
    CHECK(tail_trend(conv) ==
          doctest::Approx(-(2.0 - 1.6) * 5.0 * std::log(2.0)).epsilon(0.05));

    const IntegrabilityVerdict div = radial_exp_integral(MapSpec::spiral(0.5, 0.6), 1.0);
    CHECK(tail_trend(div) > 0.0);
}

TEST_CASE("rotation-only family is monotone in c2") {
    CHECK(radial_exp_integral(MapSpec::rotation_only(0.5), 1.0).numeric ==
          NumericVerdict::Converged);
    CHECK(radial_exp_integral(MapSpec::rotation_only(1.2), 1.0).numeric ==
          NumericVerdict::Diverged);

    double prev = 0.0;
    for (double c2 : {0.2, 0.4, 0.6, 0.8}) {
        const IntegrabilityVerdict v = radial_exp_integral(MapSpec::rotation_only(c2), 1.0);
        REQUIRE(v.value.has_value());
        CHECK(*v.value > prev);
        prev = *v.value;
    }
}

TEST_CASE("strongly divergent parameters never overflow") {
    const IntegrabilityVerdict v = radial_exp_integral(MapSpec::spiral(2.0, 3.0), 4.0);
    CHECK(v.numeric == NumericVerdict::Diverged);
    for (const auto& [r, log_contrib] : v.shells) {
        CHECK(std::isfinite(log_contrib));
        CHECK(r > 0.0);
    }
}

TEST_CASE("grid classification agrees with the analytic predicate") {
    std::vector<MapSpec> grid;
    for (double margin : {0.5, 0.7, 0.85, 1.15, 1.3, 1.5}) {
        grid.push_back(MapSpec::spiral(0.4, std::sqrt(0.4 * (margin - 0.4))));
        grid.push_back(MapSpec::rotation_only(std::sqrt(margin * 8.0 / 9.0)));
    }
    const GridAgreementReport rep = classify_grid(grid, 1.0);
    REQUIRE(rep.points.size() == grid.size());
    CHECK(rep.disagreements == 0);
    CHECK(rep.inconclusive == 0);
    CHECK(rep.all_agree());
    for (const GridPointResult& pt : rep.points) {
        CHECK(pt.agree);
        CHECK_FALSE(pt.inconclusive);
        CHECK(pt.analytic == (pt.numeric == NumericVerdict::Converged));
    }
}
