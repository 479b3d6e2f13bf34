#include <doctest.h>

#include <cmath>

#include "rotlab/map_family.hpp"
#include "rotlab/rotation.hpp"

using namespace rotlab;

namespace {
const Complex kOrigin{0.0, 0.0};
}

TEST_CASE("winding along a ray: identity and closed-form families") {
    const MapFn ident = evaluator(MapSpec::identity());
    CHECK(winding_along_ray(ident, kOrigin, 0.0, 1e-4) == doctest::Approx(0.0));
    CHECK(winding_along_ray(ident, {0.2, 0.1}, 1.3, 1e-4) == doctest::Approx(0.0));

    const MapFn spiral = evaluator(MapSpec::spiral(0.2, 0.3));
    CHECK(winding_along_ray(spiral, kOrigin, 0.0, std::exp(-3.0)) ==
          doctest::Approx(2.7).epsilon(1e-10));

    const MapFn rot = evaluator(MapSpec::rotation_only(0.4));
    CHECK(winding_along_ray(rot, kOrigin, 0.0, std::exp(-4.0)) ==
          doctest::Approx(0.4 * 8.0).epsilon(1e-10));
}

TEST_CASE("winding is monotone as the inner radius shrinks") {
    for (const MapSpec& spec : {MapSpec::spiral(0.2, 0.3), MapSpec::rotation_only(0.4),
                                MapSpec::generalized_spiral(1.0, 0.5, 0.5)}) {
        const MapFn f = evaluator(spec);
        double prev = -1.0;
        for (int k = 1; k <= 12; ++k) {
            const double w = winding_along_ray(f, kOrigin, 0.0, std::exp(-static_cast<double>(k)));
            CHECK(w >= prev);
            prev = w;
        }
    }
}

TEST_CASE("sup over directions matches the radial value for centered spirals") {
    const MapFn f = evaluator(MapSpec::spiral(0.2, 0.3));
    const double radial = winding_along_ray(f, kOrigin, 0.0, 1e-3);
    CHECK(sup_winding(f, kOrigin, 1e-3, 16) == doctest::Approx(radial).epsilon(1e-10));
    CHECK(sup_winding(evaluator(MapSpec::identity()), kOrigin, 1e-3, 8) == doctest::Approx(0.0));
}

TEST_CASE("off-center winding is stable under refinement") {
    const MapFn f = evaluator(MapSpec::spiral(0.2, 0.3));
    const Complex z0{0.25, 0.0};
    const double coarse = sup_winding(f, z0, 1e-3, 64);
    const double fine = sup_winding(f, z0, 1e-3, 128);
    CHECK(fine >= coarse - 1e-12);
    const double w64 = winding_along_ray(f, z0, 0.4, 1e-3, 64);
    const double w128 = winding_along_ray(f, z0, 0.4, 1e-3, 128);
    CHECK(std::abs(w64 - w128) < 1e-6);
}

TEST_CASE("gamma estimate recovers c2 for spirals and 0 for the identity") {
    const std::vector<double> radii = exp_radii(2.0, 14.0, 7);
    CHECK(gamma_estimate(evaluator(MapSpec::spiral(0.25, 0.35)), kOrigin, radii) ==
          doctest::Approx(0.35).epsilon(1e-6));
    CHECK(gamma_estimate(evaluator(MapSpec::identity()), kOrigin, radii) ==
          doctest::Approx(0.0));
}

TEST_CASE("rotation-only gamma decays like log^{-1/2}") {
    const MapFn f = evaluator(MapSpec::rotation_only(0.7));
    const std::vector<double> radii = exp_radii(6.0, 30.0, 9);
    const double est = gamma_estimate(f, kOrigin, radii, 4);
    // max over the smallest-quartile radii (e^-30, e^-27) of c2 L^{3/2} / L^2
    CHECK(est == doctest::Approx(0.7 / std::sqrt(27.0)).epsilon(1e-6));
    const RotationReport rep = measure_rotation(f, kOrigin, radii, 4, 1.0);
    CHECK(rep.fitted_exponent < 2.0 - 0.02);  // flagged as sub-quadratic growth
}

TEST_CASE("rotation is invariant under normalization about a point") {
    const std::vector<double> radii = exp_radii(2.0, 10.0, 5);
    for (const MapSpec& spec : {MapSpec::spiral(0.2, 0.3), MapSpec::rotation_only(0.4)}) {
        const MapFn f = evaluator(spec);
        for (const Complex z0 : {Complex{0.0, 0.0}, Complex{0.1, 0.1}}) {
            const double direct = gamma_estimate(f, z0, radii, 8);
            const double normalized = gamma_estimate(normalize_about(f, z0), kOrigin, radii, 8);
            CHECK(std::abs(direct - normalized) < 1e-9);
        }
    }
}

TEST_CASE("empirical constant: attained value and admissible ceiling") {
    const std::vector<double> radii = exp_radii(4.0, 14.0, 6);
    const double p = 1.0;

    // c2 = (1 - eps) / (2p) realizes rotation (1 - eps) / 2.
    const double eps = 0.1;
    const double c2 = (1.0 - eps) / (2.0 * p);
    const double c1 = 0.5;  // keeps c1 + c2^2/c1 < 1/p
    REQUIRE(integrability_predicate(MapSpec::spiral(c1, c2), p));
    const double c_emp =
        empirical_rotation_constant(evaluator(MapSpec::spiral(c1, c2)), p, radii);
    CHECK(c_emp == doctest::Approx((1.0 - eps) / 2.0).epsilon(1e-9));
    CHECK(c_emp < 0.5);

    CHECK(empirical_rotation_constant(evaluator(MapSpec::identity()), p, radii) ==
          doctest::Approx(0.0));

    // admissible grid: p * gamma never exceeds the sharpness ceiling 1/2
    for (double cc1 : {0.1, 0.25, 0.4, 0.5}) {
        for (double frac : {0.3, 0.7, 0.95}) {
            const double cc2 = frac * std::sqrt(cc1 * (1.0 / p - cc1));
            CHECK(empirical_rotation_constant(
                      evaluator(MapSpec::spiral(cc1, cc2)), p, radii) < 0.5 + 1e-9);
        }
    }
}

TEST_CASE("fitted winding exponents per family") {
    const std::vector<double> radii = exp_radii(4.0, 14.0, 11);
    const auto fit_for = [&](const MapSpec& spec) {
        return measure_rotation(evaluator(spec), kOrigin, radii, 4, 1.0).fitted_exponent;
    };
    CHECK(fit_for(MapSpec::spiral(0.2, 0.3)) == doctest::Approx(2.0).epsilon(0.01));
    CHECK(fit_for(MapSpec::rotation_only(0.4)) == doctest::Approx(1.5).epsilon(0.01));
    CHECK(fit_for(MapSpec::generalized_spiral(1.0, 0.5, 0.5)) ==
          doctest::Approx(1.75).epsilon(0.02));
}

TEST_CASE("winding outgrows the stretched modulus for rotation-only maps") {
    // |h0(r)| = r exactly, yet winding / |log|h0(r)|| diverges.
    const MapSpec spec = MapSpec::rotation_only(0.4);
    const MapFn f = evaluator(spec);
    CHECK(std::abs(evaluate(spec, {1e-7, 0.0})) == doctest::Approx(1e-7).epsilon(1e-12));
    const auto ratio_at = [&](double k) {
        return winding_along_ray(f, kOrigin, 0.0, std::exp(-k)) / k;
    };
    CHECK(ratio_at(300.0) > 5.0 * ratio_at(10.0));
}

TEST_CASE("report assembly is consistent") {
    const RotationReport rep = measure_rotation(
        evaluator(MapSpec::spiral(0.2, 0.3)), kOrigin, exp_radii(2.0, 10.0, 5), 8, 1.0);
    REQUIRE(rep.radii.size() == 5);
    for (std::size_t i = 1; i < rep.radii.size(); ++i) {
        CHECK(rep.radii[i] < rep.radii[i - 1]);
        CHECK(rep.sup_winding[i] >= rep.sup_winding[i - 1]);
    }
    for (const auto& row : rep.winding) {
        for (double w : row) {
            CHECK(w >= 0.0);
        }
    }
    CHECK(rep.gamma_estimate == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(rep.c_emp == doctest::Approx(0.3).epsilon(1e-9));
}
