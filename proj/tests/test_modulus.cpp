#include <doctest.h>

#include <cmath>
#include <random>

#include "rotlab/modulus.hpp"

using namespace rotlab;

TEST_CASE("dyadic density construction and evaluation") {
    const AdmissibleDensity d = AdmissibleDensity::for_z0(std::ldexp(1.0, -10));
    CHECK(d.n == 11);
    CHECK(std::ldexp(d.z0, d.n - 1) >= 1.0);
    CHECK(std::ldexp(d.z0, d.n - 2) < 1.0);

    CHECK(d.value({5.0, 0.0}) == 0.0);
    CHECK(d.value({-0.1, 3.9}) == 0.0);
    CHECK(d.value({d.z0 / 2.0, 0.0}) == doctest::Approx(2.0 / d.z0));

    // interior point: value from the smallest containing ball
    const Complex z{0.3, 0.0};
    int j_min = 0;
    for (int j = 1; j <= d.n; ++j) {
        const double rj = d.ball_radius(j);
        if (std::abs(z - Complex{rj, 0.0}) < rj) {
            j_min = j;
            break;
        }
    }
    REQUIRE(j_min > 0);
    CHECK(d.value(z) == doctest::Approx(2.0 / d.ball_radius(j_min)));
}

TEST_CASE("rho0 L2 mass: quadrature against the per-ball values") {
    const AdmissibleDensity d = AdmissibleDensity::for_z0(std::ldexp(1.0, -10));
    const double analytic = d.l2_integral_analytic();
    const double quad = d.l2_integral_quadrature();
    CHECK(std::abs(quad - analytic) / analytic < 1e-3);
    CHECK(quad <= 4.0 * M_PI * d.n * (1.0 + 1e-3));  // 44 pi at z0 = 2^-10
}

TEST_CASE("admissibility on simple and random paths") {
    const double z0 = std::ldexp(1.0, -10);
    const AdmissibleDensity d = AdmissibleDensity::for_z0(z0);

    CHECK(check_admissibility(d, {{z0, 0.0}, {0.0, 0.0}}) >= 1.0);
    // vertical escape then across to F
    CHECK(check_admissibility(
              d, {{0.5, 0.0}, {0.5, 5.0}, {-1.0, 5.0}, {-1.0, 0.0}}) >= 1.0);
    CHECK_THROWS_AS(check_admissibility(d, {{2.0, 0.0}, {0.0, 0.0}}), std::domain_error);
    CHECK_THROWS_AS(check_admissibility(d, {{z0, 0.0}, {1.0, 1.0}}), std::domain_error);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double min_integral = 1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Complex> poly;
        poly.emplace_back(std::exp(std::log(z0) * u01(rng)), 0.0);
        const int waypoints = 2 + static_cast<int>(4.0 * u01(rng));
        for (int w = 0; w < waypoints; ++w) {
            poly.emplace_back(-5.0 + 10.0 * u01(rng), -5.0 + 10.0 * u01(rng));
        }
        poly.emplace_back(-4.0 * u01(rng), 0.0);
        min_integral = std::min(min_integral, check_admissibility(d, poly));
    }
    CHECK(min_integral >= 1.0 - 1e-9);
}

TEST_CASE("weighted modulus upper bound") {
    // identity: the K part is (e^p - 1)/p times the support area, the rho0
    // part is exactly the per-annulus sum
    const double z0 = std::ldexp(1.0, -10);
    const AdmissibleDensity d = AdmissibleDensity::for_z0(z0);
    const double upper = weighted_modulus_upper(MapSpec::identity(), z0, 1.0);
    const double support_area = M_PI;  // B_11 has radius 1 at z0 = 2^-10
    const double expected = (std::exp(1.0) - 1.0) * support_area + d.log_weighted_l2_analytic();
    CHECK(upper == doctest::Approx(expected).epsilon(1e-6));

    CHECK_THROWS_AS(weighted_modulus_upper(MapSpec::spiral(0.5, 0.6), z0, 1.0), NotIntegrable);

    // growth in log^2(1/z0) for the spiral family
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int count = 0;
    for (int k = 5; k <= 14; ++k) {
        const double z = std::ldexp(1.0, -k);
        const double L = std::log(1.0 / z);
        const double x = L * L;
        const double y = weighted_modulus_upper(spec, z, 1.0);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / count;
    double ss_res = 0.0, ss_tot = 0.0;
    for (int k = 5; k <= 14; ++k) {
        const double z = std::ldexp(1.0, -k);
        const double L = std::log(1.0 / z);
        const double y = weighted_modulus_upper(spec, z, 1.0);
        ss_res += std::pow(y - intercept - slope * L * L, 2);
        ss_tot += std::pow(y - sy / count, 2);
    }
    CHECK(slope > 0.0);
    CHECK(1.0 - ss_res / ss_tot > 0.99);
}

TEST_CASE("image tracing") {
    const double z0 = std::ldexp(1.0, -8);

    // identity on E: the segment itself
    const std::vector<Complex> idE = trace_E_image(MapSpec::identity(), z0);
    CHECK(std::abs(idE.front() - Complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(idE.back() - Complex{z0, 0.0}) < 1e-12);
    for (const Complex& w : idE) {
        CHECK(std::abs(w.imag()) < 1e-12);
    }

    // spiral on E: total sweep c2 log^2(1/z0)
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    const std::vector<Complex> fE = trace_E_image(spec, z0);
    const double sweep = std::abs(continue_argument(fE).total_winding());
    const double L = std::log(1.0 / z0);
    CHECK(sweep == doctest::Approx(0.3 * L * L).epsilon(1e-6));
    for (std::size_t k = 1; k < fE.size(); ++k) {
        CHECK(std::abs(principal_arg(fE[k] / fE[k - 1])) < M_PI / 8.0);
    }

    // spiral on truncated F: identity on the exterior part
    const std::vector<Complex> fF = trace_F_image(spec, z0);
    CHECK(std::abs(fF.front() - Complex{-8.0, 0.0}) < 1e-12);
}

TEST_CASE("ray crossings and the lower bound") {
    const double z0 = std::ldexp(1.0, -8);

    // identity: no alternating pairs anywhere off the real axis
    {
        const std::vector<Complex> fE = trace_E_image(MapSpec::identity(), z0);
        const std::vector<Complex> fF = trace_F_image(MapSpec::identity(), z0);
        std::vector<CrossingRecord> records;
        for (int t = 0; t < 16; ++t) {
            records.push_back(ray_crossings(fE, fF, 2.0 * M_PI * t / 16.0));
        }
        for (const CrossingRecord& rec : records) {
            CHECK(rec.pairs.empty());
        }
        CHECK(lower_bound_modulus(records) == 0.0);
    }

    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    const std::vector<Complex> fE = trace_E_image(spec, z0);
    const std::vector<Complex> fF = trace_F_image(spec, z0);
    const double L = std::log(1.0 / z0);
    const double W = 0.3 * L * L;
    const int floor_count = static_cast<int>(std::floor(W / (2.0 * M_PI))) - 1;
    const double h_z0 = std::exp(-0.2 * L * L);
    std::vector<CrossingRecord> records;
    for (int t = 0; t < 16; ++t) {
        const CrossingRecord rec = ray_crossings(fE, fF, 2.0 * M_PI * t / 16.0);
        CHECK(static_cast<int>(rec.pairs.size()) >= floor_count);
        for (const auto& [x, y] : rec.pairs) {
            CHECK(x > 0.0);
            CHECK(x < y);
            CHECK(y < 1.0);
        }
        if (t == 0) {
            for (const auto& [x, y] : rec.pairs) {
                CHECK(x >= h_z0 * (1.0 - 1e-9));
            }
        }
        records.push_back(rec);
    }
    const double lower = lower_bound_modulus(records);
    const double upper = weighted_modulus_upper(spec, z0, 1.0);
    CHECK(lower > 0.0);
    CHECK(lower <= upper);

    // chain consistency with the crossing count and the smallest radius
    const int n_z0 = std::max(0, crossing_count(spec, z0));
    double x1 = 1.0;
    for (const CrossingRecord& rec : records) {
        for (const auto& pr : rec.pairs) {
            x1 = std::min(x1, pr.first);
        }
    }
    CHECK(lower >= 2.0 * M_PI * n_z0 * n_z0 / std::log(1.0 / x1) * (1.0 - 1e-9));

    CHECK_THROWS_AS(lower_bound_modulus(std::vector<CrossingRecord>(4)), std::domain_error);
}

TEST_CASE("moduli sanity inequality across the z0 sweep") {
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    for (int k = 5; k <= 12; ++k) {
        const double z0 = std::ldexp(1.0, -k);
        const std::vector<Complex> fE = trace_E_image(spec, z0);
        const std::vector<Complex> fF = trace_F_image(spec, z0);
        std::vector<CrossingRecord> records;
        for (int t = 0; t < 16; ++t) {
            records.push_back(ray_crossings(fE, fF, 2.0 * M_PI * t / 16.0));
        }
        CHECK(lower_bound_modulus(records) <= weighted_modulus_upper(spec, z0, 1.0));
    }
}

TEST_CASE("crossing count from the continued argument") {
    CHECK(crossing_count(MapSpec::spiral(0.1, 2.0 * M_PI), std::exp(-4.0)) == 15);
    CHECK(crossing_count(MapSpec::identity(), 0.01) == -1);
    CHECK(crossing_count(MapSpec::rotation_only(1.0), std::exp(-9.0)) == 3);
}

TEST_CASE("deduced bound shape: n(z0) below a fitted multiple of log^2(1/z0)") {
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    double max_ratio = 0.0;
    for (int k = 5; k <= 14; ++k) {
        const double z0 = std::ldexp(1.0, -k);
        const double L = std::log(1.0 / z0);
        const int n = std::max(0, crossing_count(spec, z0));
        max_ratio = std::max(max_ratio, n / (L * L));
    }
    CHECK(max_ratio < 1.0);       // finite fitted constant exists
    CHECK(max_ratio > 0.0);
}

TEST_CASE("partition-sum lemma: closed form and smoothing oracle") {
    CHECK(lemma_min_closed(1.0 / std::exp(1.0), 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lemma_min_closed(0.01, 3) == doctest::Approx(9.0 / std::log(100.0)).epsilon(1e-12));
    CHECK(lemma_min_closed(0.1, 5) == doctest::Approx(25.0 / std::log(10.0)).epsilon(1e-12));

    for (double a : {0.5, 0.1, 0.01}) {
        for (int n = 2; n <= 6; ++n) {
            const LemmaMinimum min = lemma_min_oracle(a, n);
            CHECK(std::abs(min.value - lemma_min_closed(a, n)) / lemma_min_closed(a, n) < 1e-9);
            for (int i = 0; i <= n; ++i) {
                CHECK(min.partition[i] ==
                      doctest::Approx(std::pow(a, static_cast<double>(n - i) / n)).epsilon(1e-9));
            }
        }
    }

    const LemmaMinimum single = lemma_min_oracle(0.3, 1);
    CHECK(single.value == doctest::Approx(1.0 / std::log(1.0 / 0.3)).epsilon(1e-12));

    // any perturbed partition evaluates at or above the closed form
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double a = 0.05;
    const int n = 4;
    const double closed = lemma_min_closed(a, n);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> logs(n - 1);
        for (double& v : logs) v = std::log(a) * u01(rng);
        std::sort(logs.begin(), logs.end());
        std::vector<double> part = {a};
        for (double v : logs) part.push_back(std::exp(v));
        part.push_back(1.0);
        bool strict = true;
        for (std::size_t i = 1; i < part.size(); ++i) strict = strict && part[i] > part[i - 1];
        if (!strict) continue;
        CHECK(lemma_partition_sum(part) >= closed * (1.0 - 1e-12));
    }
}
