#include "rotlab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rotlab/integrability.hpp"
#include "rotlab/map_family.hpp"
#include "rotlab/modulus.hpp"
#include "rotlab/plane.hpp"
#include "rotlab/rotation.hpp"

namespace rotlab {

namespace {

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
    }
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = f.intercept + f.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

CriterionResult spiral_rotation_exactness() {
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    const MapFn f = evaluator(spec);
    double worst = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double w = winding_along_ray(f, Complex{0, 0}, 0.0, std::exp(-k));
        worst = std::max(worst, std::abs(w - 0.3 * k * k));
    }
    return {1, "spiral rotation exactness (winding = c2 log^2(1/r))",
            worst <= 1e-8, "max abs error " + fmt(worst)};
}

CriterionResult sharpness_ceiling() {
    const double p = 1.0;
    const std::vector<double> radii = exp_radii(4.0, 16.0, 7);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double c1 = 0.05 + 0.45 * i / 9.0;
        const double c2_max = std::sqrt(c1 * (1.0 / p - c1));
        for (double frac : {0.2, 0.4, 0.6, 0.8, 0.96}) {
            const double c2 = frac * c2_max;
            const MapSpec spec = MapSpec::spiral(c1, c2, p);
            const double gamma = gamma_estimate(evaluator(spec), Complex{0, 0}, radii, 8);
            worst = std::max(worst, p * gamma);
        }
    }
    const bool pass = worst <= 0.5 + 1e-9 && worst >= 0.5 - 0.02;
    return {2, "sharpness ceiling (max p*gamma over admissible grid)",
            pass, "max p*gamma " + fmt(worst) + " (ceiling 0.5)"};
}

CriterionResult distortion_asymptotics() {
    const double r = 1e-8;
    const double L = std::log(1.0 / r);
    double worst = 0.0;
    const std::vector<std::pair<double, double>> spiral_sets = {
        {0.2, 0.3}, {0.1, 0.1}, {0.3, 0.2}, {0.5, 0.5}, {0.4, 0.1},
        {0.25, 0.35}, {0.15, 0.2}, {0.6, 0.3}, {0.35, 0.45}, {0.45, 0.25}};
    for (const auto& [c1, c2] : spiral_sets) {
        const MapSpec spec = MapSpec::spiral(c1, c2);
        const double coeff = asymptotic_distortion_coefficient(spec);
        const double ratio = distortion_radial(spec, r) / L;
        worst = std::max(worst, std::abs(ratio - coeff) / coeff);
    }
    for (double c2 : {1.1, 1.3, 1.6, 2.0}) {
        const MapSpec spec = MapSpec::rotation_only(c2);
        const double coeff = asymptotic_distortion_coefficient(spec);
        const double ratio = distortion_radial(spec, r) / L;
        worst = std::max(worst, std::abs(ratio - coeff) / coeff);
    }
    return {3, "distortion asymptotics K(r)/log(1/r) vs analytic coefficient",
            worst <= 0.05, "max relative deviation " + fmt(worst)};
}

CriterionResult derivative_oracle(std::mt19937_64& rng) {
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    const MapFn f = evaluator(spec);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double l_lo = std::log(1e-6), l_hi = std::log(0.49);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double r = std::exp(l_lo + (l_hi - l_lo) * u01(rng));
        const double theta = 2.0 * M_PI * u01(rng);
        const Complex z = std::polar(r, theta);
        const WirtingerPair closed = wirtinger_closed(spec, z);
        const WirtingerPair fd = wirtinger_fd(f, z, 1e-5 * r);
        worst = std::max(worst, std::abs(closed.fz - fd.fz) / std::abs(closed.fz));
        worst = std::max(worst, std::abs(closed.fzbar - fd.fzbar) / std::abs(closed.fzbar));
    }
    return {4, "closed-form derivatives vs finite differences (1e3 points)",
            worst <= 1e-6, "max relative deviation " + fmt(worst)};
}

CriterionResult lemma_minimum(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst_rel = 0.0;
    bool perturbations_ok = true;
    for (double a : {0.5, 0.1, 0.01}) {
        for (int n = 2; n <= 6; ++n) {
            const double closed = lemma_min_closed(a, n);
            const LemmaMinimum oracle = lemma_min_oracle(a, n);
            worst_rel = std::max(worst_rel, std::abs(oracle.value - closed) / closed);
            const double la = std::log(a);
            for (int trial = 0; trial < 1000; ++trial) {
                std::vector<double> interior(n - 1);
                for (double& v : interior) {
                    v = la * u01(rng);
                }
                std::sort(interior.begin(), interior.end());
                std::vector<double> part = {a};
                for (double v : interior) {
                    part.push_back(std::exp(v));
                }
                part.push_back(1.0);
                bool strict = true;
                for (std::size_t i = 1; i < part.size(); ++i) {
                    strict = strict && part[i] > part[i - 1];
                }
                if (!strict) {
                    --trial;  // degenerate draw, redo
                    continue;
                }
                if (lemma_partition_sum(part) < closed * (1.0 - 1e-12)) {
                    perturbations_ok = false;
                }
            }
        }
    }
    const bool pass = worst_rel <= 1e-9 && perturbations_ok;
    return {5, "partition-sum minimum: smoothing oracle vs n^2/log(1/a)",
            pass, "max relative gap " + fmt(worst_rel) +
                      (perturbations_ok ? ", all perturbed partitions above minimum"
                                        : ", PERTURBED PARTITION BELOW MINIMUM")};
}

CriterionResult admissibility(std::mt19937_64& rng) {
    const double z0 = std::ldexp(1.0, -10);
    const AdmissibleDensity d = AdmissibleDensity::for_z0(z0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double min_integral = 1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Complex> poly;
        const double start = std::exp(std::log(z0) * u01(rng));  // log-uniform on [z0, 1]
        poly.emplace_back(start, 0.0);
        const int waypoints = 2 + static_cast<int>(4.0 * u01(rng));
        for (int w = 0; w < waypoints; ++w) {
            poly.emplace_back(-5.0 + 10.0 * u01(rng), -5.0 + 10.0 * u01(rng));
        }
        poly.emplace_back(-4.0 * u01(rng), 0.0);
        min_integral = std::min(min_integral, check_admissibility(d, poly));
    }
    const double quad = d.l2_integral_quadrature();
    const double analytic = d.l2_integral_analytic();
    const double quad_rel = std::abs(quad - analytic) / analytic;
    const bool pass = min_integral >= 1.0 - 1e-9 && quad_rel <= 1e-3 &&
                      quad <= 4.0 * M_PI * d.n * (1.0 + 1e-3) && d.n == 11;
    return {6, "rho0 admissibility (1e3 random E-to-F polylines) and L2 mass",
            pass, "min integral " + fmt(min_integral) + ", L2 quadrature " + fmt(quad) +
                      " vs analytic " + fmt(analytic) + " (bound " + fmt(4.0 * M_PI * d.n) + ")"};
}

CriterionResult moduli_sanity() {
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    const double p = 1.0;
    bool ordered = true;
    std::string detail;
    for (int k = 5; k <= 12; ++k) {
        const double z0 = std::ldexp(1.0, -k);
        const double upper = weighted_modulus_upper(spec, z0, p);
        const std::vector<Complex> fE = trace_E_image(spec, z0);
        const std::vector<Complex> fF = trace_F_image(spec, z0);
        std::vector<CrossingRecord> records;
        for (int t = 0; t < 16; ++t) {
            records.push_back(ray_crossings(fE, fF, 2.0 * M_PI * t / 16.0));
        }
        const double lower = lower_bound_modulus(records);
        ordered = ordered && lower <= upper;
        if (k == 12) {
            detail = "at z0=2^-12: lower " + fmt(lower) + " <= upper " + fmt(upper);
        }
    }
    std::vector<double> xs, ys;
    for (int k = 5; k <= 14; ++k) {
        const double z0 = std::ldexp(1.0, -k);
        const double L = std::log(1.0 / z0);
        xs.push_back(L * L);
        ys.push_back(weighted_modulus_upper(spec, z0, p));
    }
    const LinearFit fit = fit_line(xs, ys);
    const bool pass = ordered && fit.r_squared > 0.99 && fit.slope > 0.0;
    return {7, "moduli sanity: lower bound <= weighted upper bound, log^2 growth",
            pass, detail + "; upper-vs-log^2 fit R^2 " + fmt(fit.r_squared)};
}

CriterionResult integrability_agreement() {
    const double p = 1.0;
    std::vector<MapSpec> grid;
    // Predicate value v relative to criticality v = 1, margin >= 0.05.
    const std::vector<double> values = {0.5, 0.7, 0.85, 0.93, 1.07, 1.15, 1.3, 1.5};
    for (double c1 : {0.15, 0.3, 0.45}) {
        for (double v : values) {
            if (v > c1) {
                grid.push_back(MapSpec::spiral(c1, std::sqrt(c1 * (v - c1)), p));
            }
        }
    }
    std::size_t n_spiral = grid.size();
    for (double v : values) {
        grid.push_back(MapSpec::rotation_only(std::sqrt(8.0 * v / 9.0), p));
        grid.push_back(MapSpec::rotation_only(-std::sqrt(8.0 * v / 9.0), p));
        grid.push_back(MapSpec::rotation_only(std::sqrt(8.0 * (v + 0.02) / 9.0), p));
    }
    std::size_t n_rot = grid.size() - n_spiral;
    for (double alpha : {-0.5, 0.0, 0.5}) {
        for (double v : values) {
            const double c1 = 1.0;
            const double e = 0.5 * (3.0 + alpha);
            const double c2 = std::sqrt(v * 2.0 * c1 * (1.0 + alpha)) / e;
            grid.push_back(MapSpec::generalized_spiral(c1, c2, alpha, p));
        }
    }
    const GridAgreementReport report = classify_grid(grid, p);
    const bool pass = report.all_agree() && report.inconclusive == 0;
    return {8, "integrability: numeric quadrature vs analytic predicates",
            pass, fmt(static_cast<double>(report.points.size())) + " grid points (" +
                      fmt(static_cast<double>(n_spiral)) + " spiral, " +
                      fmt(static_cast<double>(n_rot)) + " rotation-only), " +
                      fmt(static_cast<double>(report.disagreements)) + " disagreements, " +
                      fmt(static_cast<double>(report.inconclusive)) + " inconclusive"};
}

CriterionResult exponent_tradeoff() {
    struct Case {
        MapSpec spec;
        double expected;
    };
    const std::vector<Case> cases = {
        {MapSpec::spiral(0.2, 0.3), 2.0},
        {MapSpec::rotation_only(0.4), 1.5},
        {MapSpec::generalized_spiral(1.0, 0.5, -0.5), 1.25},
        {MapSpec::generalized_spiral(1.0, 0.5, 0.0), 1.5},
        {MapSpec::generalized_spiral(1.0, 0.5, 0.5), 1.75},
    };
    double worst = 0.0;
    for (const Case& c : cases) {
        const RotationReport rep = measure_rotation(
            evaluator(c.spec), Complex{0, 0}, exp_radii(4.0, 14.0, 11), 8, c.spec.p);
        worst = std::max(worst, std::abs(rep.fitted_exponent - c.expected) / c.expected);
    }
    return {9, "stretch-rotation tradeoff: fitted winding exponents",
            worst <= 0.02, "max relative deviation " + fmt(worst)};
}

CriterionResult empirical_constant_report() {
    const MapSpec spec = MapSpec::spiral(0.2, 0.3);
    const double c_emp = empirical_rotation_constant(
        evaluator(spec), spec.p, exp_radii(4.0, 14.0, 6), 8);
    const bool pass = std::isfinite(c_emp) && c_emp > 0.0;
    return {10, "empirical constant reported; no reference value exists to compare",
            pass, "c_emp " + fmt(c_emp) + " for spiral(0.2, 0.3) at p=1 (informational)"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::vector<CriterionResult> results;
    results.push_back(spiral_rotation_exactness());
    results.push_back(sharpness_ceiling());
    results.push_back(distortion_asymptotics());
    results.push_back(derivative_oracle(rng));
    results.push_back(lemma_minimum(rng));
    results.push_back(admissibility(rng));
    results.push_back(moduli_sanity());
    results.push_back(integrability_agreement());
    results.push_back(exponent_tradeoff());
    results.push_back(empirical_constant_report());
    return results;
}

}  // namespace rotlab
