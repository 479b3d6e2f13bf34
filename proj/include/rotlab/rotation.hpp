#pragma once

#include <vector>

#include "rotlab/plane.hpp"

namespace rotlab {

class PathologicalWinding : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-radius winding measurements around a base point, with the fitted
/// growth of winding in L = log(1/r).
struct RotationReport {
    Complex z0{0.0, 0.0};
    std::vector<double> radii;                  // decreasing
    std::vector<double> theta_samples;
    std::vector<std::vector<double>> winding;   // [radius][theta], >= 0
    std::vector<double> sup_winding;            // max over theta per radius
    double gamma_estimate = 0.0;                // max over smallest quartile of sup/L^2
    double fitted_exponent = 0.0;               // slope of log sup vs log L
    double c_emp = 0.0;                         // p * max over radii of sup/L^2
};

/// |Delta arg| of f(z0 + t e^{i theta}) - f(z0) as t runs from 1 down to r.
/// Geometric sampling in t, 64 base samples per decade, doubled on
/// undersampling up to `cap` points.
double winding_along_ray(const MapFn& f, Complex z0, double theta, double r,
                         int samples_per_decade = 64, std::size_t cap = std::size_t{1} << 20);

/// Max of winding_along_ray over n_theta equispaced directions.
double sup_winding(const MapFn& f, Complex z0, double r, int n_theta);

/// Rotation estimate: max over the smallest quartile of radii of
/// sup_winding(r) / log^2(1/r).
double gamma_estimate(const MapFn& f, Complex z0, const std::vector<double>& radii,
                      int n_theta = 8);

/// Empirical candidate for the rotation-bound constant:
/// max over radii of p * sup_winding(r) / log^2(1/r). Expects f normalized
/// (fixing 0 and 1).
double empirical_rotation_constant(const MapFn& f, double p,
                                   const std::vector<double>& radii, int n_theta = 8);

/// Least-squares slope of log(sup_winding) against log(log(1/r)).
double exponent_fit(const RotationReport& report);

RotationReport measure_rotation(const MapFn& f, Complex z0,
                                const std::vector<double>& radii,
                                int n_theta, double p);

/// Geometrically spaced decreasing radii e^{-k}, k = k_lo..k_hi.
std::vector<double> exp_radii(double k_lo, double k_hi, int count);

}  // namespace rotlab
