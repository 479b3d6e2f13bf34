#pragma once

#include <utility>
#include <vector>

#include "rotlab/map_family.hpp"
#include "rotlab/plane.hpp"

namespace rotlab {

class NotIntegrable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Path family joining E = [z0, 1] to F = (-infty, 0], with F truncated at
/// -r_max for tracing.
struct PathFamilySpec {
    double z0;
    double r_max = 8.0;
};

/// Piecewise-constant density on the nested dyadic balls
/// B_j = B(2^{j-1} z0, 2^{j-1} z0), j = 1..n, taking the value 2 / (2^{j-1} z0)
/// on B_j \ B_{j-1} and 0 outside B_n.
struct AdmissibleDensity {
    double z0;
    int n;  // smallest n with 2^{n-1} z0 >= 1

    static AdmissibleDensity for_z0(double z0);

    double ball_radius(int j) const;  // = center offset, j in 1..n
    double value(Complex z) const;

    /// Exact integral of rho0^2 over the plane: 4*pi + 3*pi*(n-1).
    double l2_integral_analytic() const;
    /// Independent check: exact radial integration per direction, midpoint
    /// rule in theta.
    double l2_integral_quadrature(int n_theta = 4096) const;
    /// Exact integral of rho0^2 log(1 + rho0^2), summed per annular region.
    double log_weighted_l2_analytic() const;
};

/// Line integral of rho0 along a polyline, splitting each segment exactly at
/// ball-boundary crossings so the piecewise-constant integrand is exact.
double rho0_line_integral(const AdmissibleDensity& d, const std::vector<Complex>& polyline);

/// Same integral with an endpoint check: first point on E = [z0, 1], last on
/// F = (-infty, 0] (within 1e-9). Admissibility asserts the result >= 1.
double check_admissibility(const AdmissibleDensity& d, const std::vector<Complex>& polyline);

/// Right side of the elementary-inequality bound on the weighted modulus:
/// (1/p) int_{supp rho0} (e^{p K} - 1) + (1/p) int rho0^2 log(1 + rho0^2).
/// The K-part is integrated radially with the exact angular measure of the
/// support ball B_n and geometric refinement toward 0. Throws NotIntegrable
/// when the inner shells diverge.
double weighted_modulus_upper(const MapSpec& spec, double z0, double p);

/// Image polyline of the radial segment {t e^{i theta} : t in [r_in, r_out]},
/// sampled log-uniformly and refined until consecutive angular increments
/// about the origin stay below max_turn. Ordered from t = r_out down to r_in.
std::vector<Complex> trace_ray_image(const MapSpec& spec, double theta,
                                     double r_in, double r_out,
                                     double max_turn = M_PI / 8.0,
                                     std::size_t cap = std::size_t{1} << 22);

std::vector<Complex> trace_E_image(const MapSpec& spec, double z0);
std::vector<Complex> trace_F_image(const MapSpec& spec, double z0, double r_max = 8.0);

/// Alternating E/F crossing pairs of a ray from the origin.
struct CrossingRecord {
    double theta;
    // 0 < x_i < y_i < 1, one endpoint of each pair on f(E), the other on f(F).
    std::vector<std::pair<double, double>> pairs;
    // First label of each pair: true when x_i lies on f(E).
    std::vector<bool> first_is_E;
};

CrossingRecord ray_crossings(const std::vector<Complex>& fE,
                             const std::vector<Complex>& fF, double theta);

/// theta-average times 2*pi of sum_i 1 / log(y_i / x_i); a lower bound for
/// the modulus of the image family, conservative under crossing discards.
double lower_bound_modulus(const std::vector<CrossingRecord>& records);

/// Floor formula n(z0) = floor(Delta arg / 2 pi) - 1 from the continued
/// argument of the image of E. May be negative (clamp at 0 for use in bounds).
int crossing_count(const MapSpec& spec, double z0);

/// Closed-form minimum n^2 / log(1/a) of sum 1/log(a_i/a_{i-1}) over
/// partitions a = a_0 < ... < a_n = 1.
double lemma_min_closed(double a, int n);

/// The partition sum being minimized.
double lemma_partition_sum(const std::vector<double>& partition);

struct LemmaMinimum {
    double value;
    std::vector<double> partition;  // a_0 .. a_n
};

/// Independent minimizer: iterated geometric-mean smoothing of the interior
/// points run to a fixed point (tolerance 1e-12, at most 1e6 sweeps).
LemmaMinimum lemma_min_oracle(double a, int n);

}  // namespace rotlab
