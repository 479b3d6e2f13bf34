#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rotlab {

using Complex = std::complex<double>;
using MapFn = std::function<Complex(Complex)>;

struct PolarPoint {
    double r;      // modulus, > 0
    double theta;  // radians
};

class UndersampledPath : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SeamStencil : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Principal argument in (-pi, pi]; the negative real axis maps to +pi.
double principal_arg(Complex z);

PolarPoint to_polar(Complex z);
Complex to_complex(const PolarPoint& p);

/// A sampled path together with a branch-consistent choice of argument.
struct ContinuedArgument {
    std::vector<Complex> points;
    std::vector<double> args;

    double total_winding() const { return args.back() - args.front(); }
};

/// Unwraps the argument along a sampled path of nonzero points.
/// args[0] is the principal argument of the first point and each increment is
/// the principal-value difference between consecutive points. Throws
/// UndersampledPath if any increment magnitude reaches pi/2, and
/// std::domain_error on a zero point.
ContinuedArgument continue_argument(const std::vector<Complex>& points);

struct WirtingerPair {
    Complex fz;
    Complex fzbar;
};

/// Default finite-difference step: 1e-5 * max(|z|, 1).
double default_fd_step(Complex z);

/// Central-difference Wirtinger derivatives on the four-point stencil
/// z +- step, z +- i*step. O(step^2) for twice-differentiable maps. The
/// stencil must not straddle a seam radius; by default the piecewise seams
/// |z| = 1/2 and |z| = 1 are guarded with distance 2*step.
WirtingerPair wirtinger_fd(const MapFn& f, Complex z, double step,
                           const std::vector<double>& seam_radii = {0.5, 1.0});

/// Distortion K = (|fz| + |fzbar|) / (|fz| - |fzbar|). Requires |fz| > |fzbar|.
double distortion_from_pair(const WirtingerPair& p);

}  // namespace rotlab
