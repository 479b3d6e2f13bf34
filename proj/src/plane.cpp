#include "rotlab/plane.hpp"

#include <cmath>

namespace rotlab {

double principal_arg(Complex z) {
    if (z.real() == 0.0 && z.imag() == 0.0) {
        throw std::domain_error("principal_arg: zero input");
    }
    // atan2(-0.0, x<0) would give -pi; force +pi on the negative real axis.
    const double im = (z.imag() == 0.0) ? 0.0 : z.imag();
    return std::atan2(im, z.real());
}

PolarPoint to_polar(Complex z) {
    const double r = std::abs(z);
    if (r == 0.0) {
        throw std::domain_error("to_polar: zero input");
    }
    return PolarPoint{r, principal_arg(z)};
}

Complex to_complex(const PolarPoint& p) {
    if (!(p.r > 0.0)) {
        throw std::domain_error("to_complex: nonpositive modulus");
    }
    return std::polar(p.r, p.theta);
}

ContinuedArgument continue_argument(const std::vector<Complex>& points) {
    if (points.size() < 2) {
        throw std::domain_error("continue_argument: need at least 2 points");
    }
    ContinuedArgument out;
    out.points = points;
    out.args.reserve(points.size());
    out.args.push_back(principal_arg(points.front()));
    for (std::size_t k = 1; k < points.size(); ++k) {
        // Principal-value increment via the ratio, robust to large moduli.
        const double inc = principal_arg(points[k] / points[k - 1]);
        if (std::abs(inc) >= M_PI / 2.0) {
            throw UndersampledPath("continue_argument: increment >= pi/2, refine the path");
        }
        out.args.push_back(out.args.back() + inc);
    }
    return out;
}

double default_fd_step(Complex z) {
    return 1e-5 * std::max(std::abs(z), 1.0);
}

WirtingerPair wirtinger_fd(const MapFn& f, Complex z, double step,
                           const std::vector<double>& seam_radii) {
    if (!(step > 0.0)) {
        throw std::domain_error("wirtinger_fd: step must be positive");
    }
    const double r = std::abs(z);
    for (double seam : seam_radii) {
        if (std::abs(r - seam) < 2.0 * step) {
            throw SeamStencil("wirtinger_fd: stencil straddles seam radius");
        }
    }
    const Complex s{step, 0.0};
    const Complex is{0.0, step};
    const Complex dx = (f(z + s) - f(z - s)) / (4.0 * step);
    const Complex dy = (f(z + is) - f(z - is)) / (4.0 * step);
    const Complex i{0.0, 1.0};
    return WirtingerPair{dx + dy / i, dx - dy / i};
}

double distortion_from_pair(const WirtingerPair& p) {
    const double a = std::abs(p.fz);
    const double b = std::abs(p.fzbar);
    if (!(a > b)) {
        throw std::domain_error("distortion_from_pair: |fz| <= |fzbar| (degenerate or orientation-reversing)");
    }
    return (a + b) / (a - b);
}

}  // namespace rotlab
