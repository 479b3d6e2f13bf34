#include "rotlab/rotation.hpp"

#include <algorithm>
#include <cmath>

namespace rotlab {

namespace {

double log_squared(double r) {
    const double L = std::log(1.0 / r);
    return L * L;
}

}  // namespace

double winding_along_ray(const MapFn& f, Complex z0, double theta, double r,
                         int samples_per_decade, std::size_t cap) {
    if (!(r > 0.0 && r < 1.0)) {
        throw std::domain_error("winding_along_ray: r must lie in (0, 1)");
    }
    const Complex dir = std::polar(1.0, theta);
    const Complex base = f(z0);
    const double decades = std::log10(1.0 / r);
    std::size_t count = std::max<std::size_t>(2, static_cast<std::size_t>(
        std::ceil(decades * samples_per_decade)) + 1);
    while (true) {
        std::vector<Complex> pts;
        pts.reserve(count);
        const double l_step = std::log(r) / static_cast<double>(count - 1);
        for (std::size_t k = 0; k < count; ++k) {
            const double t = std::exp(l_step * static_cast<double>(k));
            const Complex w = f(z0 + t * dir) - base;
            if (w == Complex{0.0, 0.0}) {
                throw std::domain_error("winding_along_ray: f(z0 + t e^{i theta}) = f(z0)");
            }
            pts.push_back(w);
        }
        try {
            return std::abs(continue_argument(pts).total_winding());
        } catch (const UndersampledPath&) {
            if (count >= cap) {
                throw PathologicalWinding("winding_along_ray: refinement cap exceeded");
            }
            count = std::min(cap, count * 2);
        }
    }
}

double sup_winding(const MapFn& f, Complex z0, double r, int n_theta) {
    if (n_theta < 1) {
        throw std::domain_error("sup_winding: n_theta must be >= 1");
    }
    double best = 0.0;
    for (int k = 0; k < n_theta; ++k) {
        const double theta = 2.0 * M_PI * k / n_theta;
        best = std::max(best, winding_along_ray(f, z0, theta, r));
    }
    return best;
}

double gamma_estimate(const MapFn& f, Complex z0, const std::vector<double>& radii,
                      int n_theta) {
    if (radii.size() < 4) {
        throw std::domain_error("gamma_estimate: need at least 4 radii");
    }
    std::vector<double> sorted = radii;
    std::sort(sorted.begin(), sorted.end());  // ascending: smallest first
    const std::size_t quartile = std::max<std::size_t>(1, sorted.size() / 4);
    double best = 0.0;
    for (std::size_t k = 0; k < quartile; ++k) {
        best = std::max(best, sup_winding(f, z0, sorted[k], n_theta) / log_squared(sorted[k]));
    }
    return best;
}

double empirical_rotation_constant(const MapFn& f, double p,
                                   const std::vector<double>& radii, int n_theta) {
    if (!(p > 0.0)) {
        throw std::domain_error("empirical_rotation_constant: p must be positive");
    }
    double best = 0.0;
    for (double r : radii) {
        best = std::max(best, p * sup_winding(f, Complex{0.0, 0.0}, r, n_theta) / log_squared(r));
    }
    return best;
}

double exponent_fit(const RotationReport& report) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t n = report.radii.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double w = report.sup_winding[k];
        if (!(w > 0.0)) {
            throw std::domain_error("exponent_fit: nonpositive winding");
        }
        const double x = std::log(std::log(1.0 / report.radii[k]));
        const double y = std::log(w);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

RotationReport measure_rotation(const MapFn& f, Complex z0,
                                const std::vector<double>& radii,
                                int n_theta, double p) {
    RotationReport report;
    report.z0 = z0;
    report.radii = radii;
    std::sort(report.radii.begin(), report.radii.end(), std::greater<double>());
    for (int k = 0; k < n_theta; ++k) {
        report.theta_samples.push_back(2.0 * M_PI * k / n_theta);
    }
    report.winding.resize(report.radii.size());
    report.sup_winding.resize(report.radii.size());
    for (std::size_t i = 0; i < report.radii.size(); ++i) {
        double sup = 0.0;
        for (double theta : report.theta_samples) {
            const double w = winding_along_ray(f, z0, theta, report.radii[i]);
            report.winding[i].push_back(w);
            sup = std::max(sup, w);
        }
        report.sup_winding[i] = sup;
    }
    report.gamma_estimate = 0.0;
    report.c_emp = 0.0;
    const std::size_t n = report.radii.size();
    const std::size_t quartile = std::max<std::size_t>(1, n / 4);
    for (std::size_t i = 0; i < n; ++i) {
        const double ratio = report.sup_winding[i] / log_squared(report.radii[i]);
        report.c_emp = std::max(report.c_emp, p * ratio);
        if (i + quartile >= n) {  // smallest radii sit at the tail (sorted decreasing)
            report.gamma_estimate = std::max(report.gamma_estimate, ratio);
        }
    }
    report.fitted_exponent = exponent_fit(report);
    return report;
}

std::vector<double> exp_radii(double k_lo, double k_hi, int count) {
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double k = k_lo + (k_hi - k_lo) * i / std::max(1, count - 1);
        out.push_back(std::exp(-k));
    }
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

}  // namespace rotlab
