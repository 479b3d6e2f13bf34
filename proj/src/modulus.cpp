#include "rotlab/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "rotlab/rotation.hpp"

namespace rotlab {

namespace {

double cross(Complex a, Complex b) {
    return a.real() * b.imag() - a.imag() * b.real();
}

double dot(Complex a, Complex b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGaussN = 8;
constexpr double kGaussX[kGaussN] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGaussW[kGaussN] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss16(const F& g, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < kGaussN; ++i) {
        sum += kGaussW[i] * (g(mid + half * kGaussX[i]) + g(mid - half * kGaussX[i]));
    }
    return half * sum;
}

}  // namespace

AdmissibleDensity AdmissibleDensity::for_z0(double z0) {
    if (!(z0 > 0.0 && z0 < 1.0)) {
        throw std::domain_error("AdmissibleDensity: z0 must lie in (0, 1)");
    }
    int n = 1;
    double reach = z0;
    while (reach < 1.0) {
        reach *= 2.0;
        ++n;
    }
    return AdmissibleDensity{z0, n};
}

double AdmissibleDensity::ball_radius(int j) const {
    return std::ldexp(z0, j - 1);
}

double AdmissibleDensity::value(Complex z) const {
    for (int j = 1; j <= n; ++j) {
        const double rj = ball_radius(j);
        if (std::abs(z - Complex{rj, 0.0}) < rj) {
            return 2.0 / rj;  // smallest containing ball wins (balls are nested)
        }
    }
    return 0.0;
}

double AdmissibleDensity::l2_integral_analytic() const {
    return 4.0 * M_PI + 3.0 * M_PI * (n - 1);
}

double AdmissibleDensity::l2_integral_quadrature(int n_theta) const {
    // Circle of radius r meets B_j iff r < 2 r_j cos(theta); the radial
    // integral at fixed theta is then exact over the induced intervals.
    double total = 0.0;
    const double dtheta = 0.5 * M_PI / n_theta;
    for (int k = 0; k < n_theta; ++k) {
        const double theta = (k + 0.5) * dtheta;
        const double ct = std::cos(theta);
        double radial = 0.0;
        double lo = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double rj = ball_radius(j);
            const double hi = 2.0 * rj * ct;
            radial += (4.0 / (rj * rj)) * 0.5 * (hi * hi - lo * lo);
            lo = hi;
        }
        total += radial * dtheta;
    }
    return 2.0 * total;  // symmetric in theta
}

double AdmissibleDensity::log_weighted_l2_analytic() const {
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double rj = ball_radius(j);
        const double rho2 = 4.0 / (rj * rj);
        const double area = (j == 1) ? M_PI * rj * rj : 0.75 * M_PI * rj * rj;
        total += rho2 * std::log1p(rho2) * area;
    }
    return total;
}

double rho0_line_integral(const AdmissibleDensity& d, const std::vector<Complex>& polyline) {
    if (polyline.size() < 2) {
        throw std::domain_error("rho0_line_integral: need at least 2 points");
    }
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < polyline.size(); ++s) {
        const Complex p = polyline[s];
        const Complex q = polyline[s + 1];
        const Complex e = q - p;
        const double len = std::abs(e);
        if (len == 0.0) {
            continue;
        }
        // Split at every ball-boundary crossing so rho0 is constant per piece.
        std::vector<double> cuts = {0.0, 1.0};
        for (int j = 1; j <= d.n; ++j) {
            const double rj = d.ball_radius(j);
            const Complex c{rj, 0.0};
            const Complex w = p - c;
            const double a = std::norm(e);
            const double b = 2.0 * dot(w, e);
            const double cc = std::norm(w) - rj * rj;
            const double disc = b * b - 4.0 * a * cc;
            if (disc <= 0.0) {
                continue;
            }
            const double sq = std::sqrt(disc);
            for (double u : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
                if (u > 0.0 && u < 1.0) {
                    cuts.push_back(u);
                }
            }
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            total += d.value(p + mid * e) * (cuts[i + 1] - cuts[i]) * len;
        }
    }
    return total;
}

double check_admissibility(const AdmissibleDensity& d, const std::vector<Complex>& polyline) {
    constexpr double tol = 1e-9;
    const Complex a = polyline.front();
    const Complex b = polyline.back();
    if (std::abs(a.imag()) > tol || a.real() < d.z0 - tol || a.real() > 1.0 + tol) {
        throw std::domain_error("check_admissibility: first point not on E = [z0, 1]");
    }
    if (std::abs(b.imag()) > tol || b.real() > tol) {
        throw std::domain_error("check_admissibility: last point not on F = (-inf, 0]");
    }
    return rho0_line_integral(d, polyline);
}

double weighted_modulus_upper(const MapSpec& spec, double z0, double p) {
    if (!(p > 0.0)) {
        throw std::domain_error("weighted_modulus_upper: p must be positive");
    }
    if (!integrability_predicate(spec, p)) {
        throw NotIntegrable("weighted_modulus_upper: distortion not p-exponentially integrable");
    }
    const AdmissibleDensity d = AdmissibleDensity::for_z0(z0);
    const double support_radius = 2.0 * d.ball_radius(d.n);  // B_n touches 0 and 2 r_n

    const auto integrand = [&](double r) {
        const double K = distortion_radial(spec, r);
        const double ang = 2.0 * std::acos(std::min(1.0, r / support_radius));
        return r * std::expm1(p * K) * ang;
    };
    const auto shell = [&](double lo, double hi) {
        // Branch seams at 1/2 and 1 are only C^0; split there.
        std::vector<double> cuts = {lo, hi};
        for (double seam : {0.5, 1.0}) {
            if (seam > lo && seam < hi) {
                cuts.push_back(seam);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            sum += gauss16(integrand, cuts[i], cuts[i + 1]);
        }
        return sum;
    };

    double k_integral = 0.0;
    double prev = -1.0;
    int growth_streak = 0;
    double hi = support_radius;
    for (int k = 0; k < 2000; ++k) {
        const double lo = 0.5 * hi;
        const double contribution = shell(lo, hi);
        k_integral += contribution;
        if (prev >= 0.0 && contribution > prev) {
            if (++growth_streak >= 5) {
                throw NotIntegrable("weighted_modulus_upper: diverging inner shells");
            }
        } else {
            growth_streak = 0;
        }
        prev = contribution;
        hi = lo;
        if (k > 8 && contribution < 1e-10 * std::max(k_integral, 1.0)) {
            break;
        }
    }
    return (k_integral + d.log_weighted_l2_analytic()) / p;
}

std::vector<Complex> trace_ray_image(const MapSpec& spec, double theta,
                                     double r_in, double r_out,
                                     double max_turn, std::size_t cap) {
    if (!(r_in > 0.0 && r_in < r_out)) {
        throw std::domain_error("trace_ray_image: need 0 < r_in < r_out");
    }
    const Complex dir = std::polar(1.0, theta);
    std::size_t count = std::max<std::size_t>(
        33, static_cast<std::size_t>(std::ceil(64.0 * std::log10(r_out / r_in))) + 1);
    while (true) {
        std::vector<Complex> pts;
        pts.reserve(count);
        const double l_out = std::log(r_out);
        const double l_in = std::log(r_in);
        for (std::size_t k = 0; k < count; ++k) {
            const double t = std::exp(l_out + (l_in - l_out) * k / (count - 1));
            pts.push_back(evaluate(spec, t * dir));
        }
        bool ok = true;
        for (std::size_t k = 0; k + 1 < pts.size() && ok; ++k) {
            ok = std::abs(principal_arg(pts[k + 1] / pts[k])) < max_turn;
        }
        if (ok) {
            return pts;
        }
        if (count >= cap) {
            throw std::runtime_error("trace_ray_image: refinement cap exceeded");
        }
        count = std::min(cap, count * 2);
    }
}

std::vector<Complex> trace_E_image(const MapSpec& spec, double z0) {
    return trace_ray_image(spec, 0.0, z0, 1.0);
}

std::vector<Complex> trace_F_image(const MapSpec& spec, double z0, double r_max) {
    // Trace the truncated negative axis inward past |h(z0)| so every crossing
    // radius of interest is covered.
    return trace_ray_image(spec, M_PI, 0.25 * z0, r_max);
}

CrossingRecord ray_crossings(const std::vector<Complex>& fE,
                             const std::vector<Complex>& fF, double theta) {
    constexpr double kTangentTol = 1e-12;
    const Complex dir = std::polar(1.0, theta);

    struct Crossing {
        double s;
        bool on_E;
    };
    std::vector<Crossing> crossings;
    const auto scan = [&](const std::vector<Complex>& poly, bool on_E) {
        for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
            const Complex pnt = poly[k];
            const Complex e = poly[k + 1] - pnt;
            const double denom = cross(e, dir);
            const double scale = std::abs(e);
            if (std::abs(denom) <= kTangentTol * std::max(scale, 1.0)) {
                continue;  // parallel or tangential: discard, stay conservative
            }
            const double u = cross(pnt, dir) / denom;
            if (u < kTangentTol || u >= 1.0 - kTangentTol) {
                continue;  // endpoint grazing discarded
            }
            const double s = dot(dir, pnt + u * e);
            if (s > kTangentTol) {
                crossings.push_back({s, on_E});
            }
        }
    };
    scan(fE, true);
    scan(fF, false);
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.s < b.s; });

    CrossingRecord rec;
    rec.theta = theta;
    std::size_t i = 0;
    while (i + 1 < crossings.size()) {
        const Crossing& a = crossings[i];
        const Crossing& b = crossings[i + 1];
        if (a.on_E != b.on_E && b.s < 1.0 && b.s - a.s > kTangentTol) {
            rec.pairs.emplace_back(a.s, b.s);
            rec.first_is_E.push_back(a.on_E);
            i += 2;
        } else {
            ++i;
        }
    }
    return rec;
}

double lower_bound_modulus(const std::vector<CrossingRecord>& records) {
    if (records.size() < 16) {
        throw std::domain_error("lower_bound_modulus: need records for >= 16 directions");
    }
    double sum = 0.0;
    for (const CrossingRecord& rec : records) {
        for (const auto& [x, y] : rec.pairs) {
            sum += 1.0 / std::log(y / x);
        }
    }
    return 2.0 * M_PI * sum / static_cast<double>(records.size());
}

int crossing_count(const MapSpec& spec, double z0) {
    if (!(z0 > 0.0 && z0 < 1.0)) {
        throw std::domain_error("crossing_count: z0 must lie in (0, 1)");
    }
    std::size_t count = std::max<std::size_t>(
        33, static_cast<std::size_t>(std::ceil(64.0 * std::log10(1.0 / z0))) + 1);
    const std::size_t cap = std::size_t{1} << 20;
    while (true) {
        std::vector<Complex> pts;
        pts.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const double t = std::exp(std::log(z0) * k / (count - 1));
            pts.push_back(evaluate(spec, Complex{t, 0.0}));
        }
        try {
            // |arg f(z0) - arg f(1)| continued along f(E); the sign of the
            // rotation does not matter for the crossing count.
            const double delta = std::abs(continue_argument(pts).total_winding());
            return static_cast<int>(std::floor(delta / (2.0 * M_PI) + 1e-9)) - 1;
        } catch (const UndersampledPath&) {
            if (count >= cap) {
                throw PathologicalWinding("crossing_count: refinement cap exceeded");
            }
            count = std::min(cap, count * 2);
        }
    }
}

double lemma_min_closed(double a, int n) {
    if (!(a > 0.0 && a < 1.0)) {
        throw std::domain_error("lemma_min_closed: a must lie in (0, 1)");
    }
    if (n < 1) {
        throw std::domain_error("lemma_min_closed: n must be >= 1");
    }
    return static_cast<double>(n) * n / std::log(1.0 / a);
}

double lemma_partition_sum(const std::vector<double>& partition) {
    if (partition.size() < 2) {
        throw std::domain_error("lemma_partition_sum: need at least 2 points");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < partition.size(); ++i) {
        const double ratio = partition[i] / partition[i - 1];
        if (!(ratio > 1.0)) {
            throw std::domain_error("lemma_partition_sum: partition not strictly increasing");
        }
        sum += 1.0 / std::log(ratio);
    }
    return sum;
}

LemmaMinimum lemma_min_oracle(double a, int n) {
    if (!(a > 0.0 && a < 1.0)) {
        throw std::domain_error("lemma_min_oracle: a must lie in (0, 1)");
    }
    if (n < 1 || n > 12) {
        throw std::domain_error("lemma_min_oracle: n must lie in 1..12");
    }
    // Work in the log domain, where geometric-mean smoothing is averaging.
    std::vector<double> l(n + 1);
    l[0] = std::log(a);
    l[n] = 0.0;
    for (int i = 1; i < n; ++i) {
        // Deliberately non-uniform start so the descent does real work.
        const double f = static_cast<double>(i) / n;
        l[i] = l[0] * (1.0 - f * f);
    }
    const int max_sweeps = 1000000;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_move = 0.0;
        for (int i = 1; i < n; ++i) {
            const double target = 0.5 * (l[i - 1] + l[i + 1]);
            max_move = std::max(max_move, std::abs(target - l[i]));
            l[i] = target;
        }
        if (max_move < 1e-12) {
            LemmaMinimum out;
            out.partition.reserve(n + 1);
            for (double li : l) {
                out.partition.push_back(std::exp(li));
            }
            out.value = lemma_partition_sum(out.partition);
            return out;
        }
    }
    throw std::runtime_error("lemma_min_oracle: smoothing did not converge");
}

}  // namespace rotlab
