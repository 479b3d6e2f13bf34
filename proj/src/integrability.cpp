#include "rotlab/integrability.hpp"

#include <algorithm>
#include <cmath>

namespace rotlab {

namespace {

constexpr int kShellDepth = 60;
constexpr int kPointsPerShell = 32;
// Minimal per-shell log-slope treated as a genuine trend; anything flatter
// is numerically undecidable at this depth.
constexpr double kTrendThreshold = 0.005;

// log of sum(exp(terms)) without overflow.
double log_sum_exp(const std::vector<double>& terms) {
    const double m = *std::max_element(terms.begin(), terms.end());
    if (!std::isfinite(m)) {
        return m;
    }
    double sum = 0.0;
    for (double t : terms) {
        sum += std::exp(t - m);
    }
    return m + std::log(sum);
}

}  // namespace

std::string verdict_name(NumericVerdict v) {
    switch (v) {
        case NumericVerdict::Converged: return "converged";
        case NumericVerdict::Diverged: return "diverged";
        case NumericVerdict::Inconclusive: return "inconclusive";
    }
    throw std::logic_error("verdict_name: unreachable");
}

IntegrabilityVerdict radial_exp_integral(const MapSpec& spec, double p, double r_outer) {
    if (!(p > 0.0)) {
        throw std::domain_error("radial_exp_integral: p must be positive");
    }
    if (!(r_outer > 0.0 && r_outer <= 1.0)) {
        throw std::domain_error("radial_exp_integral: r_outer must lie in (0, 1]");
    }
    IntegrabilityVerdict verdict;
    verdict.p = p;
    verdict.analytic = integrability_predicate(spec, p);
    verdict.numeric = NumericVerdict::Inconclusive;

    // Midpoint rule in log r per shell: int 2 pi r^2 e^{pK} d(log r),
    // each term kept as a logarithm.
    std::vector<double> shell_logs;
    for (int k = 0; k < kShellDepth; ++k) {
        const double hi = std::ldexp(r_outer, -k);
        const double lo = 0.5 * hi;
        const double dl = std::log(hi / lo) / kPointsPerShell;
        std::vector<double> terms;
        terms.reserve(kPointsPerShell);
        for (int i = 0; i < kPointsPerShell; ++i) {
            const double r = lo * std::exp((i + 0.5) * dl);
            const double K = distortion_radial(spec, r);
            terms.push_back(std::log(2.0 * M_PI * r * r * dl) + p * K);
        }
        const double shell_log = log_sum_exp(terms);
        shell_logs.push_back(shell_log);
        verdict.shells.emplace_back(lo, shell_log);
    }

    // The consecutive log-differences t_k approach (p beta - 2) log 2, but for
    // sub-linear profile exponents the approach is as slow as k^{-1/2}. Fit
    // t_k = a + b k^{-1/2} over the last 30 shells and classify by the
    // extrapolated limit a, so slowly decaying corrections cannot flip the
    // verdict near (but outside) the critical margin.
    double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
    for (int k = kShellDepth - 30; k < kShellDepth; ++k) {
        const double t = shell_logs[k] - shell_logs[k - 1];
        const double u = 1.0 / std::sqrt(static_cast<double>(k));
        s00 += 1.0; s01 += u; s11 += u * u;
        r0 += t; r1 += t * u;
    }
    const double det = s00 * s11 - s01 * s01;
    const double limit_slope = (s11 * r0 - s01 * r1) / det;

    if (limit_slope > kTrendThreshold) {
        verdict.numeric = NumericVerdict::Diverged;
    } else if (limit_slope < -kTrendThreshold) {
        verdict.numeric = NumericVerdict::Converged;
        const double total_log = log_sum_exp(shell_logs);
        // Geometric tail below the deepest shell, once the tail is actually
        // decreasing at the reached depth.
        const double ratio = std::exp(shell_logs.back() - shell_logs[shell_logs.size() - 2]);
        if (ratio < 1.0 && total_log < 700.0) {
            const double tail = std::exp(shell_logs.back()) * ratio / (1.0 - ratio);
            verdict.value = std::exp(total_log) + tail;
        }
    }
    return verdict;
}

GridAgreementReport classify_grid(const std::vector<MapSpec>& grid, double p) {
    GridAgreementReport report;
    for (const MapSpec& spec : grid) {
        const IntegrabilityVerdict v = radial_exp_integral(spec, p);
        GridPointResult pt;
        pt.spec = spec;
        pt.analytic = v.analytic;
        pt.numeric = v.numeric;
        pt.inconclusive = v.numeric == NumericVerdict::Inconclusive;
        pt.agree = (v.numeric == NumericVerdict::Converged && v.analytic) ||
                   (v.numeric == NumericVerdict::Diverged && !v.analytic);
        if (pt.inconclusive) {
            ++report.inconclusive;
        } else if (!pt.agree) {
            ++report.disagreements;
        }
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace rotlab
