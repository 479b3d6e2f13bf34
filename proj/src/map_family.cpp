#include "rotlab/map_family.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rotlab {

namespace {
constexpr double kInnerSeam = 0.5;
const double kLog2 = std::log(2.0);
}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Identity: return "identity";
        case Family::Spiral: return "spiral";
        case Family::RotationOnly: return "rotation_only";
        case Family::GeneralizedSpiral: return "generalized_spiral";
    }
    throw std::logic_error("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "identity") return Family::Identity;
    if (name == "spiral") return Family::Spiral;
    if (name == "rotation_only") return Family::RotationOnly;
    if (name == "generalized_spiral") return Family::GeneralizedSpiral;
    throw std::domain_error("unknown map family: " + name);
}

void MapSpec::validate() const {
    if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(alpha) || !std::isfinite(p)) {
        throw std::domain_error("MapSpec: non-finite parameter");
    }
    if (!(p > 0.0)) {
        throw std::domain_error("MapSpec: p must be positive");
    }
    if (family == Family::Spiral && !(c1 > 0.0)) {
        throw std::domain_error("MapSpec: Spiral requires c1 > 0");
    }
    if (family == Family::GeneralizedSpiral) {
        if (!(c1 > 0.0)) {
            throw std::domain_error("MapSpec: GeneralizedSpiral requires c1 > 0");
        }
        if (!(alpha > -1.0 && alpha < 1.0)) {
            throw std::domain_error("MapSpec: GeneralizedSpiral requires -1 < alpha < 1");
        }
    }
}

MapSpec MapSpec::identity() { return MapSpec{}; }

MapSpec MapSpec::spiral(double c1, double c2, double p) {
    MapSpec s{Family::Spiral, c1, c2, 0.0, p};
    s.validate();
    return s;
}

MapSpec MapSpec::rotation_only(double c2, double p) {
    MapSpec s{Family::RotationOnly, 0.0, c2, 0.0, p};
    s.validate();
    return s;
}

MapSpec MapSpec::generalized_spiral(double c1, double c2, double alpha, double p) {
    MapSpec s{Family::GeneralizedSpiral, c1, c2, alpha, p};
    s.validate();
    return s;
}

MapSpec MapSpec::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MapSpec s;
    s.family = family_from_name(j.at("family").get<std::string>());
    s.c1 = j.value("c1", 0.0);
    s.c2 = j.value("c2", 0.0);
    s.alpha = j.value("alpha", 0.0);
    s.p = j.value("p", 1.0);
    s.validate();
    return s;
}

MapSpec MapSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open map spec file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string MapSpec::to_json_text() const {
    nlohmann::json j;
    j["family"] = family_name(family);
    j["c1"] = c1;
    j["c2"] = c2;
    if (family == Family::GeneralizedSpiral) {
        j["alpha"] = alpha;
    }
    j["p"] = p;
    return j.dump();
}

RadialProfile radial_profile(const MapSpec& spec, double r) {
    if (!(r > 0.0)) {
        throw std::domain_error("radial_profile: r must be positive");
    }
    const double L = std::log(1.0 / r);
    if (r >= 1.0 || spec.family == Family::Identity) {
        return RadialProfile{L, 0.0, 1.0, 0.0};
    }
    switch (spec.family) {
        case Family::Spiral:
            if (r < kInnerSeam) {
                return RadialProfile{spec.c1 * L * L, spec.c2 * L * L,
                                     2.0 * spec.c1 * L, 2.0 * spec.c2 * L};
            }
            return RadialProfile{spec.c1 * kLog2 * L, spec.c2 * kLog2 * L,
                                 spec.c1 * kLog2, spec.c2 * kLog2};
        case Family::RotationOnly:
            return RadialProfile{L, -spec.c2 * std::pow(L, 1.5),
                                 1.0, -1.5 * spec.c2 * std::sqrt(L)};
        case Family::GeneralizedSpiral: {
            const double ea = 1.0 + spec.alpha;
            const double eb = 0.5 * (3.0 + spec.alpha);
            if (r < kInnerSeam) {
                const double A = spec.c1 * std::pow(L, ea);
                const double B = spec.c2 * std::pow(L, eb);
                // No closed form exposed for this branch's derivatives;
                // central difference in L.
                const double dL = 1e-6 * std::max(L, 1.0);
                const double dA = (spec.c1 * std::pow(L + dL, ea) - spec.c1 * std::pow(L - dL, ea)) / (2.0 * dL);
                const double dB = (spec.c2 * std::pow(L + dL, eb) - spec.c2 * std::pow(L - dL, eb)) / (2.0 * dL);
                return RadialProfile{A, B, dA, dB};
            }
            const double ka = spec.c1 * std::pow(kLog2, spec.alpha);
            const double kb = spec.c2 * std::pow(kLog2, 0.5 * (1.0 + spec.alpha));
            return RadialProfile{ka * L, kb * L, ka, kb};
        }
        default:
            break;
    }
    throw std::logic_error("radial_profile: unreachable");
}

Complex evaluate(const MapSpec& spec, Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::domain_error("evaluate: non-finite input");
    }
    if (z == Complex{0.0, 0.0}) {
        return z;  // all families extend continuously by 0 -> 0
    }
    if (spec.family == Family::Identity) {
        return z;
    }
    const double r = std::abs(z);
    if (r >= 1.0) {
        return z;
    }
    const RadialProfile prof = radial_profile(spec, r);
    return (z / r) * std::polar(std::exp(-prof.A), prof.B);
}

MapFn evaluator(const MapSpec& spec) {
    spec.validate();
    return [spec](Complex z) { return evaluate(spec, z); };
}

WirtingerPair wirtinger_closed(const MapSpec& spec, Complex z) {
    const double r = std::abs(z);
    if (spec.family != Family::Spiral || !(r > 0.0 && r < kInnerSeam)) {
        throw NoClosedForm("wirtinger_closed: only Spiral on 0 < |z| < 1/2");
    }
    const double L = std::log(1.0 / r);
    const Complex common = std::polar(std::exp(-spec.c1 * L * L), spec.c2 * L * L) / r;
    const Complex unit = z / r;
    const Complex fz = common * Complex{0.5 + spec.c1 * L, -spec.c2 * L};
    const Complex fzbar = unit * unit * common * Complex{-0.5 + spec.c1 * L, -spec.c2 * L};
    return WirtingerPair{fz, fzbar};
}

double beltrami_modulus(const MapSpec& spec, Complex z) {
    if (spec.family == Family::Identity) {
        return 0.0;
    }
    const double r = std::abs(z);
    if (!(r > 0.0)) {
        throw std::domain_error("beltrami_modulus: z = 0 is singular");
    }
    const RadialProfile prof = radial_profile(spec, r);
    if (!(prof.dA > 0.0)) {
        throw std::domain_error("beltrami_modulus: degenerate point (|mu| >= 1)");
    }
    return std::hypot(prof.dA - 1.0, prof.dB) / std::hypot(prof.dA + 1.0, prof.dB);
}

double distortion_radial(const MapSpec& spec, double r) {
    if (spec.family == Family::Identity) {
        return 1.0;
    }
    const RadialProfile prof = radial_profile(spec, r);
    if (!(prof.dA > 0.0)) {
        throw std::domain_error("distortion: degenerate point");
    }
    // (1+|mu|)/(1-|mu|) written without cancellation near |mu| = 1.
    const double a = std::hypot(prof.dA + 1.0, prof.dB);
    const double b = std::hypot(prof.dA - 1.0, prof.dB);
    return (a + b) * (a + b) / (4.0 * prof.dA);
}

double distortion(const MapSpec& spec, Complex z) {
    const double r = std::abs(z);
    if (!(r > 0.0) && spec.family != Family::Identity) {
        throw std::domain_error("distortion: z = 0 is singular");
    }
    return distortion_radial(spec, spec.family == Family::Identity ? 1.0 : r);
}

double asymptotic_distortion_coefficient(const MapSpec& spec) {
    switch (spec.family) {
        case Family::Identity:
            return 0.0;  // conformal
        case Family::Spiral:
            return 2.0 * spec.c1 + 2.0 * spec.c2 * spec.c2 / spec.c1;
        case Family::RotationOnly:
            return 2.25 * spec.c2 * spec.c2;
        case Family::GeneralizedSpiral: {
            // Least-squares slope of K(r) against log(1/r).
            const int n = 20;
            const double l_lo = std::log(1e-10), l_hi = std::log(1e-4);
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (int i = 0; i < n; ++i) {
                const double lr = l_lo + (l_hi - l_lo) * i / (n - 1);
                const double r = std::exp(lr);
                const double x = -lr;
                const double y = distortion_radial(spec, r);
                sx += x; sy += y; sxx += x * x; sxy += x * y;
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        }
    }
    throw std::logic_error("asymptotic_distortion_coefficient: unreachable");
}

bool integrability_predicate(const MapSpec& spec, double p) {
    if (!(p > 0.0)) {
        throw std::domain_error("integrability_predicate: p must be positive");
    }
    switch (spec.family) {
        case Family::Identity:
            return true;
        case Family::Spiral:
            return spec.c1 + spec.c2 * spec.c2 / spec.c1 < 1.0 / p;
        case Family::RotationOnly:
            return 9.0 * spec.c2 * spec.c2 / 8.0 < 1.0 / p;
        case Family::GeneralizedSpiral: {
            const double e = 0.5 * (3.0 + spec.alpha);
            return spec.c2 * spec.c2 * e * e / (2.0 * spec.c1 * (1.0 + spec.alpha)) < 1.0 / p;
        }
    }
    throw std::logic_error("integrability_predicate: unreachable");
}

MapFn normalize_about(const MapFn& f, Complex z0) {
    const Complex base = f(z0);
    const Complex denom = f(z0 + 1.0) - base;
    if (denom == Complex{0.0, 0.0}) {
        throw std::domain_error("normalize_about: f(z0 + 1) = f(z0)");
    }
    const Complex h = 1.0 / denom;
    return [f, z0, base, h](Complex z) { return h * (f(z0 + z) - base); };
}

}  // namespace rotlab
