#pragma once

#include <string>

#include "rotlab/plane.hpp"

namespace rotlab {

enum class Family { Identity, Spiral, RotationOnly, GeneralizedSpiral };

class NoClosedForm : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// One analyzed map family with its parameters. All families are radially
/// symmetric and piecewise-defined with seams at |z| = 1/2 and |z| = 1,
/// identity outside the unit disk.
struct MapSpec {
    Family family = Family::Identity;
    double c1 = 0.0;     // stretch coefficient, > 0 for Spiral / GeneralizedSpiral
    double c2 = 0.0;     // rotation coefficient
    double alpha = 0.0;  // GeneralizedSpiral only, in (-1, 1)
    double p = 1.0;      // target integrability exponent (metadata)

    void validate() const;

    static MapSpec identity();
    static MapSpec spiral(double c1, double c2, double p = 1.0);
    static MapSpec rotation_only(double c2, double p = 1.0);
    static MapSpec generalized_spiral(double c1, double c2, double alpha, double p = 1.0);

    static MapSpec from_json_text(const std::string& text);
    static MapSpec from_json_file(const std::string& path);
    std::string to_json_text() const;
};

/// Radial exponent profile: on each smooth branch the map takes the form
/// h(z) = e^{i theta} e^{-A(L) + i B(L)} with L = log(1/|z|).
struct RadialProfile {
    double A;       // stretch exponent
    double B;       // rotation exponent
    double dA;      // dA/dL
    double dB;      // dB/dL
};

/// Profile of the spec's branch containing radius r. dA/dB are closed-form
/// except for the GeneralizedSpiral inner branch, where they come from a
/// central difference in L.
RadialProfile radial_profile(const MapSpec& spec, double r);

Complex evaluate(const MapSpec& spec, Complex z);

/// Evaluator closure for the spec.
MapFn evaluator(const MapSpec& spec);

/// Closed-form complex derivatives, Spiral family on 0 < |z| < 1/2 only;
/// throws NoClosedForm otherwise.
WirtingerPair wirtinger_closed(const MapSpec& spec, Complex z);

/// |Beltrami coefficient| in [0, 1) at a smooth point.
double beltrami_modulus(const MapSpec& spec, Complex z);

/// Distortion K = (1 + |mu|) / (1 - |mu|) >= 1, evaluated stably from the
/// radial profile.
double distortion(const MapSpec& spec, Complex z);
double distortion_radial(const MapSpec& spec, double r);

/// Leading coefficient of K(r) ~ coeff * log(1/r) as r -> 0.
/// Spiral: 2 c1 + 2 c2^2 / c1. RotationOnly: (9/4) c2^2. GeneralizedSpiral:
/// least-squares slope of K(r) against log(1/r) over r in [1e-10, 1e-4].
/// Identity: 0 (conformal).
double asymptotic_distortion_coefficient(const MapSpec& spec);

/// Strict analytic condition for p-exponentially integrable distortion.
bool integrability_predicate(const MapSpec& spec, double p);

/// Normalization about a base point: z -> h [f(z0 + z) - f(z0)] with h the
/// constant making the image of 1 equal to 1. Fixes 0 and 1.
MapFn normalize_about(const MapFn& f, Complex z0);

}  // namespace rotlab
