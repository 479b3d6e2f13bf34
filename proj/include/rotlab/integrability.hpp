#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotlab/map_family.hpp"

namespace rotlab {

enum class NumericVerdict { Converged, Diverged, Inconclusive };

std::string verdict_name(NumericVerdict v);

/// Outcome of the singular radial quadrature of e^{p K(r)}.
struct IntegrabilityVerdict {
    double p;
    bool analytic;                      // from integrability_predicate
    NumericVerdict numeric;
    std::optional<double> value;        // set when converged
    // (r_inner, log of shell contribution) per dyadic shell, outermost first.
    std::vector<std::pair<double, double>> shells;
};

/// Integrates 2 pi r e^{p K(r)} over dyadic shells [2^{-k-1}, 2^{-k}] r_outer
/// descending to r = 2^{-60} r_outer, accumulating in log space so e^{p K}
/// never overflows. Converged / diverged is read off the tail trend of the
/// shell contributions; near-critical trends are left inconclusive.
IntegrabilityVerdict radial_exp_integral(const MapSpec& spec, double p,
                                         double r_outer = 0.5);

struct GridPointResult {
    MapSpec spec;
    bool analytic;
    NumericVerdict numeric;
    bool agree;         // converged<->true, diverged<->false
    bool inconclusive;
};

struct GridAgreementReport {
    std::vector<GridPointResult> points;
    int disagreements = 0;
    int inconclusive = 0;
    bool all_agree() const { return disagreements == 0; }
};

/// Runs both classifiers over a parameter grid and reports any disagreement.
/// Inconclusive verdicts are flagged, not counted as disagreements.
GridAgreementReport classify_grid(const std::vector<MapSpec>& grid, double p);

}  // namespace rotlab
