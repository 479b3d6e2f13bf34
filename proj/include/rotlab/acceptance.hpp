#pragma once

#include <string>
#include <vector>

namespace rotlab {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

/// Runs the full verification suite. Deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance_suite(unsigned long long seed = 12345);

}  // namespace rotlab
