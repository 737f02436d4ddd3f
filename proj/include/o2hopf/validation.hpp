#pragma once

#include <cstdint>
#include <vector>

#include "o2hopf/experiments.hpp"

namespace o2hopf {

// The cross-validation suite tying the closed-form analysis to independent
// oracles and to direct simulation. Each check owns its tolerance; `run_all`
// executes them in a fixed order. Simulation-backed checks share one sweep.
namespace validation {

CheckResult yao_regression();
CheckResult alpha_identity(uint64_t seed);
CheckResult a_eigenvalue_shift_oracle(uint64_t seed);
CheckResult psi_residuals(uint64_t seed);
CheckResult basis_duality();
CheckResult equivariance(uint64_t seed);
CheckResult resolvent_decay();

struct SweepChecks {
    CheckResult amplitude_law;
    CheckResult frequency;
    SweepResult sweep;
};
SweepChecks amplitude_and_frequency(int jobs, uint64_t seed);

CheckResult stability_trichotomy(int jobs, uint64_t seed);
CheckResult reduced_vs_full_defect();

// Optional extra: equal-theta parameter pairs give matching amplitudes.
CheckResult equal_theta_pairs(int jobs, uint64_t seed);

std::vector<CheckResult> run_all(int jobs, uint64_t seed, bool include_extras = false);

}  // namespace validation

}  // namespace o2hopf
