#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "o2hopf/galerkin_sim.hpp"
#include "o2hopf/normal_form.hpp"

namespace o2hopf {

struct WaveDiagnostics {
    double r1_mean = 0.0;
    double r2_mean = 0.0;
    double omega_fit = 0.0;
    double residual = 0.0;  // RMS phase-fit residual (radians)
    WaveFamily family_guess = WaveFamily::unclassified;
    bool converged = false;
};

// Tail statistics of a center track: mean amplitudes, a least-squares
// frequency from the unwrapped phase of the dominant coordinate, a plateau
// check (amplitudes varying < 1% over the tail) and the family label.
WaveDiagnostics classify_trajectory(const Trajectory& traj, double tail_fraction);

struct SweepRow {
    double mu1 = 0.0, mu2 = 0.0;
    double theta = 0.0;
    double amplitude = 0.0;
    double r_star = 0.0;
    double omega = 0.0;
    double omega_pred = 0.0;
    WaveFamily family = WaveFamily::unclassified;
    bool converged = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (theta, mu1)
    double slope = 0.0;          // log(amplitude) vs log(theta) fit
    uint64_t seed = 0;
};

struct SweepSettings {
    int n_modes = 64;
    double dt = 0.0;          // 0 = 1e-3 * (2 pi / omega_c)
    double horizon_cap = 1e4;
    int record_stride = 0;    // 0 = about 64 samples per linear period
    double tail_fraction = 0.25;
    double perturbation = 0.1;  // relative size of the random kick off the predicted wave
    uint64_t seed = 12345;
    int jobs = 1;
};

// DNS at each (mu1, mu2), started from the predicted attractor plus a seeded
// random mean-zero perturbation, integrated to a relative plateau (1% over
// the trailing quarter) with horizon 50/|a_r| capped at horizon_cap.
SweepResult amplitude_scaling_sweep(const CriticalConfig& cfg, const PressureLaw& law,
                                    const std::vector<std::pair<double, double>>& mu_points,
                                    const SweepSettings& settings);

// Single DNS point with the sweep's initial-data and convergence policy.
struct PointRun {
    SweepRow row;
    WaveDiagnostics diag;
    Trajectory traj;
};
PointRun run_sweep_point(const NormalForm& nf, double mu1, double mu2,
                         const SweepSettings& settings);

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;         // wall time of the check
    double budget_seconds = 0.0;  // 0 = no runtime budget
};

// Closed-form coefficient oracles: eigenvalue-shift Richardson test for the
// linear coefficient, the alpha identity for b0, the k0 = 1 quadratic-flux
// regression, and the homological-solve residuals.
std::vector<CheckResult> coefficient_oracle_suite(const CriticalConfig& cfg,
                                                  const PressureLaw& law, uint64_t seed);

struct ReducedVsFullReport {
    double defect = 0.0;       // max |z_reduced - z_full| at amplitude a0
    double defect_half = 0.0;  // same at a0/2
    double ratio = 0.0;
    double axis_leak = 0.0;    // max |z2| from rotating-type initial data
    bool pass = false;
};

// Integrates the truncated normal form and the Galerkin system from matched
// center coordinates (z1 = z2 = a0) over T = 20/omega_c and Richardson-checks
// that the defect is cubic in the amplitude (ratio >= 3 under halving).
ReducedVsFullReport reduced_vs_full(const CriticalConfig& cfg, const PressureLaw& law,
                                    double mu1, double mu2, double a0, int n_modes = 32);

// Deterministic mean-zero real field with random low-mode content.
FourierField random_real_field(int n_modes, int max_excited, double norm, uint64_t seed);

// Bounded-concurrency helper used by sweeps; results keep input order.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace o2hopf
