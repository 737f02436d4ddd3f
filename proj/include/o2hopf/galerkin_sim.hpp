#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "o2hopf/center_basis.hpp"
#include "o2hopf/fourier_field.hpp"
#include "o2hopf/pressure_law.hpp"

namespace o2hopf {

struct SimConfig {
    int n_modes = 64;        // retained positive modes N
    double dt = 1e-3;        // time step
    double t_end = 1.0;      // horizon
    double a = 0.0;
    double delta = 0.0;
    PressureLaw law = PressureLaw::polynomial({0.0, 1.0});
    bool dealias = true;     // zero-padded 3N grid for the nonlinear term
    int record_stride = 1;   // center-track recording cadence, in steps
    int field_stride = 0;    // full-state recording cadence; 0 = first/last only
};

struct Trajectory {
    std::vector<double> times;                      // center-track sample times
    std::vector<std::pair<cplx, cplx>> center_track;  // (z1, z2) when a basis is given
    std::vector<double> state_times;
    std::vector<FourierField> states;               // real snapshots, mean-zero
};

// Fourier-Galerkin integrator for
//   d/dt tau = d/dx u - a d^4/dx^4 tau
//   d/dt u   = sp1 d/dx tau - delta d^2 u - d^4 u + d/dx sigma_pert(tau)
// with sigma_pert(tau) = sigma(tau) - sigma(0) - sigma'(0) tau evaluated
// pseudo-spectrally. Strang splitting: exact per-mode exp(dt/2 M_k) around an
// exact nonlinear substep (tau frozen there, so u += dt * d/dx sigma_pert(tau)
// integrates it exactly); second order overall, mean-zero and conjugate
// symmetry preserved exactly.
//
// A simulator instance is not thread-safe; distinct instances may run
// concurrently (FFTW plan creation is serialized internally).
class GalerkinSimulator {
public:
    explicit GalerkinSimulator(SimConfig cfg);
    ~GalerkinSimulator();
    GalerkinSimulator(GalerkinSimulator&&) noexcept;
    GalerkinSimulator& operator=(GalerkinSimulator&&) = delete;
    GalerkinSimulator(const GalerkinSimulator&) = delete;

    const SimConfig& config() const { return cfg_; }
    int grid_size() const;

    // L U + N(U); requires U real (conjugate-symmetric) and mean-zero.
    FourierField rhs(const FourierField& U) const;

    // One Strang step of size dt (config dt when omitted).
    FourierField step(const FourierField& U, double dt) const;
    FourierField step(const FourierField& U) const { return step(U, cfg_.dt); }

    // Integrates to cfg.t_end from time t0, recording the center track every
    // record_stride steps (plus the initial and final samples).
    Trajectory integrate(const FourierField& U0, const CenterBasis* basis = nullptr,
                         double t0 = 0.0) const;

    struct Impl;

private:
    SimConfig cfg_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace o2hopf
