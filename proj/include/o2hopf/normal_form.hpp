#pragma once

#include <vector>

#include "o2hopf/center_basis.hpp"
#include "o2hopf/pressure_law.hpp"

namespace o2hopf {

// The nonlinearity of the bifurcation system split by homogeneity:
//   R11(U)        = (-mu1 d^4 U1, -mu2 d^2 U2)            (parameter part)
//   R20(U, V)     = (0, sp2/2 d(U1 V1))                   (quadratic)
//   R30(U, V, W)  = (0, sp3/6 d(U1 V1 W1))                (cubic)
// R20/R30 act as symmetric multilinear forms via Fourier convolution.
struct NonlinearityTensors {
    PressureLaw law;

    FourierField r11(const FourierField& U, double mu1, double mu2) const;
    FourierField r20(const FourierField& U, const FourierField& V) const;
    FourierField r30(const FourierField& U, const FourierField& V, const FourierField& W) const;
};

struct PsiIndex {
    int p = 0, q = 0, r = 0, s = 0, l = 0, m = 0;
};

// One coefficient field of the center-manifold expansion
// Psi = sum Psi_{pqrslm} z1^p z1*^q z2^r z2*^s mu1^l mu2^m.
struct PsiCoefficient {
    PsiIndex index;
    FourierField field;
};

// Linear normal-form coefficient: the first-order shift of the critical
// eigenvalue, obtained from <R11(xi0), eta0>:
//   a(mu1, mu2) = k0^2/2 (-mu1 k0^2 + mu2)
//               - i a_c k0^6 / (2 omega_c) (mu1 k0^2 + mu2).
cplx coeff_a(const CriticalConfig& cfg, double mu1, double mu2);

// (2 i omega_c - M_{2 k0}) V = R20(xi0, xi0) at mode 2 k0.
PsiCoefficient solve_psi_200000(const CriticalConfig& cfg, const NonlinearityTensors& tensors);

// M_{2 k0} W = -2 R20(xi0, xi1*) at mode 2 k0.
PsiCoefficient solve_psi_100100(const CriticalConfig& cfg, const NonlinearityTensors& tensors);

// Cubic self-coupling via duality: <2 R20(xi0*, Psi200000) + 3 R30(xi0, xi0, xi0*), eta0>.
cplx coeff_b0(const CriticalConfig& cfg, const NonlinearityTensors& tensors);

// Cubic cross-coupling: <2 R20(xi1, Psi100100) + 6 R30(xi0, xi1, xi1*), eta0>.
cplx coeff_c0(const CriticalConfig& cfg, const NonlinearityTensors& tensors);

// Closed forms kept as an independent algebraic route for cross-checks.
cplx homological_denominator(const CriticalConfig& cfg);  // the 2 i omega_c solve denominator
double alpha_constant(const CriticalConfig& cfg);         // |k0 * denominator|^2
double b0_real_closed(const CriticalConfig& cfg, double sp2);
double b0_imag_quadratic_closed(const CriticalConfig& cfg, double sp2);
cplx b0_closed(const CriticalConfig& cfg, const Jet& jet);
cplx c0_closed(const CriticalConfig& cfg, const Jet& jet);
Vec2 psi200000_closed(const CriticalConfig& cfg, double sp2);
Vec2 psi100100_closed(const CriticalConfig& cfg, double sp2);

struct NormalForm {
    CriticalConfig cfg;
    PressureLaw law;
    cplx b0{0.0};
    cplx c0{0.0};
    double alpha = 0.0;
    PsiCoefficient psi200000;
    PsiCoefficient psi100100;

    cplx a(double mu1, double mu2) const { return coeff_a(cfg, mu1, mu2); }
};

NormalForm build_normal_form(const CriticalConfig& cfg, const PressureLaw& law);

struct ReducedState {
    double r1 = 0.0, r2 = 0.0;
    double theta1 = 0.0, theta2 = 0.0;
};

struct ReducedRates {
    double dr1 = 0.0, dr2 = 0.0;
    double dtheta1 = 0.0, dtheta2 = 0.0;
};

// Truncated cubic polar flow; the O(|mu|) corrections to b, c are set to zero.
ReducedRates reduced_flow_rhs(const NormalForm& nf, double mu1, double mu2,
                              const ReducedState& s);

enum class WaveFamily { equilibrium, rotating_1, rotating_2, standing, unclassified };
enum class Stability { stable, unstable };

const char* to_string(WaveFamily f);
const char* to_string(Stability s);

struct WavePrediction {
    WaveFamily family = WaveFamily::equilibrium;
    double amplitude = 0.0;   // r_*
    double omega_star = 0.0;
    Stability stability = Stability::stable;
    double delta0 = 0.0, delta1 = 0.0;  // torus phases (standing family)
};

struct WavePredictionSet {
    double theta = 0.0;  // -mu1 k0^2 + mu2
    bool degenerate = false;
    std::vector<WavePrediction> waves;
};

// Families, amplitudes r_* = sqrt(-k0^2 theta / (2 Re b0)), frequencies and
// stability labels of the bifurcated waves near (mu1, mu2) = 0.
WavePredictionSet predict_waves(const NormalForm& nf, double mu1, double mu2,
                                double mu_bound = 0.1);

// Point on the standing-wave torus at time t:
//   V0 = r_* (e^{i(w t + d0)} xi0 + e^{i(w t + d1)} xi1) + conjugate terms.
FourierField standing_wave_orbit(const NormalForm& nf, double mu1, double mu2,
                                 double delta0, double delta1, double t);

struct ReducedTrack {
    std::vector<double> times;
    std::vector<cplx> z1, z2;
};

// RK4 integration of the truncated complex normal form
//   dz1/dt = i omega_c z1 + z1 (a + b0 |z1|^2 + c0 |z2|^2), symmetrically in z2.
ReducedTrack integrate_reduced(const NormalForm& nf, double mu1, double mu2, cplx z1_0,
                               cplx z2_0, double t_end, double dt, int record_stride);

}  // namespace o2hopf
