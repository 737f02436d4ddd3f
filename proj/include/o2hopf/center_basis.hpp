#pragma once

#include <array>

#include "o2hopf/fourier_field.hpp"
#include "o2hopf/spectral_linear.hpp"

namespace o2hopf {

// O(2) group elements acting on fields: T_h U(x) = U(x + h) and
// S (tau, u)(x) = (tau(-x), -u(-x)).
struct GroupElement {
    enum class Kind { translation, reflection };
    Kind kind = Kind::translation;
    double h = 0.0;

    static GroupElement translation(double h) { return {Kind::translation, h}; }
    static GroupElement reflection() { return {Kind::reflection, 0.0}; }
};

// Translation multiplies the mode-k pair by exp(i k h); reflection maps
// (tau_k, u_k) -> (tau_{-k}, -u_{-k}).
FourierField apply_group(const GroupElement& g, const FourierField& U);

// Center eigenfunctions at the critical configuration and their duals:
//   xi0 = e^{i k0 x} (1, omega_c/k0 - i a_c k0^3),  L_c xi0 = i omega_c xi0
//   xi1 = e^{-i k0 x} (1, -omega_c/k0 + i a_c k0^3), L_c xi1 = i omega_c xi1
// eta0, eta1 span the adjoint kernels and are normalized biorthogonally.
struct CenterBasis {
    CriticalConfig cfg;
    FourierField xi0, xi1;
    FourierField eta0, eta1;
    // Gram matrix <row, col> over rows {xi0, xi0*, xi1, xi1*} and columns
    // {eta0, eta0*, eta1, eta1*}; identity when the duals are correct.
    std::array<std::array<cplx, 4>, 4> biorth{};
};

CenterBasis build_center_basis(const CriticalConfig& cfg);

// Center coordinates (z1, z2) = (<U, eta0>, <U, eta1>).
std::pair<cplx, cplx> project_center(const CenterBasis& basis, const FourierField& U);

}  // namespace o2hopf
