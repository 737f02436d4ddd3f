#include "o2hopf/center_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "o2hopf/errors.hpp"

namespace o2hopf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Nontrivial kernel vector of a rank-one 2x2 matrix, taken from the row with
// the larger norm.
Vec2 kernel_vector(const Mat2& m) {
    const double r0 = std::norm(m.m00) + std::norm(m.m01);
    const double r1 = std::norm(m.m10) + std::norm(m.m11);
    Vec2 v = r0 >= r1 ? Vec2{m.m01, -m.m00} : Vec2{m.m11, -m.m10};
    if (v.norm() == 0.0) throw SingularOperatorError("kernel_vector: matrix is zero");
    return v;
}

// Dual vector at mode k for the eigenvalue i omega_c: solves the rank-one
// adjoint-kernel problem (i omega_c - M_k)^H eta = 0 and normalizes
// <xi, eta> = 1 against the given eigenfunction.
FourierField dual_vector(const CriticalConfig& cfg, int k, const FourierField& xi) {
    const Mat2 A = Mat2::identity() * cplx(0.0, cfg.omega_c) -
                   mode_matrix(k, cfg.a_c, cfg.delta_c, cfg.sp1);
    const Vec2 v = kernel_vector(A.hermitian_transpose());
    FourierField eta = FourierField::single_mode(k, v.a, v.b);
    const cplx pairing = inner_product(xi, eta);
    if (std::abs(pairing) < 1e-14 * (1.0 + eta.norm() * xi.norm())) {
        throw SingularOperatorError("dual_vector: degenerate pairing");
    }
    return eta * std::conj(1.0 / pairing);
}

}  // namespace

FourierField apply_group(const GroupElement& g, const FourierField& U) {
    const int n = U.max_mode();
    FourierField out(n);
    if (g.kind == GroupElement::Kind::translation) {
        for (int k = -n; k <= n; ++k) {
            if (k == 0) continue;
            const cplx phase = std::exp(cplx(0.0, k * g.h));
            out.set_mode(k, U.mode(k) * phase);
        }
    } else {
        for (int k = -n; k <= n; ++k) {
            if (k == 0) continue;
            out.set_mode(k, {U.tau(-k), -U.u(-k)});
        }
    }
    return out;
}

CenterBasis build_center_basis(const CriticalConfig& cfg) {
    const double k0 = static_cast<double>(cfg.k0);
    const cplx w(cfg.omega_c / k0, -cfg.a_c * k0 * k0 * k0);

    CenterBasis b;
    b.cfg = cfg;
    b.xi0 = FourierField::single_mode(cfg.k0, 1.0, w);
    b.xi1 = FourierField::single_mode(-cfg.k0, 1.0, -w);
    b.eta0 = dual_vector(cfg, cfg.k0, b.xi0);
    b.eta1 = dual_vector(cfg, -cfg.k0, b.xi1);

    const std::array<const FourierField*, 2> xis = {&b.xi0, &b.xi1};
    const std::array<const FourierField*, 2> etas = {&b.eta0, &b.eta1};
    for (int i = 0; i < 4; ++i) {
        const FourierField xi = (i % 2 == 0) ? *xis[i / 2] : xis[i / 2]->conjugate();
        for (int j = 0; j < 4; ++j) {
            const FourierField eta = (j % 2 == 0) ? *etas[j / 2] : etas[j / 2]->conjugate();
            b.biorth[i][j] = inner_product(xi, eta);
        }
    }
    return b;
}

std::pair<cplx, cplx> project_center(const CenterBasis& basis, const FourierField& U) {
    return {inner_product(U, basis.eta0), inner_product(U, basis.eta1)};
}

}  // namespace o2hopf
