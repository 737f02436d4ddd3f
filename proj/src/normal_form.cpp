#include "o2hopf/normal_form.hpp"

#include <cmath>
#include <stdexcept>

#include "o2hopf/errors.hpp"

namespace o2hopf {

namespace {

// tau-component convolution (U1 V1)_k, then d/dx and placement in the second
// component. Output support is the sum of the input supports.
FourierField quadratic_flux(double coeff, const FourierField& U, const FourierField& V) {
    const int n = U.max_mode() + V.max_mode();
    FourierField out(n);
    for (int k = -n; k <= n; ++k) {
        if (k == 0) continue;
        cplx conv(0.0);
        const int lo = std::max(-U.max_mode(), k - V.max_mode());
        const int hi = std::min(U.max_mode(), k + V.max_mode());
        for (int j = lo; j <= hi; ++j) {
            conv += U.tau(j) * V.tau(k - j);
        }
        if (conv != cplx(0.0)) out.set_mode(k, {0.0, coeff * cplx(0.0, k) * conv});
    }
    return out;
}

}  // namespace

FourierField NonlinearityTensors::r11(const FourierField& U, double mu1, double mu2) const {
    const int n = U.max_mode();
    FourierField out(n);
    for (int k = -n; k <= n; ++k) {
        if (k == 0) continue;
        const double k2 = static_cast<double>(k) * k;
        const double k4 = k2 * k2;
        out.set_mode(k, {-mu1 * k4 * U.tau(k), mu2 * k2 * U.u(k)});
    }
    return out;
}

FourierField NonlinearityTensors::r20(const FourierField& U, const FourierField& V) const {
    return quadratic_flux(0.5 * law.sp2(), U, V);
}

FourierField NonlinearityTensors::r30(const FourierField& U, const FourierField& V,
                                      const FourierField& W) const {
    const int n = U.max_mode() + V.max_mode() + W.max_mode();
    FourierField out(n);
    const double coeff = law.sp3() / 6.0;
    for (int k = -n; k <= n; ++k) {
        if (k == 0) continue;
        cplx conv(0.0);
        for (int i = -U.max_mode(); i <= U.max_mode(); ++i) {
            const cplx ui = U.tau(i);
            if (ui == cplx(0.0)) continue;
            for (int j = -V.max_mode(); j <= V.max_mode(); ++j) {
                const cplx vj = V.tau(j);
                if (vj == cplx(0.0)) continue;
                conv += ui * vj * W.tau(k - i - j);
            }
        }
        if (conv != cplx(0.0)) out.set_mode(k, {0.0, coeff * cplx(0.0, k) * conv});
    }
    return out;
}

cplx coeff_a(const CriticalConfig& cfg, double mu1, double mu2) {
    const double k0 = static_cast<double>(cfg.k0);
    const double k2 = k0 * k0;
    const double k6 = k2 * k2 * k2;
    const double theta = -mu1 * k2 + mu2;
    return {0.5 * k2 * theta, -cfg.a_c * k6 / (2.0 * cfg.omega_c) * (mu1 * k2 + mu2)};
}

PsiCoefficient solve_psi_200000(const CriticalConfig& cfg, const NonlinearityTensors& tensors) {
    const CenterBasis b = build_center_basis(cfg);
    const FourierField rhs = tensors.r20(b.xi0, b.xi0);
    const int mode = 2 * cfg.k0;
    const Mat2 A = Mat2::identity() * cplx(0.0, 2.0 * cfg.omega_c) -
                   mode_matrix(mode, cfg.a_c, cfg.delta_c, cfg.sp1);
    Vec2 v;
    try {
        v = A.solve(rhs.mode(mode));
    } catch (const std::domain_error&) {
        throw SingularOperatorError("solve_psi_200000: 2 i omega_c is not in the resolvent set");
    }
    return {PsiIndex{2, 0, 0, 0, 0, 0}, FourierField::single_mode(mode, v.a, v.b)};
}

PsiCoefficient solve_psi_100100(const CriticalConfig& cfg, const NonlinearityTensors& tensors) {
    const CenterBasis b = build_center_basis(cfg);
    const FourierField rhs = tensors.r20(b.xi0, b.xi1.conjugate()) * cplx(-2.0);
    const int mode = 2 * cfg.k0;
    const Mat2 A = mode_matrix(mode, cfg.a_c, cfg.delta_c, cfg.sp1);
    Vec2 w;
    try {
        w = A.solve(rhs.mode(mode));
    } catch (const std::domain_error&) {
        throw SingularOperatorError("solve_psi_100100: 0 is not in the resolvent set");
    }
    return {PsiIndex{1, 0, 0, 1, 0, 0}, FourierField::single_mode(mode, w.a, w.b)};
}

cplx coeff_b0(const CriticalConfig& cfg, const NonlinearityTensors& tensors) {
    const CenterBasis b = build_center_basis(cfg);
    const PsiCoefficient psi = solve_psi_200000(cfg, tensors);
    const FourierField xi0c = b.xi0.conjugate();
    const FourierField terms =
        tensors.r20(xi0c, psi.field) * cplx(2.0) + tensors.r30(b.xi0, b.xi0, xi0c) * cplx(3.0);
    return inner_product(terms, b.eta0);
}

cplx coeff_c0(const CriticalConfig& cfg, const NonlinearityTensors& tensors) {
    const CenterBasis b = build_center_basis(cfg);
    const PsiCoefficient psi = solve_psi_100100(cfg, tensors);
    const FourierField xi1c = b.xi1.conjugate();
    const FourierField terms =
        tensors.r20(b.xi1, psi.field) * cplx(2.0) + tensors.r30(b.xi0, b.xi1, xi1c) * cplx(6.0);
    return inner_product(terms, b.eta0);
}

cplx homological_denominator(const CriticalConfig& cfg) {
    const double k0 = static_cast<double>(cfg.k0);
    const double k2 = k0 * k0;
    const double k3 = k2 * k0;
    const double k4 = k2 * k2;
    const cplx e(cplx(0.0, 2.0 * cfg.omega_c) + cplx(16.0 * k4 - 4.0 * cfg.delta_c * k2, 0.0));
    const cplx f(-8.0 * cfg.a_c * k3, -cfg.omega_c / k0);
    return -2.0 * cfg.sp1 * k0 + e * f;
}

double alpha_constant(const CriticalConfig& cfg) {
    const double k0 = static_cast<double>(cfg.k0);
    const double k2 = k0 * k0;
    const double k4 = k2 * k2;
    const double k8 = k4 * k4;
    const double w = cfg.omega_c;
    const double p = -2.0 * cfg.sp1 * k2 + 2.0 * w * w - 32.0 * k8 * cfg.a_c * (3.0 - cfg.a_c);
    const double q = 12.0 * k2 * w * cfg.delta_c;
    return p * p + q * q;
}

double b0_real_closed(const CriticalConfig& cfg, double sp2) {
    const double k2 = static_cast<double>(cfg.k0) * cfg.k0;
    const double k6 = k2 * k2 * k2;
    return -6.0 * k6 * sp2 * sp2 * cfg.delta_c / alpha_constant(cfg);
}

double b0_imag_quadratic_closed(const CriticalConfig& cfg, double sp2) {
    const double k2 = static_cast<double>(cfg.k0) * cfg.k0;
    const double k4 = k2 * k2;
    const double k8 = k4 * k4;
    const double w = cfg.omega_c;
    return k4 * sp2 * sp2 * (-cfg.sp1 * k2 / w + w - 16.0 * k8 * cfg.a_c * (3.0 - cfg.a_c) / w) /
           alpha_constant(cfg);
}

cplx b0_closed(const CriticalConfig& cfg, const Jet& jet) {
    const double k0 = static_cast<double>(cfg.k0);
    const double k2 = k0 * k0;
    const double k3 = k2 * k0;
    const cplx quad = cplx(0.0, k3 * jet.sp2 * jet.sp2 / (2.0 * cfg.omega_c)) /
                      homological_denominator(cfg);
    return quad + cplx(0.0, jet.sp3 * k2 / (4.0 * cfg.omega_c));
}

cplx c0_closed(const CriticalConfig& cfg, const Jet& jet) {
    const double k0 = static_cast<double>(cfg.k0);
    const double k2 = k0 * k0;
    const double k4 = k2 * k2;
    const double q = cfg.sp1 - 16.0 * cfg.a_c * k4 * (cfg.delta_c - 4.0 * k2);
    return cplx(0.0, -k2 * jet.sp2 * jet.sp2 / (2.0 * cfg.omega_c * q)) +
           cplx(0.0, jet.sp3 * k2 / (2.0 * cfg.omega_c));
}

Vec2 psi200000_closed(const CriticalConfig& cfg, double sp2) {
    const double k0 = static_cast<double>(cfg.k0);
    const double k4 = k0 * k0 * k0 * k0;
    const cplx d = homological_denominator(cfg);
    return {sp2 * k0 / d, sp2 * cplx(cfg.omega_c, -8.0 * cfg.a_c * k4) / d};
}

Vec2 psi100100_closed(const CriticalConfig& cfg, double sp2) {
    const double k0 = static_cast<double>(cfg.k0);
    const double k2 = k0 * k0;
    const double k3 = k2 * k0;
    const double k4 = k2 * k2;
    const double q = cfg.sp1 - 16.0 * cfg.a_c * k4 * (cfg.delta_c - 4.0 * k2);
    return {-sp2 / q, cplx(0.0, 8.0 * cfg.a_c * sp2 * k3) / q};
}

NormalForm build_normal_form(const CriticalConfig& cfg, const PressureLaw& law) {
    NormalForm nf;
    nf.cfg = cfg;
    nf.law = law;
    const NonlinearityTensors tensors{law};
    nf.psi200000 = solve_psi_200000(cfg, tensors);
    nf.psi100100 = solve_psi_100100(cfg, tensors);
    nf.b0 = coeff_b0(cfg, tensors);
    nf.c0 = coeff_c0(cfg, tensors);
    nf.alpha = alpha_constant(cfg);
    return nf;
}

ReducedRates reduced_flow_rhs(const NormalForm& nf, double mu1, double mu2,
                              const ReducedState& s) {
    const cplx a = nf.a(mu1, mu2);
    const double b0r = nf.b0.real(), b0i = nf.b0.imag();
    const double c0r = nf.c0.real(), c0i = nf.c0.imag();
    const double r1sq = s.r1 * s.r1, r2sq = s.r2 * s.r2;
    ReducedRates d;
    d.dr1 = s.r1 * (a.real() + b0r * r1sq + c0r * r2sq);
    d.dr2 = s.r2 * (a.real() + b0r * r2sq + c0r * r1sq);
    d.dtheta1 = nf.cfg.omega_c + a.imag() + b0i * r1sq + c0i * r2sq;
    d.dtheta2 = nf.cfg.omega_c + a.imag() + b0i * r2sq + c0i * r1sq;
    return d;
}

const char* to_string(WaveFamily f) {
    switch (f) {
        case WaveFamily::equilibrium: return "equilibrium";
        case WaveFamily::rotating_1: return "rotating_1";
        case WaveFamily::rotating_2: return "rotating_2";
        case WaveFamily::standing: return "standing";
        case WaveFamily::unclassified: return "unclassified";
    }
    return "unclassified";
}

const char* to_string(Stability s) {
    return s == Stability::stable ? "stable" : "unstable";
}

WavePredictionSet predict_waves(const NormalForm& nf, double mu1, double mu2, double mu_bound) {
    if (std::abs(mu1) + std::abs(mu2) > mu_bound) {
        throw std::domain_error("predict_waves: (mu1, mu2) outside the trusted neighborhood");
    }
    const double k2 = static_cast<double>(nf.cfg.k0) * nf.cfg.k0;
    const double theta = -mu1 * k2 + mu2;
    const cplx a = nf.a(mu1, mu2);
    const double b0r = nf.b0.real();

    WavePredictionSet out;
    out.theta = theta;
    out.degenerate = theta == 0.0;

    WavePrediction eq;
    eq.family = WaveFamily::equilibrium;
    eq.amplitude = 0.0;
    eq.omega_star = nf.cfg.omega_c + a.imag();
    eq.stability = a.real() < 0.0 ? Stability::stable : Stability::unstable;
    if (out.degenerate) eq.stability = Stability::stable;  // marginal; see `degenerate`
    out.waves.push_back(eq);

    if (!out.degenerate && theta * b0r < 0.0) {
        const double rstar = std::sqrt(-k2 * theta / (2.0 * b0r));
        const double rsq = rstar * rstar;
        const double base = nf.cfg.omega_c + a.imag();

        WavePrediction rot1;
        rot1.family = WaveFamily::rotating_1;
        rot1.amplitude = rstar;
        rot1.omega_star = base + nf.b0.imag() * rsq;
        rot1.stability = Stability::unstable;
        out.waves.push_back(rot1);

        WavePrediction rot2 = rot1;
        rot2.family = WaveFamily::rotating_2;
        out.waves.push_back(rot2);

        WavePrediction st;
        st.family = WaveFamily::standing;
        st.amplitude = rstar;
        st.omega_star = base + (nf.b0.imag() + nf.c0.imag()) * rsq;
        st.stability = b0r < 0.0 ? Stability::stable : Stability::unstable;
        out.waves.push_back(st);
    }
    return out;
}

FourierField standing_wave_orbit(const NormalForm& nf, double mu1, double mu2, double delta0,
                                 double delta1, double t) {
    const WavePredictionSet set = predict_waves(nf, mu1, mu2);
    const WavePrediction* standing = nullptr;
    for (const auto& w : set.waves) {
        if (w.family == WaveFamily::standing) standing = &w;
    }
    if (standing == nullptr) {
        throw std::domain_error("standing_wave_orbit: no standing family at these parameters");
    }
    const CenterBasis b = build_center_basis(nf.cfg);
    const double r = standing->amplitude;
    const double w = standing->omega_star;
    const cplx z1 = r * std::exp(cplx(0.0, w * t + delta0));
    const cplx z2 = r * std::exp(cplx(0.0, w * t + delta1));
    FourierField out(std::abs(nf.cfg.k0));
    out += b.xi0 * z1;
    out += b.xi0.conjugate() * std::conj(z1);
    out += b.xi1 * z2;
    out += b.xi1.conjugate() * std::conj(z2);
    return out;
}

ReducedTrack integrate_reduced(const NormalForm& nf, double mu1, double mu2, cplx z1_0,
                               cplx z2_0, double t_end, double dt, int record_stride) {
    if (dt <= 0.0 || t_end < 0.0) throw std::invalid_argument("integrate_reduced: bad dt or t_end");
    if (record_stride < 1) record_stride = 1;
    const cplx a = nf.a(mu1, mu2);
    const cplx lin = cplx(0.0, nf.cfg.omega_c) + a;
    const cplx b0 = nf.b0, c0 = nf.c0;
    auto f = [&](const cplx& z1, const cplx& z2, cplx& d1, cplx& d2) {
        const double n1 = std::norm(z1), n2 = std::norm(z2);
        d1 = lin * z1 + z1 * (b0 * n1 + c0 * n2);
        d2 = lin * z2 + z2 * (b0 * n2 + c0 * n1);
    };

    const long nsteps = std::lround(std::ceil(t_end / dt - 1e-12));
    ReducedTrack track;
    track.times.push_back(0.0);
    track.z1.push_back(z1_0);
    track.z2.push_back(z2_0);
    cplx z1 = z1_0, z2 = z2_0;
    for (long n = 0; n < nsteps; ++n) {
        cplx k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        f(z1, z2, k1a, k1b);
        f(z1 + 0.5 * dt * k1a, z2 + 0.5 * dt * k1b, k2a, k2b);
        f(z1 + 0.5 * dt * k2a, z2 + 0.5 * dt * k2b, k3a, k3b);
        f(z1 + dt * k3a, z2 + dt * k3b, k4a, k4b);
        z1 += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        z2 += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        if ((n + 1) % record_stride == 0 || n + 1 == nsteps) {
            track.times.push_back((n + 1) * dt);
            track.z1.push_back(z1);
            track.z2.push_back(z2);
        }
    }
    return track;
}

}  // namespace o2hopf
