#include "o2hopf/galerkin_sim.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "o2hopf/errors.hpp"
#include "o2hopf/spectral_linear.hpp"

namespace o2hopf {

namespace {
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
constexpr double kCoeffNormLimit = 1e6;
}  // namespace

struct GalerkinSimulator::Impl {
    int grid = 0;
    fftw_complex* phys = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan backward = nullptr;  // spectrum -> physical
    fftw_plan forward = nullptr;   // physical -> spectrum
    std::vector<Mat2> half_prop;   // exp(dt/2 M_k), k = 1..N, for cfg.dt
    double cached_dt = 0.0;

    ~Impl() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        if (backward) fftw_destroy_plan(backward);
        if (forward) fftw_destroy_plan(forward);
        if (phys) fftw_free(phys);
        if (spec) fftw_free(spec);
    }
};

GalerkinSimulator::GalerkinSimulator(SimConfig cfg)
    : cfg_(std::move(cfg)), impl_(std::make_unique<Impl>()) {
    if (cfg_.n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
    if (cfg_.dt <= 0.0) throw std::invalid_argument("dt must be positive");
    if (cfg_.t_end < 0.0) throw std::invalid_argument("t_end must be nonnegative");
    if (cfg_.record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");

    impl_->grid = cfg_.dealias ? 3 * cfg_.n_modes : 2 * cfg_.n_modes + 1;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        impl_->phys = fftw_alloc_complex(impl_->grid);
        impl_->spec = fftw_alloc_complex(impl_->grid);
        impl_->backward = fftw_plan_dft_1d(impl_->grid, impl_->spec, impl_->phys, FFTW_BACKWARD,
                                           FFTW_ESTIMATE);
        impl_->forward = fftw_plan_dft_1d(impl_->grid, impl_->phys, impl_->spec, FFTW_FORWARD,
                                          FFTW_ESTIMATE);
    }

    impl_->half_prop.resize(cfg_.n_modes);
    for (int k = 1; k <= cfg_.n_modes; ++k) {
        impl_->half_prop[k - 1] =
            (mode_matrix(k, cfg_.a, cfg_.delta, cfg_.law.sp1()) * cplx(0.5 * cfg_.dt))
                .exponential();
    }
    impl_->cached_dt = cfg_.dt;
}

GalerkinSimulator::~GalerkinSimulator() = default;
GalerkinSimulator::GalerkinSimulator(GalerkinSimulator&&) noexcept = default;

int GalerkinSimulator::grid_size() const { return impl_->grid; }

namespace {

// Spreads the retained modes of the tau component onto the (possibly padded)
// grid spectrum, synthesizes physical values, applies f pointwise and returns
// the normalized transform back. `out[k]` is valid for 1 <= |k| <= n_modes.
template <typename F>
void pseudo_spectral_apply(const FourierField& U, int n_modes, const GalerkinSimulator::Impl* im,
                           double radius, F&& f, std::vector<cplx>& out) {
    const int g = im->grid;
    for (int j = 0; j < g; ++j) im->spec[j][0] = im->spec[j][1] = 0.0;
    for (int k = 1; k <= n_modes; ++k) {
        const cplx cp = U.tau(k);
        const cplx cm = U.tau(-k);
        im->spec[k][0] = cp.real();
        im->spec[k][1] = cp.imag();
        im->spec[g - k][0] = cm.real();
        im->spec[g - k][1] = cm.imag();
    }
    fftw_execute(im->backward);

    for (int j = 0; j < g; ++j) {
        const double tau = im->phys[j][0];
        if (std::abs(tau) > radius) {
            throw NumericalError("pseudo-spectral overflow: |tau| exceeds the validity radius");
        }
        im->phys[j][0] = f(tau);
        im->phys[j][1] = 0.0;
    }
    fftw_execute(im->forward);

    const double inv = 1.0 / g;
    out.assign(2 * n_modes + 1, cplx(0.0));
    for (int k = 1; k <= n_modes; ++k) {
        const cplx wp(im->spec[k][0] * inv, im->spec[k][1] * inv);
        const cplx wm(im->spec[g - k][0] * inv, im->spec[g - k][1] * inv);
        // symmetrize so conjugate symmetry of the input survives bitwise
        const cplx sym = 0.5 * (wp + std::conj(wm));
        out[n_modes + k] = sym;
        out[n_modes - k] = std::conj(sym);
    }
}

}  // namespace

FourierField GalerkinSimulator::rhs(const FourierField& U) const {
    const int n = cfg_.n_modes;
    const FourierField Un = U.max_mode() == n ? U : U.resized(n);
    FourierField out = apply_operator(cfg_.a, cfg_.delta, cfg_.law.sp1(), Un);

    std::vector<cplx> w;
    const PressureLaw& law = cfg_.law;
    pseudo_spectral_apply(
        Un, n, impl_.get(), law.validity_radius(),
        [&law](double tau) { return law.perturbation(tau); }, w);
    for (int k = -n; k <= n; ++k) {
        if (k == 0) continue;
        out.add_mode(k, {0.0, cplx(0.0, static_cast<double>(k)) * w[n + k]});
    }
    return out;
}

FourierField GalerkinSimulator::step(const FourierField& U, double dt) const {
    const int n = cfg_.n_modes;
    FourierField V = U.max_mode() == n ? U : U.resized(n);

    if (dt != impl_->cached_dt) {
        for (int k = 1; k <= n; ++k) {
            impl_->half_prop[k - 1] =
                (mode_matrix(k, cfg_.a, cfg_.delta, cfg_.law.sp1()) * cplx(0.5 * dt))
                    .exponential();
        }
        impl_->cached_dt = dt;
    }

    auto linear_half = [&](FourierField& F) {
        for (int k = 1; k <= n; ++k) {
            const Mat2& P = impl_->half_prop[k - 1];
            F.set_mode(k, P * F.mode(k));
            F.set_mode(-k, P.conjugate() * F.mode(-k));
        }
    };

    linear_half(V);

    std::vector<cplx> w;
    const PressureLaw& law = cfg_.law;
    pseudo_spectral_apply(
        V, n, impl_.get(), law.validity_radius(),
        [&law](double tau) { return law.perturbation(tau); }, w);
    for (int k = -n; k <= n; ++k) {
        if (k == 0) continue;
        V.add_mode(k, {0.0, dt * cplx(0.0, static_cast<double>(k)) * w[n + k]});
    }

    linear_half(V);

    if (V.max_abs_coeff() > kCoeffNormLimit) {
        throw InstabilityError("step: coefficient norm exceeded the stability guard", 0.0);
    }
    return V;
}

Trajectory GalerkinSimulator::integrate(const FourierField& U0, const CenterBasis* basis,
                                        double t0) const {
    const int n = cfg_.n_modes;
    FourierField U = U0.max_mode() == n ? U0 : U0.resized(n);
    if (!U.is_real(1e-10)) {
        throw std::invalid_argument("integrate: initial data must be a real field");
    }

    const long nsteps = std::lround(std::ceil(cfg_.t_end / cfg_.dt - 1e-12));
    Trajectory traj;
    auto record = [&](double t, const FourierField& F) {
        traj.times.push_back(t);
        if (basis != nullptr) {
            traj.center_track.push_back(project_center(*basis, F));
        }
    };
    auto record_state = [&](double t, const FourierField& F) {
        traj.state_times.push_back(t);
        traj.states.push_back(F);
    };

    record(t0, U);
    record_state(t0, U);
    for (long s = 0; s < nsteps; ++s) {
        try {
            U = step(U, cfg_.dt);
        } catch (const InstabilityError&) {
            throw InstabilityError("integrate: blow-up", t0 + (s + 1) * cfg_.dt);
        } catch (const NumericalError&) {
            throw InstabilityError("integrate: pseudo-spectral overflow", t0 + (s + 1) * cfg_.dt);
        }
        const double t = t0 + (s + 1) * cfg_.dt;
        const bool last = s + 1 == nsteps;
        if ((s + 1) % cfg_.record_stride == 0 || last) record(t, U);
        if ((cfg_.field_stride > 0 && (s + 1) % cfg_.field_stride == 0) || last) {
            record_state(t, U);
        }
    }
    return traj;
}

}  // namespace o2hopf
