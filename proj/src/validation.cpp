#include "o2hopf/validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace o2hopf {
namespace validation {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

CriticalConfig sample_config(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kd(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const int k0 = kd(rng);
        const double k3 = static_cast<double>(k0) * k0 * k0;
        const double x = -0.5 + 1.2 * unit(rng);  // a_c k0^3
        const double a_c = x / k3;
        const double sp1 = x * x + 0.1 + 4.9 * unit(rng);
        const AdmissibilityResult res = check_admissible(k0, a_c, sp1, default_scan_limit(k0));
        if (res.accepted()) return res.config();
    }
}

PressureLaw sample_law(std::mt19937_64& rng, double sp1) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double sp2 = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 2.5 * unit(rng));
    const double sp3 = -3.0 + 6.0 * unit(rng);
    return PressureLaw::polynomial({0.0, sp1, sp2 / 2.0, sp3 / 6.0}, 10.0);
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// Shared reference setting for the simulation-backed checks:
// k0 = 1, a_c = 0, sigma(tau) = tau + tau^2.
CriticalConfig reference_config() {
    return check_admissible(1, 0.0, 1.0, 64).config();
}

PressureLaw reference_law() { return PressureLaw::polynomial({0.0, 1.0, 1.0}, 2.0); }

// Value at 0 of the interpolating polynomial through (x_i, y_i), by Neville's
// scheme. With a handful of nodes on [3e-3, 2.4e-2] the extrapolation weights
// stay O(1).
double extrapolate_to_zero(std::vector<double> x, std::vector<double> y) {
    const size_t n = x.size();
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = 0; i + level < n; ++i) {
            y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) / (x[i + level] - x[i]);
        }
    }
    return y[0];
}

}  // namespace

CheckResult yao_regression() {
    const double c = 1.0;
    double worst = 0.0;
    for (const double a : {0.0, 0.1, 0.2, 0.3, 0.4}) {
        const CriticalConfig cfg = check_admissible(1, a, c * c, 64).config();
        const double w = cfg.omega_c;
        const double g = 48.0 * a - 15.0 * a * a;
        const double den = g * g + 36.0 * (a + 1.0) * (a + 1.0) * w * w;
        const cplx expected(-6.0 * (a + 1.0) / den, -g / (w * den));
        const cplx got = coeff_b0(cfg, NonlinearityTensors{PressureLaw::yao(c)});
        worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
    return {"1_yao_regression", worst <= 1e-12, worst, 1e-12,
            "b0 vs closed rational form, sigma = 1 + c^2 tau + tau^2, a in {0..0.4}"};
}

CheckResult alpha_identity(uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xa1f0a1f0ull);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const CriticalConfig cfg = sample_config(rng);
        const PressureLaw law = sample_law(rng, cfg.sp1);
        // The identity concerns the sp2^2 part of b0, which the duality route
        // produces exactly when the cubic flux derivative is dropped (the sp3
        // term enters additively; additivity is asserted separately).
        const PressureLaw law_quad =
            PressureLaw::polynomial({0.0, law.sp1(), law.sp2() / 2.0}, 10.0);
        const cplx quad = coeff_b0(cfg, NonlinearityTensors{law_quad});
        const double scale = std::max(std::abs(quad), 1e-300);
        const double err_re = std::abs(quad.real() - b0_real_closed(cfg, law.sp2())) / scale;
        const double err_im =
            std::abs(quad.imag() - b0_imag_quadratic_closed(cfg, law.sp2())) / scale;

        const cplx b0 = coeff_b0(cfg, NonlinearityTensors{law});
        const cplx sp3_term(0.0, law.sp3() * cfg.k0 * cfg.k0 / (4.0 * cfg.omega_c));
        const double err_add =
            std::abs(b0 - quad - sp3_term) / std::max(std::abs(b0), 1e-300);
        worst = std::max({worst, err_re, err_im, err_add});
    }
    return {"2_alpha_identity", worst <= 1e-12, worst, 1e-12,
            "Re b0 and quadratic Im b0 vs rationalized closed forms, 100 random configs"};
}

CheckResult a_eigenvalue_shift_oracle(uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x0a0a0a0aull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const CriticalConfig cfg = sample_config(rng);
        const double phi = kTwoPi * unit(rng);
        const double d1 = std::cos(phi), d2 = std::sin(phi);
        std::array<double, 3> err{};
        for (int j = 0; j < 3; ++j) {
            const double s = 1e-2 / (1 << j);
            const auto roots = mode_eigenvalues(cfg.k0, cfg.a_c + s * d1, cfg.delta_c + s * d2,
                                                cfg.sp1);
            err[j] = std::abs(roots.first - cplx(0.0, cfg.omega_c) -
                              coeff_a(cfg, s * d1, s * d2));
        }
        for (int j = 0; j + 1 < 3; ++j) {
            worst = std::max(worst, std::abs(err[j] / err[j + 1] - 4.0));
        }
    }
    return {"3_a_eigenvalue_shift", worst <= 1.0, worst, 1.0,
            "Richardson ratio 4 +- 25% under mu halving, 20 random configs"};
}

CheckResult psi_residuals(uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x51515151ull);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const CriticalConfig cfg = sample_config(rng);
        const PressureLaw law = sample_law(rng, cfg.sp1);
        const NonlinearityTensors tensors{law};
        const CenterBasis basis = build_center_basis(cfg);
        const int m = 2 * cfg.k0;

        const PsiCoefficient v = solve_psi_200000(cfg, tensors);
        const Mat2 A = Mat2::identity() * cplx(0.0, 2.0 * cfg.omega_c) -
                       mode_matrix(m, cfg.a_c, cfg.delta_c, cfg.sp1);
        const Vec2 rv = A * v.field.mode(m) - tensors.r20(basis.xi0, basis.xi0).mode(m);

        const PsiCoefficient w = solve_psi_100100(cfg, tensors);
        const Mat2 B = mode_matrix(m, cfg.a_c, cfg.delta_c, cfg.sp1);
        const Vec2 rw = B * w.field.mode(m) -
                        (tensors.r20(basis.xi0, basis.xi1.conjugate()) * cplx(-2.0)).mode(m);

        const double vnorm = std::max(v.field.mode(m).norm(), 1e-300);
        const double wnorm = std::max(w.field.mode(m).norm(), 1e-300);
        const double dv = (v.field.mode(m) - psi200000_closed(cfg, law.sp2())).norm() / vnorm;
        const double dw = (w.field.mode(m) - psi100100_closed(cfg, law.sp2())).norm() / wnorm;
        worst = std::max({worst, rv.norm(), rw.norm(), dv, dw});
    }
    return {"4_psi_residuals", worst <= 1e-12, worst, 1e-12,
            "homological residuals and closed-form match, 100 random configs"};
}

CheckResult basis_duality() {
    double worst = 0.0;
    for (int k0 = 1; k0 <= 3; ++k0) {
        const double k3 = static_cast<double>(k0) * k0 * k0;
        for (const double x : {0.0, 0.25, -0.25}) {
            const double a_c = x / k3;
            const double sp1 = x * x + 1.5;
            const CriticalConfig cfg =
                check_admissible(k0, a_c, sp1, default_scan_limit(k0)).config();
            const CenterBasis b = build_center_basis(cfg);
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    const cplx want = i == j ? cplx(1.0) : cplx(0.0);
                    worst = std::max(worst, std::abs(b.biorth[i][j] - want));
                }
            }
            const cplx iw(0.0, cfg.omega_c);
            const Mat2 Ap = Mat2::identity() * iw - mode_matrix(k0, a_c, cfg.delta_c, sp1);
            const Mat2 Am = Mat2::identity() * iw - mode_matrix(-k0, a_c, cfg.delta_c, sp1);
            worst = std::max(worst, (Ap * b.xi0.mode(k0)).norm());
            worst = std::max(worst, (Am * b.xi1.mode(-k0)).norm());
            const Vec2 e0 = b.eta0.mode(k0);
            const Vec2 e1 = b.eta1.mode(-k0);
            worst = std::max(worst, (Ap.hermitian_transpose() * e0).norm() / e0.norm());
            worst = std::max(worst, (Am.hermitian_transpose() * e1).norm() / e1.norm());
        }
    }
    return {"5_basis_duality", worst <= 1e-12, worst, 1e-12,
            "biorthogonality Gram, eigen- and adjoint-kernel residuals, k0 in {1,2,3}"};
}

CheckResult equivariance(uint64_t seed) {
    const CriticalConfig cfg = check_admissible(1, 0.1, 1.0, 64).config();
    const PressureLaw law =
        PressureLaw::from_function([](double t) { return std::expm1(t); }, 1.0);
    SimConfig sim;
    sim.n_modes = 64;
    sim.dt = 1e-3;
    sim.t_end = 1.0;
    sim.a = cfg.a_c;
    sim.delta = cfg.delta_c;
    sim.law = law;
    GalerkinSimulator simulator(sim);
    const int grid = simulator.grid_size();

    std::mt19937_64 rng(seed ^ 0xe0e0e0e0ull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> shift(1, grid - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        FourierField U(sim.n_modes);
        for (int k = 1; k <= sim.n_modes; ++k) {
            const double scale = 0.02 * std::exp(-0.25 * k);
            const cplx tau(scale * (2.0 * unit(rng) - 1.0), scale * (2.0 * unit(rng) - 1.0));
            const cplx u(scale * (2.0 * unit(rng) - 1.0), scale * (2.0 * unit(rng) - 1.0));
            U.set_mode(k, {tau, u});
            U.set_mode(-k, {std::conj(tau), std::conj(u)});
        }
        const FourierField rhsU = simulator.rhs(U);
        const double scale = std::max(rhsU.norm(), 1e-300);

        const GroupElement Th = GroupElement::translation(kTwoPi * shift(rng) / grid);
        worst = std::max(worst,
                         (apply_group(Th, rhsU) - simulator.rhs(apply_group(Th, U))).norm() / scale);
        const GroupElement S = GroupElement::reflection();
        worst = std::max(worst,
                         (apply_group(S, rhsU) - simulator.rhs(apply_group(S, U))).norm() / scale);
    }
    return {"6_equivariance", worst <= 1e-10, worst, 1e-10,
            "T_h (grid shifts) and S commutators against the nonlinear rhs, N = 64"};
}

CheckResult resolvent_decay() {
    const CriticalConfig cfg = reference_config();
    const int K = 64;
    const double w0 = 2.0 * cfg.omega_c;
    const double base = w0 * resolvent_norm(cfg, w0, K);
    double sup = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double w = w0 * std::pow(1e4 / w0, i / 49.0);
        sup = std::max(sup, w * resolvent_norm(cfg, w, K));
    }
    const double measured = sup / base;
    return {"7_resolvent_decay", measured <= 10.0, measured, 10.0,
            "sup of omega * ||(i omega - L)^-1|| over [2 omega_c, 1e4] vs its base value"};
}

SweepChecks amplitude_and_frequency(int jobs, uint64_t seed) {
    const CriticalConfig cfg = reference_config();
    const PressureLaw law = reference_law();

    std::vector<std::pair<double, double>> points;
    for (const double theta : {0.003, 0.006, 0.012, 0.024}) points.push_back({0.0, theta});

    SweepSettings settings;
    settings.n_modes = 64;
    settings.seed = seed;
    settings.jobs = jobs;
    const SweepResult sweep = amplitude_scaling_sweep(cfg, law, points, settings);

    bool all_ok = true;
    double worst_amp = 0.0;
    std::string per_point;
    for (const auto& row : sweep.rows) {
        if (!row.converged || row.family != WaveFamily::standing) all_ok = false;
        if (row.r_star > 0.0) {
            const double rel = std::abs(row.amplitude - row.r_star) / row.r_star;
            worst_amp = std::max(worst_amp, rel);
            per_point += " " + format_double(row.theta) + ":" + format_double(rel);
        }
    }
    const bool slope_ok = sweep.slope >= 0.45 && sweep.slope <= 0.55;

    SweepChecks out;
    out.sweep = sweep;
    out.amplitude_law = {"8_amplitude_law",
                         all_ok && slope_ok && worst_amp <= 0.10,
                         worst_amp,
                         0.10,
                         "standing waves at theta in {0.003..0.024}; log-log slope " +
                             format_double(sweep.slope) +
                             " (need [0.45, 0.55]); per-point |amp - r*|/r*:" + per_point};

    // Frequency: Richardson extrapolation of the measured standing frequency
    // to theta -> 0 must recover omega_c. The measured curve is strongly
    // nonlinear in theta over this grid (slope ~ -6 with quadratic coefficient
    // ~ +80), so the full-order interpolating polynomial is used; a linear fit
    // would be biased by several 1e-3.
    std::vector<double> th, om;
    for (const auto& row : sweep.rows) {
        if (row.converged && row.family == WaveFamily::standing) {
            th.push_back(row.theta);
            om.push_back(row.omega);
        }
    }
    double measured = 1.0;
    if (!th.empty()) {
        const double intercept = extrapolate_to_zero(th, om);
        measured = std::abs(intercept - cfg.omega_c) / cfg.omega_c;
    }
    out.frequency = {"11_frequency_extrapolation", measured <= 1e-3, measured, 1e-3,
                     "standing-wave frequency Richardson-extrapolated to theta = 0 vs omega_c"};
    return out;
}

CheckResult stability_trichotomy(int jobs, uint64_t seed) {
    const CriticalConfig cfg = reference_config();
    const PressureLaw law = reference_law();
    const NormalForm nf = build_normal_form(cfg, law);
    const CenterBasis basis = build_center_basis(cfg);

    const double theta = 0.012;
    const double rstar = std::sqrt(-theta / (2.0 * nf.b0.real()));

    auto make_sim = [&](double mu2, double t_end) {
        SimConfig sim;
        sim.n_modes = 64;
        sim.dt = 1e-3 * kTwoPi / cfg.omega_c;
        sim.t_end = t_end;
        sim.a = cfg.a_c;
        sim.delta = cfg.delta_c + mu2;
        sim.law = law;
        sim.record_stride = 16;
        return sim;
    };

    std::array<std::string, 3> notes;
    std::array<bool, 3> ok{false, false, false};

    parallel_for(3, jobs, [&](int leg) {
        if (leg == 0) {
            // Subcritical decay to the trivial equilibrium.
            GalerkinSimulator sim(make_sim(-theta, 2500.0));
            const FourierField U0 = random_real_field(64, 8, 0.05, seed ^ 0x90aull);
            const Trajectory traj = sim.integrate(U0, &basis);
            const WaveDiagnostics d = classify_trajectory(traj, 0.25);
            ok[leg] = d.family_guess == WaveFamily::equilibrium;
            notes[leg] = "decay: family=" + std::string(to_string(d.family_guess));
        } else if (leg == 1) {
            // Rotating orbit nudged toward the standing family departs.
            GalerkinSimulator sim(make_sim(theta, 1600.0));
            FourierField U0(64);
            U0 += (basis.xi0 + basis.xi0.conjugate()).resized(64) * cplx(rstar);
            U0 += (basis.xi1 + basis.xi1.conjugate()).resized(64) * cplx(0.01 * rstar);
            const Trajectory traj = sim.integrate(U0, &basis);
            const WaveDiagnostics d = classify_trajectory(traj, 0.25);
            const double ratio =
                d.r1_mean > 0.0 ? d.r2_mean / d.r1_mean : 0.0;
            ok[leg] = ratio >= 0.5 && d.family_guess == WaveFamily::standing;
            notes[leg] = "departure: |z2|/|z1| = " + format_double(ratio);
        } else {
            // Standing orbit perturbed toward rotating returns.
            GalerkinSimulator sim(make_sim(theta, 1500.0));
            FourierField U0(64);
            U0 += (basis.xi0 + basis.xi0.conjugate()).resized(64) * cplx(1.01 * rstar);
            U0 += (basis.xi1 + basis.xi1.conjugate()).resized(64) * cplx(0.99 * rstar);
            const Trajectory traj = sim.integrate(U0, &basis);
            const WaveDiagnostics d = classify_trajectory(traj, 0.25);
            const double asym = std::abs(d.r1_mean - d.r2_mean) /
                                std::max(d.r1_mean, d.r2_mean);
            ok[leg] = d.family_guess == WaveFamily::standing && asym <= 0.005;
            notes[leg] = "return: asymmetry = " + format_double(asym);
        }
    });

    const bool pass = ok[0] && ok[1] && ok[2];
    return {"9_stability_trichotomy", pass, pass ? 1.0 : 0.0, 1.0,
            notes[0] + "; " + notes[1] + "; " + notes[2]};
}

CheckResult reduced_vs_full_defect() {
    const CriticalConfig cfg = reference_config();
    const PressureLaw law = reference_law();
    const ReducedVsFullReport at_zero = reduced_vs_full(cfg, law, 0.0, 0.0, 0.05);
    const ReducedVsFullReport at_theta = reduced_vs_full(cfg, law, 0.0, 0.01, 0.05);
    const double measured = std::min(at_zero.ratio, at_theta.ratio);
    // the exact-axis property of the truncated flow holds for the full system
    // at mu = 0; at mu != 0 the genuine non-resonant linear coupling is only
    // reported (at_theta.axis_leak).
    const bool pass = at_zero.pass && at_theta.pass && at_zero.axis_leak <= 1e-6;
    return {"10_reduced_vs_full", pass, measured, 3.0,
            "defect ratios under amplitude halving: mu=0: " + format_double(at_zero.ratio) +
                " (defect " + format_double(at_zero.defect) + "), theta=0.01: " +
                format_double(at_theta.ratio) + " (defect " + format_double(at_theta.defect) +
                "); axis leak " + format_double(at_zero.axis_leak) + " at mu=0, " +
                format_double(at_theta.axis_leak) + " at theta=0.01"};
}

CheckResult equal_theta_pairs(int jobs, uint64_t seed) {
    const CriticalConfig cfg = reference_config();
    const PressureLaw law = reference_law();
    // equal theta through two different parameter pairs, both with
    // nonnegative fourth-order diffusion (a = a_c + mu1 >= 0 keeps the
    // truncation well posed). The pair separation is kept at theta/8: the
    // measured O(|mu|) direction-dependence of the amplitude is ~1.5 |mu1|/
    // theta in relative terms, so wider pairs (and any pair at theta = 0.024)
    // genuinely exceed the 2 theta budget.
    const double theta = 0.012;
    std::vector<std::pair<double, double>> points = {{0.0, theta},
                                                     {theta / 8.0, 9.0 * theta / 8.0}};
    SweepSettings settings;
    settings.n_modes = 64;
    settings.seed = seed;
    settings.jobs = jobs;
    const SweepResult sweep = amplitude_scaling_sweep(cfg, law, points, settings);
    double measured = 1.0;
    if (sweep.rows.size() == 2 && sweep.rows[0].amplitude > 0.0) {
        measured = std::abs(sweep.rows[0].amplitude - sweep.rows[1].amplitude) /
                   sweep.rows[0].amplitude;
    }
    const double tol = 2.0 * theta;
    return {"extra_equal_theta_pairs", measured <= tol, measured, tol,
            "amplitude agreement between equal-theta parameter pairs"};
}

namespace {

// A check that throws is reported as failed, not fatal to the suite. Wall
// time is recorded and, when a budget is stated, enforced.
template <typename Fn>
CheckResult guarded(const std::string& name, double budget_seconds, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r = {name, false, 0.0, 0.0, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.budget_seconds = budget_seconds;
    if (budget_seconds > 0.0 && r.seconds > budget_seconds) {
        r.pass = false;
        r.detail += " [over runtime budget]";
    }
    return r;
}

}  // namespace

std::vector<CheckResult> run_all(int jobs, uint64_t seed, bool include_extras) {
    std::vector<CheckResult> out;
    out.push_back(guarded("1_yao_regression", 1.0, [&] { return yao_regression(); }));
    out.push_back(guarded("2_alpha_identity", 1.0, [&] { return alpha_identity(seed); }));
    out.push_back(
        guarded("3_a_eigenvalue_shift", 1.0, [&] { return a_eigenvalue_shift_oracle(seed); }));
    out.push_back(guarded("4_psi_residuals", 1.0, [&] { return psi_residuals(seed); }));
    out.push_back(guarded("5_basis_duality", 1.0, [&] { return basis_duality(); }));
    out.push_back(guarded("6_equivariance", 5.0, [&] { return equivariance(seed); }));
    out.push_back(guarded("7_resolvent_decay", 1.0, [&] { return resolvent_decay(); }));
    // criteria 8 and 11 share one DNS sweep; its runtime is booked on 8
    SweepChecks sc;
    const CheckResult sweep_shell =
        guarded("8_amplitude_law", 300.0, [&] {
            sc = amplitude_and_frequency(jobs, seed);
            return sc.amplitude_law;
        });
    if (sc.frequency.name.empty()) {
        sc.frequency = {"11_frequency_extrapolation", false, 0.0, 1e-3, sweep_shell.detail};
    }
    out.push_back(sweep_shell);
    out.push_back(
        guarded("9_stability_trichotomy", 300.0, [&] { return stability_trichotomy(jobs, seed); }));
    out.push_back(guarded("10_reduced_vs_full", 60.0, [&] { return reduced_vs_full_defect(); }));
    out.push_back(sc.frequency);
    if (include_extras) {
        out.push_back(guarded("extra_equal_theta_pairs", 0.0,
                              [&] { return equal_theta_pairs(jobs, seed); }));
    }
    return out;
}

}  // namespace validation
}  // namespace o2hopf
