#include <doctest.h>

#include <cmath>
#include <random>

#include "o2hopf/normal_form.hpp"

using namespace o2hopf;

namespace {

CriticalConfig accepted(int k0, double a_c, double sp1) {
    const AdmissibilityResult res = check_admissible(k0, a_c, sp1, default_scan_limit(k0));
    REQUIRE(res.accepted());
    return res.config();
}

CriticalConfig sample_config(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kd(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const int k0 = kd(rng);
        const double k3 = static_cast<double>(k0) * k0 * k0;
        const double x = -0.5 + 1.2 * unit(rng);
        const double sp1 = x * x + 0.1 + 4.9 * unit(rng);
        const AdmissibilityResult res = check_admissible(k0, x / k3, sp1, default_scan_limit(k0));
        if (res.accepted()) return res.config();
    }
}

FourierField single_random_mode(int k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    return FourierField::single_mode(k, cplx(unit(rng), unit(rng)), cplx(unit(rng), unit(rng)));
}

const PressureLaw kQuadratic = PressureLaw::polynomial({0.0, 1.0, 1.0});  // sp2 = 2

}  // namespace

TEST_SUITE("normal_form") {

TEST_CASE("linear coefficient") {
    const CriticalConfig cfg = accepted(1, 0.0, 1.0);

    SUBCASE("eigenvalue-shift example") {
        const cplx a = coeff_a(cfg, 0.0, 0.01);
        CHECK(a.real() == doctest::Approx(0.005).epsilon(1e-14));
        CHECK(std::abs(a.imag()) <= 1e-15);
        // oracle: the perturbed eigenvalue of M_1(0, 1.01) has real part 0.005
        auto [l1, l2] = mode_eigenvalues(1, 0.0, 1.01, 1.0);
        (void)l2;
        CHECK(l1.real() == doctest::Approx(0.005).epsilon(1e-13));
    }
    SUBCASE("origin and the line of degeneracy") {
        CHECK(std::abs(coeff_a(cfg, 0.0, 0.0)) == 0.0);
        CHECK(std::abs(coeff_a(cfg, 0.01, 0.01)) == 0.0);  // theta = 0, a_c = 0
    }
    SUBCASE("matches the duality integral <R11(xi0), eta0>") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const NonlinearityTensors tensors{kQuadratic};
        for (int trial = 0; trial < 20; ++trial) {
            const CriticalConfig c = sample_config(rng);
            const CenterBasis b = build_center_basis(c);
            const double mu1 = 0.02 * unit(rng), mu2 = 0.02 * unit(rng);
            const cplx via_duality = inner_product(tensors.r11(b.xi0, mu1, mu2), b.eta0);
            const cplx direct = coeff_a(c, mu1, mu2);
            CHECK(std::abs(via_duality - direct) <= 1e-13 * (1.0 + std::abs(direct)));
        }
    }
    SUBCASE("Richardson ratio against the true eigenvalue shift") {
        std::mt19937_64 rng(43);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const CriticalConfig c = sample_config(rng);
            const double phi = 2.0 * 3.14159265358979323846 * unit(rng);
            double err[3];
            for (int j = 0; j < 3; ++j) {
                const double s = 1e-2 / (1 << j);
                const double m1 = s * std::cos(phi), m2 = s * std::sin(phi);
                auto [l1, l2] = mode_eigenvalues(c.k0, c.a_c + m1, c.delta_c + m2, c.sp1);
                (void)l2;
                err[j] = std::abs(l1 - cplx(0.0, c.omega_c) - coeff_a(c, m1, m2));
            }
            CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.25));
            CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.25));
        }
    }
}

TEST_CASE("quadratic center-manifold coefficients") {
    const NonlinearityTensors tensors{kQuadratic};

    SUBCASE("reference solve at k0 = 1, a_c = 0, sp2 = 2") {
        const CriticalConfig cfg = accepted(1, 0.0, 1.0);
        const PsiCoefficient v = solve_psi_200000(cfg, tensors);
        CHECK(std::abs(v.field.tau(2) - cplx(0.0, 1.0 / 6.0)) <= 1e-14);
        CHECK(std::abs(v.field.u(2) - cplx(0.0, 1.0 / 6.0)) <= 1e-14);
        // residual against the stated right-hand side (0, i k0 sp2)
        const Mat2 A = Mat2::identity() * cplx(0.0, 2.0) - mode_matrix(2, 0.0, 1.0, 1.0);
        const Vec2 r = A * v.field.mode(2) - Vec2{0.0, cplx(0.0, 2.0)};
        CHECK(r.norm() <= 1e-14);

        const PsiCoefficient w = solve_psi_100100(cfg, tensors);
        CHECK(std::abs(w.field.tau(2) + cplx(2.0)) <= 1e-14);
        CHECK(std::abs(w.field.u(2)) <= 1e-14);
        const Vec2 rw = mode_matrix(2, 0.0, 1.0, 1.0) * w.field.mode(2) -
                        Vec2{0.0, cplx(0.0, -4.0)};
        CHECK(rw.norm() <= 1e-14);
    }
    SUBCASE("zero quadratic flux gives zero fields") {
        const CriticalConfig cfg = accepted(1, 0.0, 1.0);
        const NonlinearityTensors lin{PressureLaw::polynomial({0.0, 1.0})};
        CHECK(solve_psi_200000(cfg, lin).field.norm() == 0.0);
        CHECK(solve_psi_100100(cfg, lin).field.norm() == 0.0);
    }
    SUBCASE("w2 vanishes with a_c") {
        const CriticalConfig cfg = accepted(2, 0.0, 1.5);
        const PsiCoefficient w = solve_psi_100100(cfg, tensors);
        CHECK(std::abs(w.field.u(4)) <= 1e-15);
    }
    SUBCASE("solves match the closed forms on random configurations") {
        std::mt19937_64 rng(47);
        for (int trial = 0; trial < 30; ++trial) {
            const CriticalConfig cfg = sample_config(rng);
            const PsiCoefficient v = solve_psi_200000(cfg, tensors);
            const PsiCoefficient w = solve_psi_100100(cfg, tensors);
            const int m = 2 * cfg.k0;
            CHECK((v.field.mode(m) - psi200000_closed(cfg, 2.0)).norm() <=
                  1e-12 * (1.0 + v.field.mode(m).norm()));
            CHECK((w.field.mode(m) - psi100100_closed(cfg, 2.0)).norm() <=
                  1e-12 * (1.0 + w.field.mode(m).norm()));
        }
    }
}

TEST_CASE("nonlinearity tensors") {
    std::mt19937_64 rng(53);
    const NonlinearityTensors tensors{PressureLaw::polynomial({0.0, 1.0, 1.5, 0.5})};

    SUBCASE("symmetry and multilinearity on random single-mode fields") {
        for (int trial = 0; trial < 20; ++trial) {
            std::uniform_int_distribution<int> kd(1, 5);
            const FourierField U = single_random_mode(kd(rng), rng);
            const FourierField V = single_random_mode(-kd(rng), rng);
            const FourierField W = single_random_mode(kd(rng), rng);

            CHECK((tensors.r20(U, V) - tensors.r20(V, U)).norm() <= 1e-12);
            CHECK((tensors.r30(U, V, W) - tensors.r30(W, U, V)).norm() <= 1e-12);
            CHECK((tensors.r30(U, V, W) - tensors.r30(V, U, W)).norm() <= 1e-12);

            const cplx s(0.7, -0.2);
            CHECK((tensors.r20(U * s, V) - tensors.r20(U, V) * s).norm() <= 1e-12);
        }
    }
    SUBCASE("derivative cancellations on the center basis") {
        const CriticalConfig cfg = accepted(2, 0.05, 1.5);
        const CenterBasis b = build_center_basis(cfg);
        CHECK(tensors.r20(b.xi0, b.xi0.conjugate()).norm() == 0.0);
        CHECK(tensors.r20(b.xi1, b.xi1.conjugate()).norm() == 0.0);
        CHECK(tensors.r20(b.xi0, b.xi1).norm() == 0.0);
    }
    SUBCASE("adjoint-kernel duality annihilates the range of (i omega_c - L_c)") {
        const CriticalConfig cfg = accepted(1, 0.1, 1.0);
        const CenterBasis b = build_center_basis(cfg);
        for (int k : {2, -2, 3, 5, 1, -1}) {
            const FourierField psi = single_random_mode(k, rng);
            const FourierField lhs =
                psi * cplx(0.0, cfg.omega_c) -
                apply_operator(cfg.a_c, cfg.delta_c, cfg.sp1, psi);
            CHECK(std::abs(inner_product(lhs, b.eta0)) <= 1e-13 * (1.0 + lhs.norm()));
        }
    }
}

TEST_CASE("cubic coefficients") {
    SUBCASE("b0 = -1/6 for the reference quadratic flux") {
        const CriticalConfig cfg = accepted(1, 0.0, 1.0);
        const cplx b0 = coeff_b0(cfg, NonlinearityTensors{kQuadratic});
        CHECK(b0.real() == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
        CHECK(std::abs(b0.imag()) <= 1e-15);
        // independent oracle: denominator D = -12 i, so i 4 / (2 D) = -1/6
        CHECK(std::abs(homological_denominator(cfg) - cplx(0.0, -12.0)) <= 1e-12);
        CHECK(alpha_constant(cfg) == doctest::Approx(144.0));
    }
    SUBCASE("c0 examples") {
        const CriticalConfig cfg = accepted(1, 0.0, 1.0);
        const cplx c0 = coeff_c0(cfg, NonlinearityTensors{kQuadratic});
        CHECK(std::abs(c0 - cplx(0.0, -2.0)) <= 1e-14);

        // pure cubic flux: sigma = tau + tau^3 has sp2 = 0, sp3 = 6
        const NonlinearityTensors cubic{PressureLaw::polynomial({0.0, 1.0, 0.0, 1.0})};
        const cplx c0_cubic = coeff_c0(cfg, cubic);
        CHECK(std::abs(c0_cubic - cplx(0.0, 3.0)) <= 1e-14);
        const cplx b0_cubic = coeff_b0(cfg, cubic);
        CHECK(std::abs(b0_cubic - cplx(0.0, 1.5)) <= 1e-14);
    }
    SUBCASE("linear flux has no cubic coefficients") {
        const CriticalConfig cfg = accepted(1, 0.1, 1.0);
        const NonlinearityTensors lin{PressureLaw::polynomial({0.0, 1.0})};
        CHECK(std::abs(coeff_b0(cfg, lin)) == 0.0);
        CHECK(std::abs(coeff_c0(cfg, lin)) == 0.0);
    }
    SUBCASE("real part of c0 vanishes and closed forms agree, randomized") {
        std::mt19937_64 rng(59);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 40; ++trial) {
            const CriticalConfig cfg = sample_config(rng);
            const double sp2 = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 2.5 * unit(rng));
            const double sp3 = -3.0 + 6.0 * unit(rng);
            const PressureLaw law =
                PressureLaw::polynomial({0.0, cfg.sp1, sp2 / 2.0, sp3 / 6.0});
            const NonlinearityTensors tensors{law};

            const cplx b0 = coeff_b0(cfg, tensors);
            const cplx c0 = coeff_c0(cfg, tensors);
            CHECK(std::abs(c0.real()) <= 1e-13 * (1.0 + std::abs(c0)));
            CHECK(std::abs(b0 - b0_closed(cfg, law.jet())) <= 1e-12 * (1.0 + std::abs(b0)));
            CHECK(std::abs(c0 - c0_closed(cfg, law.jet())) <= 1e-12 * (1.0 + std::abs(c0)));

            // alpha identity: the rationalized denominator |k0 D|^2
            const cplx quad = b0 - cplx(0.0, sp3 * cfg.k0 * cfg.k0 / (4.0 * cfg.omega_c));
            const double scale = std::max(std::abs(quad), 1e-300);
            CHECK(std::abs(b0.real() - b0_real_closed(cfg, sp2)) <= 1e-12 * scale);
            CHECK(std::abs(quad.imag() - b0_imag_quadratic_closed(cfg, sp2)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("reduced flow") {
    const CriticalConfig cfg = accepted(1, 0.0, 1.0);
    const NormalForm nf = build_normal_form(cfg, kQuadratic);

    SUBCASE("origin is an equilibrium") {
        const ReducedRates d = reduced_flow_rhs(nf, 0.0, 0.01, {0.0, 0.0, 0.3, 0.7});
        CHECK(d.dr1 == 0.0);
        CHECK(d.dr2 == 0.0);
        CHECK(d.dtheta1 == doctest::Approx(cfg.omega_c + nf.a(0.0, 0.01).imag()));
    }
    SUBCASE("the predicted amplitude is a rest point of the radial flow") {
        const double theta = 0.012;
        const double rstar = std::sqrt(-theta / (2.0 * nf.b0.real()));
        const ReducedRates d = reduced_flow_rhs(nf, 0.0, theta, {rstar, 0.0, 0.0, 0.0});
        CHECK(std::abs(d.dr1) <= 1e-15);
        const ReducedRates ds = reduced_flow_rhs(nf, 0.0, theta, {rstar, rstar, 0.0, 0.0});
        CHECK(std::abs(ds.dr1) <= 1e-15);  // c0 has no real part
        CHECK(std::abs(ds.dr2) <= 1e-15);
    }
}

TEST_CASE("wave predictions") {
    const CriticalConfig cfg = accepted(1, 0.0, 1.0);
    const NormalForm nf = build_normal_form(cfg, kQuadratic);

    SUBCASE("supercritical: three families plus an unstable equilibrium") {
        const WavePredictionSet set = predict_waves(nf, 0.0, 0.012);
        REQUIRE(set.waves.size() == 4);
        CHECK_FALSE(set.degenerate);
        const double rstar = std::sqrt(0.012 * 3.0);  // -theta/(2 b0r), b0r = -1/6
        for (const auto& w : set.waves) {
            if (w.family == WaveFamily::equilibrium) {
                CHECK(w.amplitude == 0.0);
                CHECK(w.stability == Stability::unstable);
            } else {
                CHECK(w.amplitude == doctest::Approx(rstar).epsilon(1e-13));
                CHECK((w.amplitude == 0.0) == (w.family == WaveFamily::equilibrium));
                if (w.family == WaveFamily::standing) {
                    CHECK(w.stability == Stability::stable);
                    // omega_* = omega_c + (b0i + c0i) r*^2 with b0i = 0, c0i = -2
                    CHECK(w.omega_star ==
                          doctest::Approx(1.0 - 2.0 * rstar * rstar).epsilon(1e-12));
                } else {
                    CHECK(w.stability == Stability::unstable);
                }
            }
        }
        CHECK(std::abs(set.waves[0].omega_star - 1.0) <= 1e-15);  // a_i = 0 here
    }
    SUBCASE("subcritical: only a stable equilibrium") {
        const WavePredictionSet set = predict_waves(nf, 0.0, -0.012);
        REQUIRE(set.waves.size() == 1);
        CHECK(set.waves[0].family == WaveFamily::equilibrium);
        CHECK(set.waves[0].stability == Stability::stable);
    }
    SUBCASE("amplitude scales as sqrt(theta)") {
        const WavePredictionSet s1 = predict_waves(nf, 0.0, 0.004);
        const WavePredictionSet s4 = predict_waves(nf, 0.0, 0.016);
        CHECK(s4.waves[1].amplitude ==
              doctest::Approx(2.0 * s1.waves[1].amplitude).epsilon(1e-13));
    }
    SUBCASE("amplitudes depend on the parameters only through theta") {
        const WavePredictionSet a = predict_waves(nf, 0.0, 0.01);
        const WavePredictionSet b = predict_waves(nf, -0.01, 0.0);  // same theta
        REQUIRE(a.waves.size() == b.waves.size());
        for (size_t i = 0; i < a.waves.size(); ++i) {
            CHECK(a.waves[i].amplitude == doctest::Approx(b.waves[i].amplitude).epsilon(1e-14));
            CHECK(a.waves[i].family == b.waves[i].family);
            CHECK(a.waves[i].stability == b.waves[i].stability);
        }
    }
    SUBCASE("degeneracy line is flagged") {
        const WavePredictionSet set = predict_waves(nf, 0.01, 0.01);
        CHECK(set.degenerate);
        CHECK(set.waves.size() == 1);
    }
    SUBCASE("theta < 0 via mu1 alone") {
        const WavePredictionSet set = predict_waves(nf, 0.012, 0.0);
        REQUIRE(set.waves.size() == 1);
        CHECK(set.waves[0].stability == Stability::stable);
    }
}

TEST_CASE("standing wave orbit") {
    const CriticalConfig cfg = accepted(1, 0.0, 1.0);
    const NormalForm nf = build_normal_form(cfg, kQuadratic);
    const double mu2 = 0.012;

    SUBCASE("orbit points are real fields") {
        for (double t : {0.0, 0.3, 1.7}) {
            const FourierField V = standing_wave_orbit(nf, 0.0, mu2, 0.4, -0.9, t);
            CHECK(V.is_real(1e-14));
        }
    }
    SUBCASE("reflection-translation isotropy") {
        // with T_h multiplying mode k by e^{ikh} and S swapping xi0 <-> xi1,
        // the torus point (delta0, delta1) is fixed by T_{(delta0-delta1)/k0} S
        const double d0 = 0.4, d1 = -0.9;
        const FourierField V = standing_wave_orbit(nf, 0.0, mu2, d0, d1, 0.8);
        const FourierField W = apply_group(GroupElement::translation((d0 - d1) / cfg.k0),
                                           apply_group(GroupElement::reflection(), V));
        CHECK((W - V).norm() <= 1e-12 * V.norm());

        // equal phases: S alone fixes the orbit
        const FourierField Veq = standing_wave_orbit(nf, 0.0, mu2, 0.7, 0.7, 0.8);
        const FourierField SVeq = apply_group(GroupElement::reflection(), Veq);
        CHECK((SVeq - Veq).norm() <= 1e-12 * Veq.norm());
    }
    SUBCASE("half-period translation advances time by half a period (k0 = 1)") {
        const double d0 = 0.2, d1 = 1.1;
        const WavePredictionSet set = predict_waves(nf, 0.0, mu2);
        double omega = 0.0;
        for (const auto& w : set.waves) {
            if (w.family == WaveFamily::standing) omega = w.omega_star;
        }
        const double t = 0.6;
        const FourierField lhs = apply_group(
            GroupElement::translation(3.14159265358979323846),
            standing_wave_orbit(nf, 0.0, mu2, d0, d1, t));
        const FourierField rhs =
            standing_wave_orbit(nf, 0.0, mu2, d0, d1, t + 3.14159265358979323846 / omega);
        CHECK((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }
    SUBCASE("no standing family off the supercritical side") {
        CHECK_THROWS_AS(standing_wave_orbit(nf, 0.0, -0.01, 0.0, 0.0, 0.0), std::domain_error);
    }
}

TEST_CASE("reduced integrator conserves the rotating-axis invariant") {
    const CriticalConfig cfg = accepted(1, 0.0, 1.0);
    const NormalForm nf = build_normal_form(cfg, kQuadratic);
    const ReducedTrack track = integrate_reduced(nf, 0.0, 0.01, cplx(0.02, 0.0), cplx(0.0, 0.0),
                                                 50.0, 1e-3, 100);
    for (const cplx& z2 : track.z2) CHECK(std::abs(z2) == 0.0);
    // amplitude grows toward the rotating rest radius
    CHECK(std::abs(track.z1.back()) > 0.02);
}

}  // TEST_SUITE
