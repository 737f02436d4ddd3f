#include "o2hopf/spectral_linear.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "o2hopf/errors.hpp"

namespace o2hopf {

namespace {

double pow4(double x) { return x * x * x * x; }

// a_c k^4 (k^2 - delta_c), the quantity that must avoid -sp1 off the
// critical modes (equivalently det M_k != 0).
double nonresonance_value(double a_c, double delta_c, int k) {
    const double k2 = static_cast<double>(k) * k;
    return a_c * k2 * k2 * (k2 - delta_c);
}

}  // namespace

Mat2 mode_matrix(int k, double a, double delta, double sp1) {
    if (k == 0) throw std::invalid_argument("mode_matrix: k must be nonzero");
    const double kd = static_cast<double>(k);
    const double k2 = kd * kd;
    const double k4 = k2 * k2;
    return {cplx(-a * k4, 0.0), cplx(0.0, kd), cplx(0.0, sp1 * kd), cplx(delta * k2 - k4, 0.0)};
}

std::pair<cplx, cplx> mode_eigenvalues(int k, double a, double delta, double sp1) {
    if (k == 0) throw std::invalid_argument("mode_eigenvalues: k must be nonzero");
    const double k2 = static_cast<double>(k) * k;
    const double k4 = k2 * k2;
    const double B = (a + 1.0) * k4 - delta * k2;
    const double C = a * k4 * (k4 - delta * k2) + sp1 * k2;

    cplx l1, l2;
    const double disc = B * B - 4.0 * C;
    if (disc >= 0.0) {
        // Cancellation-free real roots: largest-magnitude one first, the
        // other recovered from the product (k^8 coefficients would otherwise
        // wipe out the small root).
        const double sq = std::sqrt(disc);
        if (B == 0.0 && C == 0.0) {
            l1 = l2 = 0.0;
        } else {
            const double q = -0.5 * (B + std::copysign(sq, B));
            if (q == 0.0) {
                l1 = 0.0;
                l2 = -B;
            } else {
                l1 = q;
                l2 = C / q;
            }
        }
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        l1 = cplx(-0.5 * B, im);
        l2 = cplx(-0.5 * B, -im);
    }

    auto before = [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    };
    if (!before(l1, l2) && (l1.real() != l2.real() || l1.imag() != l2.imag())) std::swap(l1, l2);
    return {l1, l2};
}

double critical_delta(int k0, double a_c) {
    if (k0 == 0) throw std::invalid_argument("critical_delta: k0 must be nonzero");
    const double k2 = static_cast<double>(k0) * k0;
    return (a_c + 1.0) * k2;
}

double critical_omega(int k0, double a_c, double sp1) {
    if (k0 == 0) throw std::invalid_argument("critical_omega: k0 must be nonzero");
    const double k2 = static_cast<double>(k0) * k0;
    const double w2 = sp1 * k2 - a_c * a_c * pow4(k2);
    if (w2 <= 0.0) throw std::domain_error("critical_omega: sp1 <= a_c^2 k0^6");
    return std::sqrt(w2);
}

const CriticalConfig& AdmissibilityResult::config() const {
    if (!accepted()) throw std::logic_error("AdmissibilityResult: rejected, no config");
    return std::get<CriticalConfig>(v_);
}

const AdmissibilityRejection& AdmissibilityResult::rejection() const {
    if (accepted()) throw std::logic_error("AdmissibilityResult: accepted, no rejection");
    return std::get<AdmissibilityRejection>(v_);
}

AdmissibilityResult check_admissible(int k0, double a_c, double sp1, int K) {
    if (k0 == 0) throw std::invalid_argument("check_admissible: k0 must be nonzero");
    const int ak0 = std::abs(k0);
    if (K < 4 * ak0) throw std::invalid_argument("check_admissible: K must be >= 4 |k0|");

    const double k2 = static_cast<double>(k0) * k0;
    const double delta_c = (a_c + 1.0) * k2;
    if (delta_c == 0.0) {
        return AdmissibilityResult::reject(
            {"delta_c_zero", 0, "delta_c = (a_c + 1) k0^2 vanishes (a_c = -1)"});
    }

    const double crit = a_c * a_c * k2 * k2 * k2;
    if (!(sp1 > crit)) {
        std::ostringstream os;
        os << "sp1 <= a_c^2 k0^6 (" << sp1 << " <= " << crit << ")";
        return AdmissibilityResult::reject({"sp1_below_critical", 0, os.str()});
    }

    // Non-resonance scan; the value is even in k so positive k suffices.
    const double tol = 1e-12 * std::max(1.0, std::abs(sp1));
    for (int k = 1; k <= K; ++k) {
        if (k == ak0) continue;
        if (std::abs(nonresonance_value(a_c, delta_c, k) + sp1) <= tol) {
            std::ostringstream os;
            os << "a_c k^4 (k^2 - delta_c) = -sp1 at k = " << k;
            return AdmissibilityResult::reject({"nonresonance_violated", k, os.str()});
        }
    }

    // Tail |k| > K: g(k) = a_c k^4 (k^2 - delta_c) is monotone once
    // 3 k^2 >= 2 delta_c (g' = 2 a_c k^3 (3 k^2 - 2 delta_c)), increasing for
    // a_c > 0 and decreasing for a_c < 0.
    bool tail = false;
    const double kp1 = static_cast<double>(K + 1);
    const bool monotone = 3.0 * kp1 * kp1 >= 2.0 * delta_c;
    const double g_next = nonresonance_value(a_c, delta_c, K + 1);
    if (a_c == 0.0) {
        tail = true;  // g identically zero, sp1 > 0
    } else if (a_c > 0.0) {
        tail = monotone && g_next > -sp1;
    } else {
        tail = monotone && g_next < -sp1;
    }

    CriticalConfig cfg;
    cfg.k0 = k0;
    cfg.a_c = a_c;
    cfg.delta_c = delta_c;
    cfg.sp1 = sp1;
    cfg.omega_c = critical_omega(k0, a_c, sp1);
    cfg.nonresonance_checked_up_to = K;
    cfg.tail_certified = tail;
    return AdmissibilityResult::accept(cfg);
}

SpectrumReport spectrum_report(const CriticalConfig& cfg, int K) {
    const int ak0 = std::abs(cfg.k0);
    if (K < ak0) throw std::invalid_argument("spectrum_report: K must be >= |k0|");
    SpectrumReport rep;
    rep.cfg = cfg;
    rep.center_modes = {-ak0, ak0};
    double gap = std::numeric_limits<double>::infinity();
    for (int k = -K; k <= K; ++k) {
        if (k == 0) continue;
        auto [l1, l2] = mode_eigenvalues(k, cfg.a_c, cfg.delta_c, cfg.sp1);
        rep.modes.push_back({k, l1, l2});
        if (std::abs(k) != ak0) {
            gap = std::min(gap, std::min(std::abs(l1.real()), std::abs(l2.real())));
        }
    }
    rep.gap = gap;
    return rep;
}

double resolvent_norm(const CriticalConfig& cfg, double omega, int K) {
    if (K < 1) throw std::invalid_argument("resolvent_norm: K must be >= 1");
    if (std::abs(std::abs(omega) - cfg.omega_c) <= 1e-12 * std::max(1.0, cfg.omega_c)) {
        throw SingularOperatorError("resolvent_norm: i omega is in the spectrum");
    }
    double best = 0.0;
    for (int k = -K; k <= K; ++k) {
        if (k == 0) continue;
        const Mat2 A = Mat2::identity() * cplx(0.0, omega) - mode_matrix(k, cfg.a_c, cfg.delta_c, cfg.sp1);
        best = std::max(best, A.inverse_norm2());
    }
    return best;
}

FourierField apply_operator(double a, double delta, double sp1, const FourierField& U) {
    FourierField out(U.max_mode());
    for (int k = -U.max_mode(); k <= U.max_mode(); ++k) {
        if (k == 0) continue;
        out.set_mode(k, mode_matrix(k, a, delta, sp1) * U.mode(k));
    }
    return out;
}

}  // namespace o2hopf
