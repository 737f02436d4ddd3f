#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "o2hopf/complex2.hpp"
#include "o2hopf/fourier_field.hpp"

namespace o2hopf {

// Fourier symbol of the linearization at mode k:
//   M_k = [ -a k^4        i k          ]
//         [ i sigma'(0) k delta k^2 - k^4 ]
Mat2 mode_matrix(int k, double a, double delta, double sp1);

// Roots of det(lambda - M_k) = lambda^2 + ((a+1)k^4 - delta k^2) lambda
//                              + a k^4 (k^4 - delta k^2) + sp1 k^2,
// ordered by descending real part, ties by descending imaginary part.
std::pair<cplx, cplx> mode_eigenvalues(int k, double a, double delta, double sp1);

// delta_c = (a_c + 1) k0^2, the unique second-order coefficient placing the
// mode-k0 eigenvalue pair on the imaginary axis.
double critical_delta(int k0, double a_c);

// omega_c = sqrt(sp1 k0^2 - a_c^2 k0^8); requires sp1 > a_c^2 k0^6.
double critical_omega(int k0, double a_c, double sp1);

struct CriticalConfig {
    int k0 = 1;
    double a_c = 0.0;
    double delta_c = 0.0;
    double sp1 = 1.0;  // sigma'(0)
    double omega_c = 0.0;
    int nonresonance_checked_up_to = 0;  // K
    bool tail_certified = false;
};

struct AdmissibilityRejection {
    std::string clause;  // short machine-readable name of the violated condition
    int offending_k = 0; // 0 when not mode-specific
    std::string message;
};

class AdmissibilityResult {
public:
    static AdmissibilityResult accept(CriticalConfig cfg) { return AdmissibilityResult(std::move(cfg)); }
    static AdmissibilityResult reject(AdmissibilityRejection r) { return AdmissibilityResult(std::move(r)); }

    bool accepted() const { return std::holds_alternative<CriticalConfig>(v_); }
    const CriticalConfig& config() const;
    const AdmissibilityRejection& rejection() const;

private:
    explicit AdmissibilityResult(CriticalConfig cfg) : v_(std::move(cfg)) {}
    explicit AdmissibilityResult(AdmissibilityRejection r) : v_(std::move(r)) {}
    std::variant<CriticalConfig, AdmissibilityRejection> v_;
};

inline int default_scan_limit(int k0) { return std::max(64, 8 * (k0 < 0 ? -k0 : k0)); }

// Builds delta_c, checks sp1 > a_c^2 k0^6 and the non-resonance inequality
// a_c k^4 (k^2 - delta_c) != -sp1 for 1 <= |k| <= K, k != +-k0, and certifies
// the |k| > K tail by monotonicity when possible. Requires K >= 4 |k0|.
AdmissibilityResult check_admissible(int k0, double a_c, double sp1, int K);

struct ModeEigenvalues {
    int k;
    cplx lambda1, lambda2;
};

struct SpectrumReport {
    CriticalConfig cfg;
    std::vector<ModeEigenvalues> modes;  // 1 <= |k| <= K
    std::vector<int> center_modes;       // {-|k0|, +|k0|}
    double gap = 0.0;                    // min |Re lambda| over non-center modes
};

SpectrumReport spectrum_report(const CriticalConfig& cfg, int K);

// max over 1 <= |k| <= K of the 2-norm of (i omega - M_k)^{-1} at the
// critical parameters. Throws SingularOperatorError when |omega| = omega_c.
double resolvent_norm(const CriticalConfig& cfg, double omega, int K);

// L(a, delta) applied mode-wise to a field.
FourierField apply_operator(double a, double delta, double sp1, const FourierField& U);

}  // namespace o2hopf
