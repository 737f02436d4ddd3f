#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace o2hopf {

// Derivatives of the flux at the expansion point: sigma'(0), sigma''(0), sigma'''(0).
struct Jet {
    double sp1 = 0.0;
    double sp2 = 0.0;
    double sp3 = 0.0;
};

// The flux / pressure law sigma(tau) together with its jet at 0 and the
// radius |tau| <= r inside which evaluations are trusted.
class PressureLaw {
public:
    // Defaults to the linear law sigma(tau) = tau.
    PressureLaw();

    // sigma(tau) = c0 + c1 tau + c2 tau^2 + ...
    static PressureLaw polynomial(std::vector<double> coeffs, double validity_radius = 1.0);

    // sigma(tau) = 1 + c^2 tau + tau^2
    static PressureLaw yao(double c, double validity_radius = 1.0);

    // Arbitrary closure. When no jet is supplied it is computed by central
    // finite differences (per-order step sizes, see the implementation).
    static PressureLaw from_function(std::function<double(double)> sigma,
                                     double validity_radius = 1.0,
                                     std::optional<Jet> jet = std::nullopt);

    double operator()(double tau) const { return sigma_(tau); }
    double sigma0() const { return sigma0_; }
    const Jet& jet() const { return jet_; }
    double sp1() const { return jet_.sp1; }
    double sp2() const { return jet_.sp2; }
    double sp3() const { return jet_.sp3; }
    double validity_radius() const { return radius_; }

    bool has_polynomial_form() const { return coeffs_.has_value(); }
    const std::vector<double>& coefficients() const;

    // sigma(tau) - sigma(0) - sigma'(0) tau, the full nonlinear flux
    // perturbation driving the second equation of the system.
    double perturbation(double tau) const;

private:
    struct Unset {};
    explicit PressureLaw(Unset) {}

    std::function<double(double)> sigma_;
    std::optional<std::vector<double>> coeffs_;
    Jet jet_;
    double sigma0_ = 0.0;
    double radius_ = 1.0;
};

// Taylor remainder after removing the cubic jet:
// Gamma(tau) = sigma(tau) - sigma(0) - sp1 tau - sp2 tau^2/2 - sp3 tau^3/6.
// Throws std::domain_error when |tau| exceeds the validity radius.
double remainder_gamma(const PressureLaw& law, double tau);

// The law tau -> sigma(tau0 + tau) with the jet recomputed at the new origin.
PressureLaw recenter(const PressureLaw& law, double tau0);

struct DomainScaling {
    double M = 3.14159265358979323846;  // half period
    double eps = 1.0;                   // fourth-order diffusion coefficient
    double a = 0.0;
    double delta = 0.0;
};

// Rescale space/time so the half-period becomes pi:
// a_bar = (pi/M)^3 a, delta_bar = (pi/M) delta.
std::pair<double, double> canonicalize_domain(const DomainScaling& s);

struct CanonicalLaw {
    double a = 0.0;
    double delta = 0.0;
    PressureLaw law;
};

// Rescale so the fourth-order coefficient in the second equation becomes 1:
// a~ = a/eps, delta~ = delta/eps, sigma~(t) = sigma(t/eps)/eps.
CanonicalLaw canonicalize_epsilon(double eps, double a, double delta, const PressureLaw& law);

}  // namespace o2hopf
