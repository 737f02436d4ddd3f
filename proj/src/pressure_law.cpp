#include "o2hopf/pressure_law.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace o2hopf {

namespace {

double eval_poly(const std::vector<double>& c, double tau) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * tau + *it;
    return v;
}

Jet poly_jet(const std::vector<double>& c) {
    Jet j;
    if (c.size() > 1) j.sp1 = c[1];
    if (c.size() > 2) j.sp2 = 2.0 * c[2];
    if (c.size() > 3) j.sp3 = 6.0 * c[3];
    return j;
}

// Central differences with per-order steps. The naive eps^(1/3) step is fine
// for the first derivative but loses everything to roundoff on the third
// (noise there scales like eps/h^3), hence the larger steps below.
Jet finite_difference_jet(const std::function<double(double)>& f, double radius) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double h1 = std::cbrt(eps) * radius;
    const double h2 = std::pow(eps, 0.25) * radius;
    const double h3 = std::pow(12.0 * eps, 0.2) * radius;
    Jet j;
    j.sp1 = (f(h1) - f(-h1)) / (2.0 * h1);
    j.sp2 = (f(h2) - 2.0 * f(0.0) + f(-h2)) / (h2 * h2);
    j.sp3 = (f(2.0 * h3) - 2.0 * f(h3) + 2.0 * f(-h3) - f(-2.0 * h3)) / (2.0 * h3 * h3 * h3);
    return j;
}

}  // namespace

PressureLaw::PressureLaw() : PressureLaw(polynomial({0.0, 1.0})) {}

PressureLaw PressureLaw::polynomial(std::vector<double> coeffs, double validity_radius) {
    if (validity_radius <= 0.0) throw std::invalid_argument("validity_radius must be positive");
    if (coeffs.empty()) coeffs.push_back(0.0);
    PressureLaw law{Unset{}};
    law.sigma_ = [coeffs](double tau) { return eval_poly(coeffs, tau); };
    law.jet_ = poly_jet(coeffs);
    law.sigma0_ = coeffs[0];
    law.radius_ = validity_radius;
    law.coeffs_ = std::move(coeffs);
    return law;
}

PressureLaw PressureLaw::yao(double c, double validity_radius) {
    return polynomial({1.0, c * c, 1.0}, validity_radius);
}

PressureLaw PressureLaw::from_function(std::function<double(double)> sigma,
                                       double validity_radius, std::optional<Jet> jet) {
    if (!sigma) throw std::invalid_argument("pressure law closure is empty");
    if (validity_radius <= 0.0) throw std::invalid_argument("validity_radius must be positive");
    PressureLaw law{Unset{}};
    law.sigma0_ = sigma(0.0);
    law.jet_ = jet ? *jet : finite_difference_jet(sigma, validity_radius);
    law.sigma_ = std::move(sigma);
    law.radius_ = validity_radius;
    return law;
}

const std::vector<double>& PressureLaw::coefficients() const {
    if (!coeffs_) throw std::logic_error("pressure law has no polynomial form");
    return *coeffs_;
}

double PressureLaw::perturbation(double tau) const {
    return sigma_(tau) - sigma0_ - jet_.sp1 * tau;
}

double remainder_gamma(const PressureLaw& law, double tau) {
    if (std::abs(tau) > law.validity_radius()) {
        throw std::domain_error("remainder_gamma: |tau| exceeds validity radius");
    }
    const Jet& j = law.jet();
    return law(tau) - law.sigma0() - j.sp1 * tau - 0.5 * j.sp2 * tau * tau -
           j.sp3 * tau * tau * tau / 6.0;
}

PressureLaw recenter(const PressureLaw& law, double tau0) {
    if (std::abs(tau0) >= law.validity_radius()) {
        throw std::domain_error("recenter: |tau0| must be below the validity radius");
    }
    const double new_radius = law.validity_radius() - std::abs(tau0);
    if (law.has_polynomial_form()) {
        // Horner shift: coefficients of p(tau0 + tau).
        std::vector<double> c = law.coefficients();
        const int n = static_cast<int>(c.size());
        for (int k = 0; k < n - 1; ++k) {
            for (int j = n - 2; j >= k; --j) c[j] += tau0 * c[j + 1];
        }
        return PressureLaw::polynomial(std::move(c), new_radius);
    }
    // A jet cannot be translated without higher derivatives, so the shifted
    // closure always goes through the finite-difference policy.
    const PressureLaw base = law;
    auto shifted = [base, tau0](double tau) { return base(tau0 + tau); };
    return PressureLaw::from_function(shifted, new_radius);
}

std::pair<double, double> canonicalize_domain(const DomainScaling& s) {
    if (s.M <= 0.0) throw std::domain_error("canonicalize_domain: M must be positive");
    const double pi = 3.14159265358979323846;
    const double r = pi / s.M;
    return {r * r * r * s.a, r * s.delta};
}

CanonicalLaw canonicalize_epsilon(double eps, double a, double delta, const PressureLaw& law) {
    if (eps <= 0.0) throw std::domain_error("canonicalize_epsilon: eps must be positive");
    CanonicalLaw out;
    out.a = a / eps;
    out.delta = delta / eps;
    if (law.has_polynomial_form()) {
        std::vector<double> c = law.coefficients();
        double scale = 1.0 / eps;
        for (auto& cn : c) {
            cn *= scale;
            scale /= eps;
        }
        out.law = PressureLaw::polynomial(std::move(c), eps * law.validity_radius());
    } else {
        const PressureLaw base = law;
        auto scaled = [base, eps](double t) { return base(t / eps) / eps; };
        const Jet& j = law.jet();
        Jet jt{j.sp1 / (eps * eps), j.sp2 / (eps * eps * eps), j.sp3 / (eps * eps * eps * eps)};
        out.law = PressureLaw::from_function(scaled, eps * law.validity_radius(), jt);
    }
    return out;
}

}  // namespace o2hopf
