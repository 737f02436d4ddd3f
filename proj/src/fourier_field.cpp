#include "o2hopf/fourier_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace o2hopf {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

FourierField::FourierField(int max_mode) : nmax_(max_mode) {
    if (max_mode < 0) throw std::invalid_argument("max_mode must be nonnegative");
    tau_.assign(2 * nmax_ + 1, cplx(0.0));
    u_.assign(2 * nmax_ + 1, cplx(0.0));
}

FourierField FourierField::single_mode(int k, cplx tau, cplx u) {
    FourierField f(std::abs(k));
    f.set_mode(k, {tau, u});
    return f;
}

void FourierField::check_mode(int k) const {
    if (k == 0) throw std::invalid_argument("mode k = 0 is pinned to zero (mean-zero field)");
    if (!inside(k)) throw std::invalid_argument("mode index out of range");
}

void FourierField::set_mode(int k, const Vec2& v) {
    check_mode(k);
    tau_[idx(k)] = v.a;
    u_[idx(k)] = v.b;
}

void FourierField::add_mode(int k, const Vec2& v) {
    check_mode(k);
    tau_[idx(k)] += v.a;
    u_[idx(k)] += v.b;
}

FourierField FourierField::resized(int new_max) const {
    FourierField out(new_max);
    const int m = std::min(nmax_, new_max);
    for (int k = -m; k <= m; ++k) {
        if (k == 0) continue;
        out.tau_[out.idx(k)] = tau_[idx(k)];
        out.u_[out.idx(k)] = u_[idx(k)];
    }
    return out;
}

FourierField FourierField::operator+(const FourierField& o) const {
    FourierField out = resized(std::max(nmax_, o.nmax_));
    for (int k = -o.nmax_; k <= o.nmax_; ++k) {
        if (k == 0) continue;
        out.tau_[out.idx(k)] += o.tau_[o.idx(k)];
        out.u_[out.idx(k)] += o.u_[o.idx(k)];
    }
    return out;
}

FourierField FourierField::operator-(const FourierField& o) const {
    return *this + o * cplx(-1.0);
}

FourierField FourierField::operator*(cplx s) const {
    FourierField out = *this;
    for (auto& c : out.tau_) c *= s;
    for (auto& c : out.u_) c *= s;
    return out;
}

FourierField& FourierField::operator+=(const FourierField& o) {
    if (o.nmax_ > nmax_) {
        double spill = 0.0;
        for (int k = nmax_ + 1; k <= o.nmax_; ++k) {
            spill += std::abs(o.tau(k)) + std::abs(o.u(k)) + std::abs(o.tau(-k)) + std::abs(o.u(-k));
        }
        if (spill > 0.0) throw std::invalid_argument("operator+=: addend has wider support");
    }
    for (int k = -std::min(nmax_, o.nmax_); k <= std::min(nmax_, o.nmax_); ++k) {
        if (k == 0) continue;
        tau_[idx(k)] += o.tau_[o.idx(k)];
        u_[idx(k)] += o.u_[o.idx(k)];
    }
    return *this;
}

FourierField FourierField::conjugate() const {
    FourierField out(nmax_);
    for (int k = -nmax_; k <= nmax_; ++k) {
        if (k == 0) continue;
        out.tau_[out.idx(k)] = std::conj(tau_[idx(-k)]);
        out.u_[out.idx(k)] = std::conj(u_[idx(-k)]);
    }
    return out;
}

double FourierField::norm() const {
    double s = 0.0;
    for (const auto& c : tau_) s += std::norm(c);
    for (const auto& c : u_) s += std::norm(c);
    return std::sqrt(kTwoPi * s);
}

double FourierField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : tau_) m = std::max(m, std::abs(c));
    for (const auto& c : u_) m = std::max(m, std::abs(c));
    return m;
}

double FourierField::reality_defect() const {
    double d = 0.0;
    for (int k = 1; k <= nmax_; ++k) {
        d = std::max(d, std::abs(tau_[idx(k)] - std::conj(tau_[idx(-k)])));
        d = std::max(d, std::abs(u_[idx(k)] - std::conj(u_[idx(-k)])));
    }
    return d;
}

bool FourierField::is_real(double tol) const {
    return reality_defect() <= tol * (1.0 + max_abs_coeff());
}

cplx inner_product(const FourierField& U, const FourierField& V) {
    const int m = std::min(U.max_mode(), V.max_mode());
    cplx s(0.0);
    for (int k = -m; k <= m; ++k) {
        if (k == 0) continue;
        s += U.tau(k) * std::conj(V.tau(k)) + U.u(k) * std::conj(V.u(k));
    }
    return kTwoPi * s;
}

}  // namespace o2hopf
