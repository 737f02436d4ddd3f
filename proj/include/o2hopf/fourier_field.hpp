#pragma once

#include <vector>

#include "o2hopf/complex2.hpp"

namespace o2hopf {

// Mean-zero two-component periodic field on [-pi, pi], stored as complex
// Fourier coefficient pairs (tau_k, u_k) for |k| <= max_mode. The k = 0 slot
// is carried for indexing convenience but pinned to zero. Coefficients are
// general complex; a physically real field satisfies c_{-k} = conj(c_k).
class FourierField {
public:
    FourierField() = default;
    explicit FourierField(int max_mode);

    static FourierField single_mode(int k, cplx tau, cplx u);

    int max_mode() const { return nmax_; }

    cplx tau(int k) const { return inside(k) ? tau_[idx(k)] : cplx(0.0); }
    cplx u(int k) const { return inside(k) ? u_[idx(k)] : cplx(0.0); }
    Vec2 mode(int k) const { return {tau(k), u(k)}; }

    void set_mode(int k, const Vec2& v);
    void add_mode(int k, const Vec2& v);

    FourierField resized(int new_max) const;

    FourierField operator+(const FourierField& o) const;
    FourierField operator-(const FourierField& o) const;
    FourierField operator*(cplx s) const;
    FourierField& operator+=(const FourierField& o);

    // The complex-conjugate field U*: coefficients conj(c_{-k}).
    FourierField conjugate() const;

    // L2(-pi, pi) norm of the pair, via Parseval: sqrt(2 pi sum |c_k|^2).
    double norm() const;
    double max_abs_coeff() const;

    // max_k |c_k - conj(c_{-k})| over both components.
    double reality_defect() const;
    bool is_real(double tol = 1e-12) const;

private:
    bool inside(int k) const { return k >= -nmax_ && k <= nmax_; }
    int idx(int k) const { return k + nmax_; }
    void check_mode(int k) const;

    int nmax_ = 0;
    std::vector<cplx> tau_, u_;
};

// <U, V> = integral over one period of u1 v1* + u2 v2*.
cplx inner_product(const FourierField& U, const FourierField& V);

}  // namespace o2hopf
