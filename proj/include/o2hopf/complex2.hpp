#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace o2hopf {

using cplx = std::complex<double>;

// Two-component complex vectors and 2x2 matrices. Everything mode-wise in
// this project is a 2x2 problem, so this is all the linear algebra we need.
struct Vec2 {
    cplx a{0.0}, b{0.0};

    Vec2() = default;
    Vec2(cplx a_, cplx b_) : a(a_), b(b_) {}

    Vec2 operator+(const Vec2& o) const { return {a + o.a, b + o.b}; }
    Vec2 operator-(const Vec2& o) const { return {a - o.a, b - o.b}; }
    Vec2 operator*(cplx s) const { return {a * s, b * s}; }
    double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};

inline Vec2 operator*(cplx s, const Vec2& v) { return v * s; }

struct Mat2 {
    cplx m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx trace() const { return m00 + m11; }
    cplx det() const { return m00 * m11 - m01 * m10; }

    Mat2 hermitian_transpose() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }

    Vec2 operator*(const Vec2& v) const {
        return {m00 * v.a + m01 * v.b, m10 * v.a + m11 * v.b};
    }
    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    Mat2 operator+(const Mat2& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    Mat2 operator-(const Mat2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    Mat2 operator*(cplx s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }

    double frobenius_norm2() const {
        return std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
    }

    // Solves this * x = rhs. Throws std::domain_error when the matrix is
    // numerically singular relative to its entry scale.
    Vec2 solve(const Vec2& rhs) const {
        const cplx d = det();
        const double scale = std::abs(m00 * m11) + std::abs(m01 * m10);
        if (std::abs(d) <= 1e-14 * scale || d == cplx(0.0)) {
            throw std::domain_error("singular 2x2 solve");
        }
        return {(m11 * rhs.a - m01 * rhs.b) / d, (m00 * rhs.b - m10 * rhs.a) / d};
    }

    double largest_singular_value() const {
        const double t = frobenius_norm2();
        const double d = std::abs(det());
        const double disc = std::max(t * t - 4.0 * d * d, 0.0);
        return std::sqrt(0.5 * (t + std::sqrt(disc)));
    }

    double smallest_singular_value() const {
        const double d = std::abs(det());
        const double smax = largest_singular_value();
        return smax > 0.0 ? d / smax : 0.0;
    }

    // 2-norm of the inverse, infinity when singular.
    double inverse_norm2() const {
        const double smin = smallest_singular_value();
        return smin > 0.0 ? 1.0 / smin : std::numeric_limits<double>::infinity();
    }

    // Matrix exponential via trace splitting: A = m I + B with tr B = 0, so
    // B^2 = q^2 I and exp(A) = e^m (cosh(q) I + sinhc(q) B). Assembled from
    // e^{m +- q} (the eigenvalue exponentials) so strongly damped modes do not
    // hit 0 * inf.
    Mat2 exponential() const {
        const cplx m = 0.5 * trace();
        const Mat2 B{m00 - m, m01, m10, m11 - m};
        const cplx q2 = m * m - det();
        const cplx q = std::sqrt(q2);
        cplx ch_em, shc_em;  // e^m cosh(q), e^m sinhc(q)
        if (std::abs(q) < 1e-4) {
            const cplx em = std::exp(m);
            ch_em = em * (1.0 + q2 / 2.0 + q2 * q2 / 24.0);
            shc_em = em * (1.0 + q2 / 6.0 + q2 * q2 / 120.0);
        } else {
            const cplx ep = std::exp(m + q);
            const cplx en = std::exp(m - q);
            ch_em = 0.5 * (ep + en);
            shc_em = 0.5 * (ep - en) / q;
        }
        return Mat2::identity() * ch_em + B * shc_em;
    }

    Mat2 conjugate() const {
        return {std::conj(m00), std::conj(m01), std::conj(m10), std::conj(m11)};
    }
};

inline Vec2 conj(const Vec2& v) { return {std::conj(v.a), std::conj(v.b)}; }

}  // namespace o2hopf
