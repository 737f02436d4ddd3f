#include <doctest.h>

#include <cmath>
#include <random>

#include "o2hopf/fourier_field.hpp"

using namespace o2hopf;

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

FourierField random_field(int nmax, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    FourierField f(nmax);
    for (int k = -nmax; k <= nmax; ++k) {
        if (k == 0) continue;
        f.set_mode(k, {cplx(unit(rng), unit(rng)), cplx(unit(rng), unit(rng))});
    }
    return f;
}
}  // namespace

TEST_SUITE("fourier_field") {

TEST_CASE("mean mode is pinned to zero") {
    FourierField f(4);
    CHECK_THROWS_AS(f.set_mode(0, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(f.set_mode(5, {1.0, 0.0}), std::invalid_argument);
    CHECK(f.tau(0) == cplx(0.0));
}

TEST_CASE("norm agrees with Parseval on a single mode") {
    const FourierField f = FourierField::single_mode(3, cplx(1.0, 2.0), cplx(0.0, -1.0));
    // |tau|^2 + |u|^2 = 5 + 1
    CHECK(f.norm() == doctest::Approx(std::sqrt(kTwoPi * 6.0)).epsilon(1e-15));
}

TEST_CASE("inner product pairs equal modes only") {
    const FourierField a = FourierField::single_mode(2, 1.0, cplx(0.0, 1.0));
    const FourierField b = FourierField::single_mode(2, cplx(0.0, 1.0), 1.0);
    const FourierField c = FourierField::single_mode(-2, 1.0, 1.0);
    // 2 pi (1 * conj(i) + i * conj(1)) = 2 pi (-i + i) = 0
    CHECK(std::abs(inner_product(a, b)) <= 1e-15);
    CHECK(std::abs(inner_product(a, c)) == 0.0);
    CHECK(inner_product(a, a).real() == doctest::Approx(kTwoPi * 2.0));
    CHECK(std::abs(inner_product(a, a).imag()) <= 1e-15);
}

TEST_CASE("conjugation is an involution and detects real fields") {
    std::mt19937_64 rng(3);
    const FourierField f = random_field(5, rng);
    const FourierField ff = f.conjugate().conjugate();
    CHECK((ff - f).norm() <= 1e-15 * f.norm());
    CHECK_FALSE(f.is_real(1e-12));

    FourierField real_field = f + f.conjugate();
    CHECK(real_field.is_real(1e-15));
    CHECK(real_field.reality_defect() == 0.0);
}

TEST_CASE("arithmetic widens supports") {
    const FourierField a = FourierField::single_mode(1, 1.0, 0.0);
    const FourierField b = FourierField::single_mode(4, 0.0, 2.0);
    const FourierField s = a + b;
    CHECK(s.max_mode() == 4);
    CHECK(s.tau(1) == cplx(1.0));
    CHECK(s.u(4) == cplx(2.0));
    CHECK((s - a - b).norm() == 0.0);
}

TEST_CASE("resizing truncates and pads") {
    std::mt19937_64 rng(5);
    const FourierField f = random_field(6, rng);
    const FourierField small = f.resized(2);
    CHECK(small.max_mode() == 2);
    CHECK(small.tau(2) == f.tau(2));
    CHECK(small.tau(3) == cplx(0.0));
    const FourierField big = small.resized(8);
    CHECK(big.tau(2) == f.tau(2));
    CHECK(big.tau(8) == cplx(0.0));
}

}  // TEST_SUITE
