#include "doctest.h"

#include <cmath>
#include <random>

#include "isofactor/specfun.hpp"

using namespace isofactor;

TEST_CASE("1F1 special values") {
    CHECK(kummer_1f1(2.3, 1.7, 0.0) == 1.0);
    CHECK(kummer_1f1(-3.0, 4.0, 0.0) == 1.0);
    CHECK(kummer_1f1(1.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
    CHECK(kummer_1f1(0.5, 0.5, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
}

TEST_CASE("terminating series evaluate exactly") {
    CHECK(kummer_1f1(-1.0, 2.0, 3.0) == doctest::Approx(-0.5).epsilon(1e-14));
    // 1F1(-2,-4,z) = 1 + z/2 + z^2/12 (valid: series ends before the pole)
    double z = 1.7;
    CHECK(kummer_1f1(-2.0, -4.0, z) ==
          doctest::Approx(1.0 + z / 2.0 + z * z / 12.0).epsilon(1e-14));
    // 1F1(-1,-4,z) = 1 + z/4
    CHECK(kummer_1f1(-1.0, -4.0, z) == doctest::Approx(1.0 + z / 4.0).epsilon(1e-14));
    CHECK(kummer_1f1(0.0, -4.0, z) == 1.0);
}

TEST_CASE("non-positive integer b without a terminating a is rejected") {
    CHECK_THROWS_AS(kummer_1f1(0.5, -2.0, 1.0), DomainError);
    CHECK_THROWS_AS(kummer_1f1(-5.0, -3.0, 1.0), DomainError); // a <= b: pole reached
}

TEST_CASE("Kummer identity over randomized parameters") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ua(-5.0, 5.0), ub(0.5, 6.0), uz(-20.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        double a = ua(rng), b = ub(rng), z = uz(rng);
        double lhs = kummer_1f1(a, b, z);
        double rhs = std::exp(z) * kummer_1f1(b - a, b, -z);
        CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, std::fabs(lhs)));
    }
}

TEST_CASE("1F1(a,a,z) = exp(z)") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ua(0.25, 6.0), uz(-20.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        double a = ua(rng), z = uz(rng);
        CHECK(kummer_1f1(a, a, z) == doctest::Approx(std::exp(z)).epsilon(1e-12));
    }
}

TEST_CASE("1F1 derivatives match finite differences") {
    double a = 1.25, b = 0.75, z = 2.0, dz = 1e-5;
    double fd = (kummer_1f1(a, b, z + dz) - kummer_1f1(a, b, z - dz)) / (2.0 * dz);
    CHECK(kummer_1f1_deriv(a, b, z) == doctest::Approx(fd).epsilon(1e-8));
    double fd2 =
        (kummer_1f1(a, b, z + dz) - 2.0 * kummer_1f1(a, b, z) + kummer_1f1(a, b, z - dz)) /
        (dz * dz);
    CHECK(kummer_1f1_deriv2(a, b, z) == doctest::Approx(fd2).epsilon(1e-5));
    CHECK(kummer_1f1_deriv(0.0, -4.0, z) == 0.0);
    CHECK(kummer_1f1_deriv2(-1.0, -4.0, z) == 0.0);
}

TEST_CASE("gamma_ratio basics") {
    CHECK(gamma_ratio(1.0, 1) == doctest::Approx(1.0));
    CHECK(gamma_ratio(-2.0, 1) == doctest::Approx(-0.5));
    CHECK(gamma_ratio(-4.0, 2) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(gamma_ratio(3.7, 0) == 1.0);
    CHECK_THROWS_AS(gamma_ratio(0.0, 1), DomainError);
    CHECK_THROWS_AS(gamma_ratio(-3.0, 5), DomainError); // hits the z+3 = 0 factor
}

TEST_CASE("gamma_ratio inverts pochhammer") {
    for (double z : {-7.5, -2.3, -0.4, 0.7, 1.0, 4.2}) {
        for (int m : {0, 1, 2, 5, 9}) {
            double prod = gamma_ratio(z, m) * pochhammer(z, m);
            CHECK(std::fabs(prod - 1.0) < 1e-14);
        }
    }
}

TEST_CASE("gamma_ratio stays finite over the radial parameter table") {
    // The nu_{lk} coefficient needs Gamma(-2l)/Gamma(-2l+|k|) for
    // k in {0,...,-(l-1)}: every such ratio is finite; overshooting |k|
    // past 2l hits a pole and must throw instead of evaluating Gamma.
    for (int l = 1; l <= 6; ++l) {
        for (int m = 0; m <= l - 1; ++m) {
            double r = gamma_ratio(-2.0 * l, m);
            CHECK(std::isfinite(r));
            CHECK(r != 0.0);
        }
        CHECK_THROWS_AS(gamma_ratio(-2.0 * l, 2 * l + 1), DomainError);
    }
}
