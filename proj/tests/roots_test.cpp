#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qtorus/roots.hpp"

using qtorus::cplx;
using qtorus::QRoot;

namespace {
constexpr double kPi = std::numbers::pi;

cplx unit(double turns) { return std::polar(1.0, 2.0 * kPi * turns); }
}  // namespace

TEST_CASE("primitive root value and table entries") {
  QRoot q3(3);
  CHECK(q3.n() == 3);
  CHECK(q3.k() == 1);
  CHECK(std::abs(q3.q() - cplx(-0.5, std::sqrt(3.0) / 2.0)) < 1e-15);
  CHECK(std::abs(q3.pow(0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(q3.pow(1) - q3.q()) == 0.0);
  CHECK(std::abs(q3.pow(2) - std::conj(q3.q())) < 1e-15);

  QRoot q5(5, 2);
  CHECK(std::abs(q5.q() - unit(2.0 / 5.0)) < 1e-15);
  CHECK(std::abs(q5.pow(3) - unit(6.0 / 5.0)) < 1e-15);
  // q() is the first power for every root exponent.
  for (int k : {1, 2, 3, 4}) {
    QRoot q(5, k);
    CHECK(std::abs(q.q() - q.pow(1)) == 0.0);
  }
}

TEST_CASE("power reduction is exact for large and negative exponents") {
  QRoot q7(7);
  // 3e12 mod 7 == 3
  CHECK(std::abs(q7.pow(3000000000000LL) - q7.pow(3)) == 0.0);
  CHECK(std::abs(q7.pow(-1) - q7.pow(6)) == 0.0);
  CHECK(std::abs(q7.pow(-15) - q7.pow(6)) == 0.0);
  CHECK(std::abs(q7.pow(7) - cplx(1.0, 0.0)) == 0.0);
  // q^m * q^{-m} == 1 exactly by table lookup
  for (std::int64_t m : {1LL, 123456789LL, -987654321LL}) {
    CHECK(std::abs(q7.pow(m) * q7.pow(-m) - cplx(1.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("powers close the circle") {
  for (int n : {3, 5, 9, 101}) {
    QRoot q(n);
    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= q.q();
    CHECK(std::abs(prod - cplx(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("constructor rejects invalid dimensions and exponents") {
  CHECK_THROWS_AS(QRoot(2), std::invalid_argument);
  CHECK_THROWS_AS(QRoot(4), std::invalid_argument);
  CHECK_THROWS_AS(QRoot(1), std::invalid_argument);
  CHECK_THROWS_AS(QRoot(-3), std::invalid_argument);
  CHECK_THROWS_AS(QRoot(9, 3), std::invalid_argument);   // gcd(3, 9) = 3
  CHECK_THROWS_AS(QRoot(15, 5), std::invalid_argument);  // gcd(5, 15) = 5
  CHECK_NOTHROW(QRoot(9, 2));
  CHECK_NOTHROW(QRoot(15, 4));
  CHECK_NOTHROW(QRoot(5, -2));  // negative exponents reduce mod n
}

TEST_CASE("mod_inverse agrees with the defining congruence") {
  using qtorus::mod_inverse;
  for (std::int64_t n : {3LL, 5LL, 7LL, 101LL, 301LL}) {
    for (std::int64_t a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      std::int64_t inv = mod_inverse(a, n);
      CHECK(inv >= 0);
      CHECK(inv < n);
      CHECK((a * inv) % n == 1);
    }
  }
  CHECK(mod_inverse(4, 5) == 4);
  CHECK(mod_inverse(4, 7) == 2);
  CHECK_THROWS_AS(mod_inverse(3, 9), std::invalid_argument);
  CHECK_THROWS_AS(mod_inverse(0, 7), std::invalid_argument);
}

TEST_CASE("squared half-dimension inverts 4 modulo n") {
  // ((n-1)/2)^2 * 4 = (n-1)^2 = n^2 - 2n + 1 == 1 mod n.
  for (int n : {3, 5, 7, 51, 301}) {
    std::int64_t half = (n - 1) / 2;
    CHECK((4 * half % n) * half % n == 1 % n);
    CHECK(qtorus::mod_inverse(4, n) == half * half % n);
  }
}
