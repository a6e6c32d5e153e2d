#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qtorus/errors.hpp"
#include "qtorus/qdilog.hpp"

using qtorus::cplx;
using qtorus::QdlParams;
using qtorus::QdlTable;
using qtorus::QRoot;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("hand-computed values at n = 3, u = 1") {
  // v^3 = 1 + u^3 = 2, real cube root.
  QRoot q(3);
  QdlParams p(1.0, std::cbrt(2.0), q);

  // 1 + q^{-2} = 1 + e^{2 pi i / 3} = e^{i pi / 3}, so qdl(1) = e^{i pi/3} / 2^{1/3}.
  const cplx expect1 = std::polar(std::pow(2.0, -1.0 / 3.0), kPi / 3.0);
  CHECK(std::abs(qtorus::qdl(p, 1) - expect1) < 1e-14);

  // qdl(2) = v^{-2} (1 + q^{-2})(1 + q^{-4}) = 2^{-2/3} * e^{i pi/3} * e^{-i pi/3} * 1
  //   ... with (1 + q^{-4}) = 1 + q^{-1} = e^{-i pi / 3}.
  const cplx expect2 = std::pow(2.0, -2.0 / 3.0) * std::polar(1.0, kPi / 3.0) *
                       std::polar(1.0, -kPi / 3.0);
  CHECK(std::abs(qtorus::qdl(p, 2) - expect2) < 1e-14);

  // qdl(3) = v^{-3} (1+q^{-2})(1+q^{-4})(1+q^{-6}) = (1/2) * e^{i pi/3} e^{-i pi/3} * 2 = 1.
  CHECK(std::abs(qtorus::qdl(p, 3) - cplx(1.0, 0.0)) < 1e-14);

  // Closed-form product over even arguments: dq = (1/2) e^{i pi / 3}.
  const cplx dq_expect = 0.5 * std::polar(1.0, kPi / 3.0);
  CHECK(std::abs(qtorus::dq(1.0, q) - dq_expect) < 1e-14);
  CHECK(qtorus::dq_log_abs(1.0, q) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
  CHECK(qtorus::dq_abs_nth_root(1.0, q) ==
        doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("u = 0 collapses everything to powers of v") {
  QRoot q(5);
  QdlParams p(0.0, 1.0, q);
  for (int i = -7; i <= 7; ++i) {
    CHECK(std::abs(qtorus::qdl(p, i) - cplx(1.0, 0.0)) < 1e-15);
  }
  CHECK(std::abs(qtorus::dq(0.0, q) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(qtorus::dq_abs_nth_root(0.0, q) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("period n in the argument") {
  QRoot q(5);
  const cplx u{0.6, 0.3};
  const cplx v = std::exp(std::log(1.0 + std::pow(u, 5)) / 5.0);
  QdlParams p(u, v, q);
  for (int i = 0; i < 5; ++i) {
    const cplx base = qtorus::qdl(p, i);
    CHECK(std::abs(qtorus::qdl(p, i + 5) - base) < 1e-13);
    CHECK(std::abs(qtorus::qdl(p, i - 5) - base) < 1e-13);
    CHECK(std::abs(qtorus::qdl(p, i + 35) - base) < 1e-13);
  }
}

TEST_CASE("product over even arguments matches the closed form and drops v") {
  QRoot q(5);
  const cplx u{-0.4, 0.9};
  const cplx u5 = std::pow(u, 5);
  const cplx v = std::exp(std::log(1.0 + u5) / 5.0);
  // A different admissible fifth root of 1 + u^5:
  const cplx v2 = v * std::polar(1.0, 2.0 * kPi / 5.0);

  for (const cplx& vv : {v, v2}) {
    QdlParams p(u, vv, q);
    cplx prod = 1.0;
    for (int i = 1; i <= 5; ++i) prod *= qtorus::qdl(p, 2 * i);
    CHECK(std::abs(prod - qtorus::dq(u, q)) / std::abs(prod) < 1e-12);
  }
  CHECK(qtorus::dq_abs_nth_root(u, q) ==
        doctest::Approx(std::exp(qtorus::dq_log_abs(u, q) / 5.0)).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
  QRoot q(5);
  // v^n != 1 + u^n.
  CHECK_THROWS_AS(QdlParams(cplx{0.6, 0.3}, 2.0, q), std::invalid_argument);
  // u^n = -1 is degenerate no matter the claimed v.
  const cplx bad = std::polar(1.0, kPi / 5.0);
  CHECK_THROWS_AS(QdlParams(bad, 1.0, q), qtorus::degenerate_error);
  // Overflowing |u|^n is an argument error, not a crash.
  CHECK_THROWS_AS(QdlParams(cplx{1e300, 0.0}, 1.0, q), std::invalid_argument);
}

TEST_CASE("log-space table agrees with the direct product") {
  QRoot q(7);
  const cplx u{1.3, -0.8};
  const cplx v = std::exp(std::log(1.0 + std::pow(u, 7)) / 7.0);
  QdlParams p(u, v, q);
  QdlTable t(p);
  CHECK(t.n() == 7);
  for (int i = -10; i <= 20; ++i) {
    const cplx direct = qtorus::qdl(p, i);
    CHECK(std::abs(t.qdl(i) - direct) / std::abs(direct) < 1e-12);
    CHECK(std::abs(std::exp(t.log_qdl(i)) - direct) / std::abs(direct) < 1e-12);
  }
}

TEST_CASE("log-space table survives dimensions where raw products overflow") {
  // At n = 301 and |u| ~ 2.2 the raw numerator product is ~ 1e100+; the
  // normalized column weights exp(log_qdl - dq_log_abs/n - log(n)/2) must stay
  // finite and moderate.
  QRoot q(301);
  const cplx u{2.0, 0.9};
  const cplx v = std::exp(std::log(1.0 + std::pow(u, 301)) / 301.0);
  QdlParams p(u, v, q);
  QdlTable t(p);
  const double log_norm = qtorus::dq_log_abs(u, q) / 301.0 + 0.5 * std::log(301.0);
  CHECK(std::isfinite(log_norm));
  for (int j = 1; j <= 301; ++j) {
    const cplx w = std::exp(t.log_qdl(2 * j) - log_norm);
    CHECK(std::isfinite(std::abs(w)));
    CHECK(std::abs(w) < 1e6);
  }
}
