#include "qtorus/qdilog.hpp"

#include <cmath>
#include <stdexcept>

#include "qtorus/errors.hpp"

namespace qtorus {

namespace {

std::int64_t reduce_mod(std::int64_t i, int n) {
  std::int64_t r = i % n;
  if (r < 0) r += n;
  return r;
}

cplx int_pow(cplx base, int e) {
  // e >= 0 assumed small (<= n); exact enough and avoids pow() branch cuts.
  cplx acc(1.0);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

QdlParams::QdlParams(cplx u_, cplx v_, const QRoot& q_) : u(u_), v(v_), q(q_) {
  const int n = q.n();
  const cplx un = int_pow(u, n);
  if (!std::isfinite(std::abs(un)))
    throw std::invalid_argument("QdlParams: |u|^n exceeds double range");
  const cplx w = cplx(1.0) + un;
  if (std::abs(w) <= 1e-10 * (1.0 + std::abs(un)))
    throw degenerate_error("QdlParams: 1 + u^n vanishes");
  const cplx vn = int_pow(v, n);
  if (std::abs(vn - w) > 1e-10 * std::max(1.0, std::abs(w)))
    throw std::invalid_argument("QdlParams: v^n != 1 + u^n");
}

cplx qdl(const QdlParams& p, std::int64_t i) {
  const int n = p.q.n();
  const std::int64_t r = reduce_mod(i, n);
  cplx acc(1.0);
  for (std::int64_t k = 1; k <= r; ++k) acc *= cplx(1.0) + p.u * p.q.pow(-2 * k);
  // v^{-r} with r < n: repeated division keeps us off pow()'s branch cut.
  for (std::int64_t k = 0; k < r; ++k) acc /= p.v;
  return acc;
}

namespace {

// Complex log of the closed form, sum of (n-k+1) Log(1 + u q^{-2k}) minus
// ((n+1)/2) Log(1 + u^n).  The imaginary part carries an arbitrary multiple
// of 2*pi; exp() of the full value and the real part alone are both exact.
cplx dq_log(cplx u, const QRoot& q) {
  const int n = q.n();
  cplx acc(0.0);
  for (int k = 1; k <= n; ++k) {
    const cplx f = cplx(1.0) + u * q.pow(-2LL * k);
    if (f == cplx(0.0)) throw degenerate_error("dq: factor 1 + u q^{-2k} vanishes");
    acc += static_cast<double>(n - k + 1) * std::log(f);
  }
  const cplx un = int_pow(u, n);
  if (!std::isfinite(std::abs(un)))
    throw std::invalid_argument("dq: |u|^n exceeds double range");
  const cplx w = cplx(1.0) + un;
  if (std::abs(w) <= 1e-10 * (1.0 + std::abs(un)))
    throw degenerate_error("dq: 1 + u^n vanishes");
  acc -= (static_cast<double>(n + 1) / 2.0) * std::log(w);
  return acc;
}

}  // namespace

cplx dq(cplx u, const QRoot& q) { return std::exp(dq_log(u, q)); }

double dq_log_abs(cplx u, const QRoot& q) { return dq_log(u, q).real(); }

double dq_abs_nth_root(cplx u, const QRoot& q) {
  return std::exp(dq_log_abs(u, q) / static_cast<double>(q.n()));
}

QdlTable::QdlTable(const QdlParams& p) : n_(p.q.n()), cum_(static_cast<std::size_t>(p.q.n())) {
  cum_[0] = cplx(0.0);
  for (int r = 1; r < n_; ++r) {
    const cplx f = cplx(1.0) + p.u * p.q.pow(-2LL * r);
    if (f == cplx(0.0)) throw degenerate_error("QdlTable: factor 1 + u q^{-2k} vanishes");
    cum_[static_cast<std::size_t>(r)] = cum_[static_cast<std::size_t>(r - 1)] + std::log(f);
  }
  logv_ = std::log(p.v);
}

cplx QdlTable::log_qdl(std::int64_t i) const {
  const std::int64_t r = reduce_mod(i, n_);
  return -static_cast<double>(r) * logv_ + cum_[static_cast<std::size_t>(r)];
}

cplx QdlTable::qdl(std::int64_t i) const { return std::exp(log_qdl(i)); }

}  // namespace qtorus
