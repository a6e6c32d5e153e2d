#pragma once

#include <vector>

#include "qtorus/roots.hpp"

namespace qtorus {

// Parameters of the cyclic quantum dilogarithm at the root q: a pair (u, v)
// with v^n = 1 + u^n and 1 + u^n != 0.  Validated on construction (1e-10
// relative); violation of the power relation is an argument error, a
// vanishing 1 + u^n is a degenerate configuration.
struct QdlParams {
  cplx u, v;
  QRoot q;

  QdlParams(cplx u_, cplx v_, const QRoot& q_);
};

// The cyclic dilogarithm value
//   qdl(p, i) = v^{-i} * prod_{k=1}^{i} (1 + u q^{-2k}),
// extended to all integer i by its period n.  Direct product form; fine for
// moderate |u| and the small n used in tests.  The matrix builders use
// QdlTable, which works in log space.
cplx qdl(const QdlParams& p, std::int64_t i);

// prod_{i=1}^{n} qdl(u, v | 2i).  Independent of the choice of v.  Closed
// form: (1 + u^n)^{-(n+1)/2} * prod_{k=1}^{n} (1 + u q^{-2k})^{n-k+1}.
// The full complex value overflows for large n; use dq_log_abs or
// dq_abs_nth_root in that regime.
cplx dq(cplx u, const QRoot& q);

// log |dq(u)| computed as a real log-sum; safe for all n.
double dq_log_abs(cplx u, const QRoot& q);

// |dq(u)|^{1/n}, the per-factor normalization of the exchange intertwiners.
double dq_abs_nth_root(cplx u, const QRoot& q);

// Prefix table of complex logs of qdl(u, v | i) for i = 0..n-1, so a whole
// intertwiner column costs one exp() after O(n) setup and the magnitudes can
// be normalized before exponentiation (raw products overflow near n ~ 300).
// The imaginary part is an accumulated phase, well-defined only mod 2*pi;
// exp() of it is exact.
class QdlTable {
 public:
  explicit QdlTable(const QdlParams& p);

  int n() const { return n_; }
  cplx log_qdl(std::int64_t i) const;
  cplx qdl(std::int64_t i) const;

 private:
  int n_ = 0;
  std::vector<cplx> cum_;  // cum_[r] = sum_{k=1}^{r} Log(1 + u q^{-2k})
  cplx logv_;
};

}  // namespace qtorus
