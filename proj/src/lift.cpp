#include "qtorus/lift.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qtorus/errors.hpp"

namespace qtorus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_nonzero_weights(const EdgeWeights& w, const char* who) {
  if (w.a == cplx(0.0) || w.b == cplx(0.0) || w.c == cplx(0.0))
    throw std::invalid_argument(std::string(who) + ": edge weights must be nonzero");
}

}  // namespace

InitialLogs init_logs(const EdgeWeights& w, int eta) {
  require_nonzero_weights(w, "init_logs");
  InitialLogs l;
  l.eta = eta;
  l.A0 = std::log(w.a) + cplx(0.0, kTwoPi * static_cast<double>(eta));
  l.B0 = std::log(w.b);
  l.C0 = std::log(w.c);
  l.theta_v = l.A0 + l.B0 + l.C0;
  return l;
}

LogLift lift(const SweepWeights& s, const InitialLogs& logs0, const std::vector<int>& v_shifts) {
  const std::size_t k0 = s.word.letters.size();
  if (s.steps.size() != k0 + 1)
    throw std::invalid_argument("lift: sweep does not match its word");
  if (!v_shifts.empty() && v_shifts.size() != k0)
    throw std::invalid_argument("lift: v_shifts must be empty or one per step");
  if (s.periodicity_defect() > 1e-6)
    throw std::invalid_argument("lift: sweep is not periodic");

  // The supplied logs must actually be logs of the initial weights.
  const EdgeWeights& w0 = s.steps.front();
  require_nonzero_weights(w0, "lift");
  if (std::abs(std::exp(logs0.A0) - w0.a) > 1e-9 * (1.0 + std::abs(w0.a)) ||
      std::abs(std::exp(logs0.B0) - w0.b) > 1e-9 * (1.0 + std::abs(w0.b)) ||
      std::abs(std::exp(logs0.C0) - w0.c) > 1e-9 * (1.0 + std::abs(w0.c)))
    throw std::invalid_argument("lift: initial logs do not exponentiate to the initial weights");

  LogLift lf;
  lf.theta_v = logs0.theta_v;
  lf.eta = logs0.eta;
  lf.A.resize(k0 + 1);
  lf.B.resize(k0 + 1);
  lf.C.resize(k0 + 1);
  lf.V.resize(k0);
  lf.A[0] = logs0.A0;
  lf.B[0] = logs0.B0;
  lf.C[0] = logs0.C0;

  for (std::size_t k = 1; k <= k0; ++k) {
    const cplx ak = s.steps[k].a;
    if (ak == cplx(0.0)) throw std::invalid_argument("lift: vanishing weight inside sweep");
    const int shift = v_shifts.empty() ? 0 : v_shifts[k - 1];
    const cplx vk =
        std::log(cplx(1.0) + cplx(1.0) / ak) + cplx(0.0, kTwoPi * static_cast<double>(shift));
    lf.V[k - 1] = vk;
    const cplx A1 = lf.A[k - 1], B1 = lf.B[k - 1], C1 = lf.C[k - 1];
    if (s.word.letters[k - 1] == Letter::L) {
      lf.A[k] = -B1;
      lf.B[k] = 2.0 * vk + A1;
      lf.C[k] = -2.0 * vk + 2.0 * B1 + C1;
    } else {
      lf.A[k] = -C1;
      lf.B[k] = 2.0 * vk + B1;
      lf.C[k] = -2.0 * vk + 2.0 * C1 + A1;
    }
    // The log-product is conserved by both recursions; a violation means the
    // inputs were inconsistent beyond repair.
    const cplx sum = lf.A[k] + lf.B[k] + lf.C[k];
    if (std::abs(sum - lf.theta_v) > 1e-7 * (1.0 + std::abs(lf.theta_v)))
      throw std::logic_error("lift: log-product conservation violated");
  }

  // Windings: (first - last) / (2 pi i) must be integral.
  const auto winding = [&](cplx first, cplx last, const char* which) {
    const cplx d = (first - last) / cplx(0.0, kTwoPi);
    const double rounded = std::round(d.real());
    if (std::abs(d - cplx(rounded, 0.0)) > 1e-6)
      throw degenerate_error(std::string("lift: winding of ") + which +
                             " is not an integer (branch inconsistency)");
    return static_cast<std::int64_t>(rounded);
  };
  lf.lhat = winding(lf.A[0], lf.A[k0], "A");
  lf.mhat = winding(lf.B[0], lf.B[k0], "B");
  lf.nhat = winding(lf.C[0], lf.C[k0], "C");
  if (lf.lhat + lf.mhat + lf.nhat != 0)
    throw degenerate_error("lift: winding integers do not sum to zero");
  return lf;
}

RepParams rep_params(const LogLift& lf, const QRoot& q) {
  const std::size_t k0 = lf.V.size();
  if (lf.A.size() != k0 + 1)
    throw std::invalid_argument("rep_params: malformed lift");
  const double n = static_cast<double>(q.n());
  RepParams rp;
  rp.n = q.n();
  rp.x.resize(k0 + 1);
  rp.y.resize(k0 + 1);
  rp.z.resize(k0 + 1);
  rp.u.resize(k0);
  rp.v.resize(k0);
  for (std::size_t k = 0; k <= k0; ++k) {
    rp.x[k] = std::exp(lf.A[k] / n);
    rp.y[k] = std::exp(lf.B[k] / n);
    rp.z[k] = std::exp(lf.C[k] / n);
  }
  for (std::size_t k = 1; k <= k0; ++k) {
    rp.u[k - 1] = q.q() * std::exp(-lf.A[k] / n);
    rp.v[k - 1] = std::exp(lf.V[k - 1] / n);
  }
  rp.h = std::exp(lf.theta_v / n);
  return rp;
}

std::array<std::int64_t, 3> correction_factors(const LogLift& lf, int n, int k) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("correction_factors: n must be odd and >= 3");
  const std::int64_t inv = mod_inverse((4LL * k) % n, n);
  const auto reduce = [&](std::int64_t h) {
    return (((h % n) * inv) % n + n) % n;
  };
  return {reduce(lf.lhat), reduce(lf.mhat), reduce(lf.nhat)};
}

}  // namespace qtorus
