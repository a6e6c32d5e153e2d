#pragma once

#include <array>
#include <vector>

#include "qtorus/roots.hpp"
#include "qtorus/sweep.hpp"

namespace qtorus {

// Chosen logarithms of the initial weights.  The principal log of a is offset
// by 2*pi*i*eta, the one free integer of the construction; b and c take their
// principal values.  theta_v = A0 + B0 + C0 is the conserved log-product.
struct InitialLogs {
  cplx A0, B0, C0;
  cplx theta_v;
  int eta = 0;
};

InitialLogs init_logs(const EdgeWeights& w, int eta);

// Logarithmic lift of a periodic sweep: branches (A_k, B_k, C_k) of the
// weights after each step, auxiliary logs V_k = Log(1 + 1/a_k) (optionally
// shifted by 2*pi*i*s_k), and the integer winding triple
// (lhat, mhat, nhat) = (A_0 - A_k0, B_0 - B_k0, C_0 - C_k0) / (2*pi*i).
struct LogLift {
  cplx theta_v;
  int eta = 0;
  std::vector<cplx> A, B, C;  // indices 0..k0
  std::vector<cplx> V;        // V[k-1] belongs to step k, k = 1..k0
  std::int64_t lhat = 0, mhat = 0, nhat = 0;
};

// Transport the initial logs along the sweep:
//   L step:  A_k = -B_{k-1},  B_k = 2 V_k + A_{k-1},  C_k = -2 V_k + 2 B_{k-1} + C_{k-1}
//   R step:  A_k = -C_{k-1},  B_k = 2 V_k + B_{k-1},  C_k = -2 V_k + 2 C_{k-1} + A_{k-1}
// with V_k = Log(1 + 1/a_k) + 2 pi i s_k, a_k the weight after step k.  The
// sum A_k + B_k + C_k equals theta_v for every k; the final windings must be
// integers to 1e-6 and sum to zero.  v_shifts may be empty (all zeros) or
// one integer per step.
LogLift lift(const SweepWeights& s, const InitialLogs& logs0,
             const std::vector<int>& v_shifts = {});

// Everything the intertwiner builders need at a given root: n-th roots of the
// lifted data,
//   x_k = e^{A_k/n}, y_k = e^{B_k/n}, z_k = e^{C_k/n},
//   u_k = q e^{-A_k/n}, v_k = e^{V_k/n}, h = e^{theta_v/n}.
// u_k^n = 1/a_k identically in n, so v_k^n = 1 + u_k^n holds step by step.
struct RepParams {
  int n = 0;
  std::vector<cplx> u, v;     // index k-1 holds step k, k = 1..k0
  std::vector<cplx> x, y, z;  // indices 0..k0
  cplx h;                     // e^{theta_v/n}; h + 1/h is the puncture trace parameter
};

RepParams rep_params(const LogLift& lf, const QRoot& q);

// Twist exponents (l0, m0, n0) at dimension n for root exponent k: each
// winding integer is multiplied by the inverse of 4k mod n.  Their sum is
// zero mod n.
std::array<std::int64_t, 3> correction_factors(const LogLift& lf, int n, int k = 1);

}  // namespace qtorus
