#pragma once

#include <array>
#include <cmath>

#include "qtorus/lift.hpp"
#include "qtorus/trace.hpp"

namespace qtorus {

// One congruence class of the growth-rate fit: ell(n) modeled as a
// polynomial in 1/n (constant term first).  Unused high-order slots are zero
// when a lower degree was requested.
struct ModeFit {
  std::array<double, 5> coeffs{};  // a + b/n + c/n^2 + d/n^3 + e/n^4
  double rms = 0.0;
  int count = 0;
  double limit = 0.0;  // = coeffs[0]
};

struct FitResult {
  ModeFit mode1, mode3;  // classes n = 1 mod 4 and n = 3 mod 4
  int n_cut = 0;
  int degree = 4;
  int parity_flag = 0;  // ((lhat - mhat + nhat)/2) mod 2; odd blocks the volume prediction
};

// Least-squares fit of ell against {1, 1/n, ..., 1/n^degree} separately per
// class, using rows with n >= n_cut and no degeneracy flag.  Each class
// needs at least 10 points.
FitResult fit(const TraceSeries& s, int n_cut, int degree = 4);

int parity_flag(const LogLift& lf);

struct VolumeComparison {
  double vol = 0.0;
  double vol_over_4pi = 0.0;
  double dev1_abs = 0.0, dev3_abs = 0.0;  // |limit - vol/(4 pi)| per class
  double tol = 0.0;
  bool no_prediction = false;  // parity flag odd: limits are not expected to match
  bool pass1 = false, pass3 = false;
};

// Compare both class limits against vol/(4 pi) at the caller's tolerance.
// With an odd parity flag the comparison is reported but marked as carrying
// no prediction.
VolumeComparison compare_volume(const FitResult& f, double vol, double tol);

}  // namespace qtorus
