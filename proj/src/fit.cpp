#include "qtorus/fit.hpp"

#include <Eigen/Dense>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtorus {

namespace {

ModeFit fit_class(const TraceSeries& s, int n_cut, int degree, int residue) {
  std::vector<double> ns, ells;
  for (const TraceRow& r : s.rows) {
    if (r.flags == "degenerate" || !std::isfinite(r.ell)) continue;
    if (r.n < n_cut || r.n % 4 != residue) continue;
    ns.push_back(static_cast<double>(r.n));
    ells.push_back(r.ell);
  }
  const auto m = static_cast<Eigen::Index>(ns.size());
  if (m < 10)
    throw std::invalid_argument("fit: class n = " + std::to_string(residue) + " mod 4 has only " +
                                std::to_string(ns.size()) + " usable points (need >= 10)");

  Eigen::MatrixXd design(m, degree + 1);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double p = 1.0;
    for (int d = 0; d <= degree; ++d) {
      design(i, d) = p;
      p /= ns[static_cast<std::size_t>(i)];
    }
    rhs(i) = ells[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
  const double rms = std::sqrt((design * sol - rhs).squaredNorm() / static_cast<double>(m));

  ModeFit f;
  for (int d = 0; d <= degree && d < 5; ++d) f.coeffs[static_cast<std::size_t>(d)] = sol(d);
  f.rms = rms;
  f.count = static_cast<int>(m);
  f.limit = sol(0);
  return f;
}

}  // namespace

FitResult fit(const TraceSeries& s, int n_cut, int degree) {
  if (degree < 1 || degree > 4) throw std::invalid_argument("fit: degree must be in 1..4");
  FitResult out;
  out.n_cut = n_cut;
  out.degree = degree;
  out.mode1 = fit_class(s, n_cut, degree, 1);
  out.mode3 = fit_class(s, n_cut, degree, 3);
  return out;
}

int parity_flag(const LogLift& lf) {
  const std::int64_t twice = lf.lhat - lf.mhat + lf.nhat;
  // With lhat + mhat + nhat = 0 this is -2 mhat, so always even.
  if (twice % 2 != 0) throw std::logic_error("parity_flag: winding combination is odd");
  const std::int64_t half = twice / 2;
  return static_cast<int>(((half % 2) + 2) % 2);
}

VolumeComparison compare_volume(const FitResult& f, double vol, double tol) {
  VolumeComparison c;
  c.vol = vol;
  c.vol_over_4pi = vol / (4.0 * std::numbers::pi);
  c.dev1_abs = std::abs(f.mode1.limit - c.vol_over_4pi);
  c.dev3_abs = std::abs(f.mode3.limit - c.vol_over_4pi);
  c.tol = tol;
  c.no_prediction = (f.parity_flag % 2) != 0;
  c.pass1 = c.dev1_abs <= tol;
  c.pass3 = c.dev3_abs <= tol;
  return c;
}

}  // namespace qtorus
