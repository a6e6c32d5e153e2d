// Acceptance gate for the trace-asymptotics library: every shipping claim is
// re-run here end to end, one PASS/FAIL line per criterion, exit code equal to
// the number of failures.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qtorus/fit.hpp"
#include "qtorus/geometry.hpp"
#include "qtorus/intertwiner.hpp"
#include "qtorus/io.hpp"
#include "qtorus/lift.hpp"
#include "qtorus/rep.hpp"
#include "qtorus/sweep.hpp"
#include "qtorus/trace.hpp"
#include "qtorus/verify.hpp"

using namespace qtorus;

namespace {

struct Gate {
  int failures = 0;

  void run(int index, const std::string& name, const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool threw = false;
    try {
      detail = body();
    } catch (const std::exception& e) {
      threw = true;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = !threw && detail.empty();
    if (!ok) ++failures;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << index << " (" << name << ")";
    if (ok) {
      line << " [" << secs << " s]";
    } else {
      line << ": " << detail;
    }
    std::cout << line.str() << "\n" << std::flush;
  }
};

struct Pipeline {
  SweepWeights s;
  LogLift lf;
  TraceSeries ts;
  FitResult f;
  double seconds = 0.0;
};

Pipeline run_reference(cplx a0, int family, int eta, int n_max, TraceMethod method) {
  const auto start = std::chrono::steady_clock::now();
  Pipeline p;
  p.s = sweep(MonodromyWord::parse("LLR"), solve_periodic_llr(a0, -1, family));
  p.lf = lift(p.s, init_logs(p.s.steps[0], eta));
  p.ts = series(MonodromyWord::parse("LLR"), p.lf, 3, n_max, method);
  p.f = fit(p.ts, 51);
  p.f.parity_flag = parity_flag(p.lf);
  p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return p;
}

std::string check_close(const std::string& what, double got, double want, double tol) {
  if (std::abs(got - want) <= tol) return {};
  std::ostringstream ss;
  ss << what << ": got " << got << ", want " << want << " +- " << tol;
  return ss.str();
}

const double kTarget = 0.212213;  // reference growth limit for the three-letter word

}  // namespace

int main() {
  Gate gate;
  // Shared pipelines; built lazily inside the criteria that first need them.
  Pipeline ex1, ex2, ex3;

  gate.run(1, "reference point reaches the documented limit in both classes", [&] {
    ex1 = run_reference({-0.75, -0.1}, 1, 0, 301, TraceMethod::Product);
    if (std::string e = check_close("mode1 limit", ex1.f.mode1.limit, kTarget, 5e-4); !e.empty())
      return e;
    if (std::string e = check_close("mode3 limit", ex1.f.mode3.limit, kTarget, 5e-4); !e.empty())
      return e;
    if (ex1.seconds >= 120.0) {
      std::ostringstream ss;
      ss << "pipeline took " << ex1.seconds << " s, budget 120 s";
      return ss.str();
    }
    return std::string{};
  });

  gate.run(2, "shifted log branch keeps the limit, moves the corrections", [&] {
    ex2 = run_reference({-0.75, -0.1}, 1, 1, 301, TraceMethod::Product);
    if (ex2.lf.lhat != 3 || ex2.lf.mhat != 0 || ex2.lf.nhat != -3) {
      std::ostringstream ss;
      ss << "windings (" << ex2.lf.lhat << ", " << ex2.lf.mhat << ", " << ex2.lf.nhat
         << "), want (3, 0, -3)";
      return ss.str();
    }
    if (std::string e = check_close("mode1 limit", ex2.f.mode1.limit, kTarget, 5e-4); !e.empty())
      return e;
    if (std::string e = check_close("mode3 limit", ex2.f.mode3.limit, kTarget, 5e-4); !e.empty())
      return e;
    // Same limit, different finite-size corrections: the 1/n coefficients of
    // the two branches must be clearly separated in both classes.
    const double d1 = std::abs(ex2.f.mode1.coeffs[1] - ex1.f.mode1.coeffs[1]);
    const double d3 = std::abs(ex2.f.mode3.coeffs[1] - ex1.f.mode3.coeffs[1]);
    if (d1 < 1e-3 || d3 < 1e-3) {
      std::ostringstream ss;
      ss << "1/n coefficients barely move: |d1| = " << d1 << ", |d3| = " << d3;
      return ss.str();
    }
    return std::string{};
  });

  gate.run(3, "odd-parity branch declines the volume prediction", [&] {
    ex3 = run_reference({1.0, 1.0}, 2, 0, 301, TraceMethod::Product);
    if (ex3.lf.lhat != -2 || ex3.lf.mhat != -1 || ex3.lf.nhat != 3) {
      std::ostringstream ss;
      ss << "windings (" << ex3.lf.lhat << ", " << ex3.lf.mhat << ", " << ex3.lf.nhat
         << "), want (-2, -1, 3)";
      return ss.str();
    }
    if (ex3.f.parity_flag != 1) return std::string("parity flag not raised");
    const VolumeComparison cmp =
        compare_volume(ex3.f, volume(MonodromyWord::parse("LLR")), 5e-4);
    if (!cmp.no_prediction) return std::string("comparison still claims a prediction");
    // The uncorrected fit visibly fails to flatten: residuals far above the
    // even-parity reference in both classes.
    if (ex3.f.mode1.rms < 10.0 * ex1.f.mode1.rms || ex3.f.mode3.rms < 10.0 * ex1.f.mode3.rms) {
      std::ostringstream ss;
      ss << "rms " << ex3.f.mode1.rms << " / " << ex3.f.mode3.rms << " not >= 10x reference "
         << ex1.f.mode1.rms << " / " << ex1.f.mode3.rms;
      return ss.str();
    }
    return std::string{};
  });

  gate.run(4, "cyclic-sum and matrix traces agree through n = 101", [&] {
    const MonodromyWord word = MonodromyWord::parse("LLR");
    for (int n = 3; n <= 101; n += 2) {
      const double tp = std::abs(trace_product(word, ex1.lf, n));
      const double ts = std::abs(trace_sum(word, ex1.lf, n));
      const double rel = std::abs(tp - ts) / tp;
      if (!(rel <= 1e-9)) {
        std::ostringstream ss;
        ss << "modulus mismatch " << rel << " at n = " << n;
        return ss.str();
      }
    }
    return std::string{};
  });

  gate.run(5, "elementary intertwiners conjugate the representations", [&] {
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> mag(0.35, 2.8), ang(0.0, 2.0 * std::acos(-1.0));
    const auto annulus = [&] { return std::polar(mag(rng), ang(rng)); };
    const auto nth = [](cplx w, int n) {
      return std::exp(std::log(w) / static_cast<double>(n));
    };
    const auto mat_gap = [](const Mat& a, const Mat& b) {
      return (a - b).norm() / std::max(1.0, b.norm());
    };
    int draws = 0;
    for (int n : {3, 5, 7, 9}) {
      const QRoot q(n);
      for (int rep = 0; rep < 6; ++rep) {
        RepTriple t1{annulus(), annulus(), annulus()};
        if (std::abs(std::pow(t1.y, n) + 1.0) < 1e-2 ||
            std::abs(std::pow(t1.z, n) + 1.0) < 1e-2) {
          --rep;
          continue;
        }
        ++draws;
        const GeneratorMatrices g1 = standard_rep(t1, q);

        // Left exchange.
        {
          const cplx u = q.q() * t1.y;
          const cplx v = nth(1.0 + std::pow(u, n), n) * q.pow(rep);
          const RepTriple t2{1.0 / t1.y, v * v * t1.x, t1.y * t1.y * t1.z / (v * v)};
          const GeneratorMatrices lhs = apply_left_iso(g1, q);
          const GeneratorMatrices g2 = standard_rep(t2, q);
          const Mat iw = build_left(QdlParams(u, v, q)).mat;
          for (const auto& [a, b] : {std::pair{&lhs.X, &g2.X}, std::pair{&lhs.Y, &g2.Y},
                                     std::pair{&lhs.Z, &g2.Z}}) {
            if (double e = mat_gap((*a) * iw, iw * (*b)); e > 1e-9) {
              std::ostringstream ss;
              ss << "left conjugation error " << e << " at n = " << n;
              return ss.str();
            }
          }
        }
        // Right exchange.
        {
          const cplx u = q.q() * t1.z;
          const cplx v = nth(1.0 + std::pow(u, n), n) * q.pow(rep + 1);
          const RepTriple t2{1.0 / t1.z, v * v * t1.y, t1.z * t1.z * t1.x / (v * v)};
          const GeneratorMatrices lhs = apply_right_iso(g1, q);
          const GeneratorMatrices g2 = standard_rep(t2, q);
          const Mat iw = build_right(QdlParams(u, v, q)).mat;
          for (const auto& [a, b] : {std::pair{&lhs.X, &g2.X}, std::pair{&lhs.Y, &g2.Y},
                                     std::pair{&lhs.Z, &g2.Z}}) {
            if (double e = mat_gap((*a) * iw, iw * (*b)); e > 1e-9) {
              std::ostringstream ss;
              ss << "right conjugation error " << e << " at n = " << n;
              return ss.str();
            }
          }
        }
        // Twist.
        {
          std::uniform_int_distribution<int> pick(-n, n);
          const std::int64_t l0 = pick(rng), m0 = pick(rng);
          const std::int64_t n0 = -(l0 + m0);
          const RepTriple t2{q.pow(4 * l0) * t1.x, q.pow(4 * m0) * t1.y, q.pow(4 * n0) * t1.z};
          const Mat tw = build_twist(l0, m0, n0, q).mat;
          const GeneratorMatrices g2 = standard_rep(t2, q);
          for (const auto& [a, b] : {std::pair{&g1.X, &g2.X}, std::pair{&g1.Y, &g2.Y},
                                     std::pair{&g1.Z, &g2.Z}}) {
            if (double e = mat_gap((*a) * tw, tw * (*b)); e > 1e-9) {
              std::ostringstream ss;
              ss << "twist conjugation error " << e << " at n = " << n;
              return ss.str();
            }
          }
        }
      }
    }
    // And the full composite intertwines the folded representation.
    for (int n : {3, 5}) {
      const QRoot q(n);
      const RepParams rp = rep_params(ex1.lf, q);
      const Intertwiner lam = intertwiner_for(MonodromyWord::parse("LLR"), ex1.lf, n);
      GeneratorMatrices folded = standard_rep({rp.x[0], rp.y[0], rp.z[0]}, q);
      const GeneratorMatrices start = folded;
      for (Letter letter : MonodromyWord::parse("LLR").letters)
        folded = letter == Letter::L ? apply_left_iso(folded, q) : apply_right_iso(folded, q);
      for (const auto& [a, b] : {std::pair{&folded.X, &start.X}, std::pair{&folded.Y, &start.Y},
                                 std::pair{&folded.Z, &start.Z}}) {
        if (double e = mat_gap((*a) * lam.mat, lam.mat * (*b)); e > 1e-9) {
          std::ostringstream ss;
          ss << "composite conjugation error " << e << " at n = " << n;
          return ss.str();
        }
      }
    }
    if (draws < 20) return std::string("fewer than 20 draws exercised");
    return std::string{};
  });

  gate.run(6, "trace modulus ignores the auxiliary-log branch choice", [&] {
    const MonodromyWord word = MonodromyWord::parse("LLR");
    const std::array<std::vector<int>, 3> shift_sets{
        std::vector<int>{1, 0, 0}, std::vector<int>{0, -1, 2}, std::vector<int>{2, 1, -1}};
    for (const auto& shifts : shift_sets) {
      const LogLift moved = lift(ex1.s, init_logs(ex1.s.steps[0], 0), shifts);
      for (int n = 3; n <= 51; n += 2) {
        const double base = std::abs(trace_product(word, ex1.lf, n));
        const double got = std::abs(trace_product(word, moved, n));
        const double rel = std::abs(got - base) / base;
        if (!(rel <= 1e-8)) {
          std::ostringstream ss;
          ss << "shifted branch moves |trace| by " << rel << " at n = " << n;
          return ss.str();
        }
      }
    }
    return std::string{};
  });

  gate.run(7, "geometric solver pins the two reference volumes", [&] {
    const double v_two = volume(MonodromyWord::parse("LR"));
    if (std::string e = check_close("two-letter volume", v_two, 2.029883, 1e-5); !e.empty())
      return e;
    const double v_three = volume(MonodromyWord::parse("LLR"));
    if (std::string e = check_close("three-letter volume", v_three, 2.66674, 1e-3); !e.empty())
      return e;
    const SweepWeights s = solve_hyperbolic(MonodromyWord::parse("LLR"));
    const double s7 = std::sqrt(7.0);
    const EdgeWeights want{cplx{-0.25, -s7 / 4.0}, cplx{-1.5, s7 / 2.0}, cplx{0.625, -s7 / 8.0}};
    for (const auto& [got, ref] : {std::pair{s.steps[0].a, want.a}, std::pair{s.steps[0].b, want.b},
                                   std::pair{s.steps[0].c, want.c}}) {
      if (std::abs(got - ref) > 1e-8) {
        std::ostringstream ss;
        ss << "recovered weight off by " << std::abs(got - ref);
        return ss.str();
      }
    }
    return std::string{};
  });

  gate.run(8, "randomized invariant suite holds", [&] {
    std::ostringstream sink;
    const int bad = run_verify(1u, sink);
    if (bad != 0) {
      return std::to_string(bad) + " properties failed:\n" + sink.str();
    }
    return std::string{};
  });

  if (gate.failures == 0) {
    std::cout << "acceptance: all 8 criteria hold\n";
  } else {
    std::cout << "acceptance: " << gate.failures << " criteria FAILED\n";
  }
  return gate.failures;
}
