#include "qtorus/verify.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qtorus/errors.hpp"
#include "qtorus/fit.hpp"
#include "qtorus/geometry.hpp"
#include "qtorus/intertwiner.hpp"
#include "qtorus/lift.hpp"
#include "qtorus/qdilog.hpp"
#include "qtorus/rep.hpp"
#include "qtorus/sweep.hpp"
#include "qtorus/trace.hpp"

namespace qtorus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Check {
  std::ostream& out;
  std::mt19937_64 rng;
  int failures = 0;

  Check(std::uint64_t seed, std::ostream& o) : out(o), rng(seed) {}

  void run(const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    try {
      detail = body();  // empty string means pass
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      out << "PASS " << name << "\n";
    } else {
      out << "FAIL " << name << ": " << detail << "\n";
      ++failures;
    }
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  cplx annulus(double rlo = 0.4, double rhi = 2.2) {
    return std::polar(std::exp(uniform(std::log(rlo), std::log(rhi))), uniform(0.0, kTwoPi));
  }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
};

std::string fail_msg(const std::string& what, double got, double bound) {
  std::ostringstream ss;
  ss << what << " = " << got << " exceeds " << bound;
  return ss.str();
}

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double mat_rel_err(const Mat& got, const Mat& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

cplx int_pow(cplx b, int e) {
  cplx acc(1.0);
  bool inv = e < 0;
  for (int i = 0; i < std::abs(e); ++i) acc *= b;
  return inv ? cplx(1.0) / acc : acc;
}

// Random admissible v for a given u: any n-th root of 1 + u^n.
cplx admissible_v(Check& c, cplx u, const QRoot& q) {
  const cplx un = int_pow(u, q.n());
  const cplx w = cplx(1.0) + un;
  return std::exp(std::log(w) / static_cast<double>(q.n())) * q.pow(c.uniform_int(0, q.n() - 1));
}

RepTriple random_triple(Check& c, const QRoot& q) {
  for (int tries = 0; tries < 100; ++tries) {
    RepTriple t{c.annulus(), c.annulus(), c.annulus()};
    // Keep clear of the excluded locus y^n = -1 (and its mirror for z) so
    // the exchange pullbacks stay invertible.
    const cplx yn = int_pow(t.y, q.n()), zn = int_pow(t.z, q.n());
    if (std::abs(yn + cplx(1.0)) > 1e-2 && std::abs(zn + cplx(1.0)) > 1e-2) return t;
  }
  throw std::logic_error("random_triple: could not avoid excluded locus");
}

Mat mat_pow(const Mat& m, int e) {
  Mat acc = Mat::Identity(m.rows(), m.cols());
  for (int i = 0; i < e; ++i) acc = acc * m;
  return acc;
}

std::string check_scalar_matrix(const Mat& m, cplx scalar, double tol, const char* what) {
  const Mat want = scalar * Mat::Identity(m.rows(), m.cols());
  const double err = (m - want).norm() / std::max(1.0, std::abs(scalar) * std::sqrt(double(m.rows())));
  if (err > tol) return fail_msg(std::string(what) + " deviation", err, tol);
  return "";
}

EdgeWeights random_weights(Check& c) { return {c.annulus(), c.annulus(), c.annulus()}; }

MonodromyWord random_pa_word(Check& c, int max_len = 6) {
  for (;;) {
    const int len = c.uniform_int(2, max_len);
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(c.uniform_int(0, 1) ? 'L' : 'R');
    const auto w = MonodromyWord::parse(s);
    if (w.pseudo_anosov()) return w;
  }
}

// A random periodic sweep with a log lift, built from the LLR closed form
// at a random base point (falls back over draws that land on excluded sets).
struct LiftedExample {
  SweepWeights s;
  LogLift lf;
};

LiftedExample random_llr_lift(Check& c, int eta, const std::vector<int>& shifts) {
  for (int tries = 0; tries < 200; ++tries) {
    const cplx a0 = c.annulus(0.5, 1.8);
    const int branch = c.uniform_int(0, 1) ? 1 : -1;
    const int family = c.uniform_int(1, 2);
    try {
      const EdgeWeights w = solve_periodic_llr(a0, branch, family);
      const auto s = sweep(MonodromyWord::parse("LLR"), w);
      const auto lf = lift(s, init_logs(w, eta), shifts);
      return {s, lf};
    } catch (const degenerate_error&) {
      continue;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::logic_error("random_llr_lift: no usable base point found");
}

}  // namespace

int run_verify(std::uint64_t seed, std::ostream& out) {
  Check c(seed, out);

  c.run("qdl-periodicity", [&]() -> std::string {
    for (int n : {5, 9}) {
      const QRoot q(n);
      for (int rep = 0; rep < 5; ++rep) {
        const cplx u = c.annulus();
        const QdlParams p(u, admissible_v(c, u, q), q);
        for (std::int64_t i = -2 * n; i <= 2 * n; ++i) {
          const double e = rel_err(qdl(p, i + n), qdl(p, i));
          if (e > 1e-12) return fail_msg("period gap at i=" + std::to_string(i), e, 1e-12);
        }
      }
    }
    return "";
  });

  c.run("dq-closed-form", [&]() -> std::string {
    for (int n : {3, 5, 7, 9, 11}) {
      const QRoot q(n);
      for (int rep = 0; rep < 4; ++rep) {
        const cplx u = c.annulus();
        const QdlParams p(u, admissible_v(c, u, q), q);
        cplx even(1.0), all(1.0);
        for (int i = 1; i <= n; ++i) {
          even *= qdl(p, 2 * i);
          all *= qdl(p, i);
        }
        const cplx closed = dq(u, q);
        if (rel_err(even, closed) > 1e-12)
          return fail_msg("even-index product vs closed form", rel_err(even, closed), 1e-12);
        if (rel_err(all, closed) > 1e-12)
          return fail_msg("full product vs closed form", rel_err(all, closed), 1e-12);
        if (std::abs(dq_abs_nth_root(u, q) - std::pow(std::abs(closed), 1.0 / n)) > 1e-12)
          return "dq_abs_nth_root disagrees with |dq|^{1/n}";
      }
    }
    return "";
  });

  c.run("dq-v-independence", [&]() -> std::string {
    const QRoot q(7);
    for (int rep = 0; rep < 6; ++rep) {
      const cplx u = c.annulus();
      const QdlParams p1(u, admissible_v(c, u, q), q);
      const QdlParams p2(u, admissible_v(c, u, q), q);
      cplx prod1(1.0), prod2(1.0);
      for (int i = 1; i <= q.n(); ++i) {
        prod1 *= qdl(p1, 2 * i);
        prod2 *= qdl(p2, 2 * i);
      }
      if (rel_err(prod1, prod2) > 1e-12)
        return fail_msg("product depends on choice of v", rel_err(prod1, prod2), 1e-12);
    }
    return "";
  });

  c.run("rep-commutation", [&]() -> std::string {
    for (int n : {3, 5, 7}) {
      const QRoot q(n);
      const RepTriple t = random_triple(c, q);
      const auto g = standard_rep(t, q);
      const cplx q4 = q.pow(4);
      if (mat_rel_err(g.X * g.Y, q4 * g.Y * g.X) > 1e-12) return "XY != q^4 YX";
      if (mat_rel_err(g.Y * g.Z, q4 * g.Z * g.Y) > 1e-12) return "YZ != q^4 ZY";
      if (mat_rel_err(g.Z * g.X, q4 * g.X * g.Z) > 1e-12) return "ZX != q^4 XZ";
      const auto err = check_scalar_matrix(q.pow(-2) * g.X * g.Y * g.Z, t.x * t.y * t.z, 1e-11,
                                           "Weyl-ordered product");
      if (!err.empty()) return err;
    }
    return "";
  });

  c.run("rep-scalar-powers", [&]() -> std::string {
    for (int n : {3, 5, 7}) {
      const QRoot q(n);
      const RepTriple t = random_triple(c, q);
      const auto g = standard_rep(t, q);
      const std::array<std::tuple<const Mat*, cplx, const char*>, 3> cases{{
          {&g.X, int_pow(t.x, n), "X^n"},
          {&g.Y, int_pow(t.y, n), "Y^n"},
          {&g.Z, int_pow(t.z, n), "Z^n"},
      }};
      for (const auto& [m, s, name] : cases) {
        const auto err = check_scalar_matrix(mat_pow(*m, n), s, 1e-10, name);
        if (!err.empty()) return err;
      }
    }
    return "";
  });

  c.run("exchange-pullback-classification", [&]() -> std::string {
    for (int n : {3, 5}) {
      const QRoot q(n);
      const RepTriple t = random_triple(c, q);
      const auto g = standard_rep(t, q);
      const cplx xn = int_pow(t.x, n), yn = int_pow(t.y, n), zn = int_pow(t.z, n);

      const auto gl = apply_left_iso(g, q);
      std::string err;
      err = check_scalar_matrix(mat_pow(gl.X, n), cplx(1.0) / yn, 1e-9, "left X^n");
      if (!err.empty()) return err;
      err = check_scalar_matrix(mat_pow(gl.Y, n), (cplx(1.0) + yn) * (cplx(1.0) + yn) * xn, 1e-9,
                                "left Y^n");
      if (!err.empty()) return err;
      const cplx zfac = cplx(1.0) + cplx(1.0) / yn;
      err = check_scalar_matrix(mat_pow(gl.Z, n), zn / (zfac * zfac), 1e-9, "left Z^n");
      if (!err.empty()) return err;

      const auto gr = apply_right_iso(g, q);
      err = check_scalar_matrix(mat_pow(gr.X, n), cplx(1.0) / zn, 1e-9, "right X^n");
      if (!err.empty()) return err;
      err = check_scalar_matrix(mat_pow(gr.Y, n), (cplx(1.0) + zn) * (cplx(1.0) + zn) * yn, 1e-9,
                                "right Y^n");
      if (!err.empty()) return err;
      const cplx zfac_r = cplx(1.0) + cplx(1.0) / zn;
      err = check_scalar_matrix(mat_pow(gr.Z, n), xn / (zfac_r * zfac_r), 1e-9, "right Z^n");
      if (!err.empty()) return err;
    }
    return "";
  });

  c.run("exchange-intertwiner-conjugation", [&]() -> std::string {
    for (int n : {3, 5, 7}) {
      const QRoot q(n);
      for (int rep = 0; rep < 4; ++rep) {
        const RepTriple t1 = random_triple(c, q);
        // Left move: u = q y1, x2 = 1/y1, y2 = v^2 x1, z2 = v^{-2} y1^2 z1.
        {
          const cplx u = q.q() * t1.y;
          const cplx v = admissible_v(c, u, q);
          const RepTriple t2{cplx(1.0) / t1.y, v * v * t1.x, t1.y * t1.y * t1.z / (v * v)};
          const auto lhs = apply_left_iso(standard_rep(t1, q), q);
          const auto g2 = standard_rep(t2, q);
          const auto iw = build_left(QdlParams(u, v, q));
          Eigen::PartialPivLU<Mat> lu(iw.mat);
          const std::array<std::tuple<const Mat*, const Mat*, const char*>, 3> cases{{
              {&lhs.X, &g2.X, "X"}, {&lhs.Y, &g2.Y, "Y"}, {&lhs.Z, &g2.Z, "Z"}}};
          for (const auto& [l, r, name] : cases) {
            const Mat conj = iw.mat * (*r) * lu.inverse();
            const double e = mat_rel_err(*l, conj);
            if (e > 1e-9)
              return fail_msg(std::string("left conjugation mismatch on ") + name + " at n=" +
                                  std::to_string(n),
                              e, 1e-9);
          }
        }
        // Right move: u = q z1, x2 = 1/z1, y2 = v^2 y1, z2 = v^{-2} z1^2 x1.
        {
          const cplx u = q.q() * t1.z;
          const cplx v = admissible_v(c, u, q);
          const RepTriple t2{cplx(1.0) / t1.z, v * v * t1.y, t1.z * t1.z * t1.x / (v * v)};
          const auto lhs = apply_right_iso(standard_rep(t1, q), q);
          const auto g2 = standard_rep(t2, q);
          const auto iw = build_right(QdlParams(u, v, q));
          Eigen::PartialPivLU<Mat> lu(iw.mat);
          const std::array<std::tuple<const Mat*, const Mat*, const char*>, 3> cases{{
              {&lhs.X, &g2.X, "X"}, {&lhs.Y, &g2.Y, "Y"}, {&lhs.Z, &g2.Z, "Z"}}};
          for (const auto& [l, r, name] : cases) {
            const Mat conj = iw.mat * (*r) * lu.inverse();
            const double e = mat_rel_err(*l, conj);
            if (e > 1e-9)
              return fail_msg(std::string("right conjugation mismatch on ") + name + " at n=" +
                                  std::to_string(n),
                              e, 1e-9);
          }
        }
      }
    }
    return "";
  });

  c.run("twist-conjugation", [&]() -> std::string {
    for (int n : {3, 5, 7}) {
      const QRoot q(n);
      for (int rep = 0; rep < 4; ++rep) {
        const std::int64_t l0 = c.uniform_int(-4, 4);
        const std::int64_t m0 = c.uniform_int(-4, 4);
        const std::int64_t n0 = -l0 - m0;
        const RepTriple t1 = random_triple(c, q);
        const RepTriple t2{t1.x * q.pow(4 * l0), t1.y * q.pow(4 * m0), t1.z * q.pow(4 * n0)};
        const auto g1 = standard_rep(t1, q);
        const auto g2 = standard_rep(t2, q);
        const auto tw = build_twist(l0, m0, n0, q);
        Eigen::PartialPivLU<Mat> lu(tw.mat);
        const std::array<std::tuple<const Mat*, const Mat*, const char*>, 3> cases{{
            {&g1.X, &g2.X, "X"}, {&g1.Y, &g2.Y, "Y"}, {&g1.Z, &g2.Z, "Z"}}};
        for (const auto& [l, r, name] : cases) {
          const Mat conj = tw.mat * (*r) * lu.inverse();
          const double e = mat_rel_err(*l, conj);
          if (e > 1e-10)
            return fail_msg(std::string("twist conjugation mismatch on ") + name, e, 1e-10);
        }
      }
    }
    return "";
  });

  c.run("intertwiner-determinants", [&]() -> std::string {
    for (int n : {3, 5, 7}) {
      const QRoot q(n);
      for (int rep = 0; rep < 3; ++rep) {
        const cplx u = c.annulus();
        const cplx v = admissible_v(c, u, q);
        const QdlParams p(u, v, q);
        const std::array<std::pair<Intertwiner, const char*>, 2> builds{{
            {build_left(p), "left"}, {build_right(p), "right"}}};
        for (const auto& [iw, name] : builds) {
          const double ad = std::abs(Eigen::PartialPivLU<Mat>(iw.mat).determinant());
          if (std::abs(ad - 1.0) > 1e-8 * n)
            return fail_msg(std::string("|det| of ") + name + " intertwiner minus 1",
                            std::abs(ad - 1.0), 1e-8 * n);
        }
        const std::int64_t l0 = c.uniform_int(-3, 3), m0 = c.uniform_int(-3, 3);
        const auto tw = build_twist(l0, m0, -l0 - m0, q);
        const cplx dt = Eigen::PartialPivLU<Mat>(tw.mat).determinant();
        if (std::abs(dt - cplx(1.0)) > 1e-12 * n)
          return fail_msg("twist determinant minus 1", std::abs(dt - cplx(1.0)), 1e-12 * n);
      }
    }
    return "";
  });

  c.run("sweep-product-conservation", [&]() -> std::string {
    for (int rep = 0; rep < 10; ++rep) {
      const auto word = random_pa_word(c);
      EdgeWeights w = random_weights(c);
      SweepWeights s;
      try {
        s = sweep(word, w);
      } catch (const degenerate_error&) {
        --rep;  // rare draw onto the excluded set; try another
        continue;
      }
      const cplx p0 = w.a * w.b * w.c;
      for (const auto& st : s.steps) {
        if (rel_err(st.a * st.b * st.c, p0) > 1e-12)
          return fail_msg("product drift along " + word.str(),
                          rel_err(st.a * st.b * st.c, p0), 1e-12);
      }
    }
    return "";
  });

  c.run("llr-closed-form-periodic", [&]() -> std::string {
    const auto word = MonodromyWord::parse("LLR");
    for (int rep = 0; rep < 8; ++rep) {
      LiftedExample ex = random_llr_lift(c, 0, {});
      const double defect = ex.s.periodicity_defect();
      if (defect > 1e-10) return fail_msg("closed-form point fails to close", defect, 1e-10);
      // Newton from a perturbed seed must land on the same point.
      const EdgeWeights w0 = ex.s.steps.front();
      const EdgeWeights seed{w0.a, w0.b * (1.0 + cplx(1e-4, -2e-4)), w0.c * (1.0 + cplx(-1e-4, 1e-4))};
      try {
        const auto refined = solve_periodic_newton(word, seed, w0.a);
        const EdgeWeights& r0 = refined.steps.front();
        if (std::abs(r0.b - w0.b) + std::abs(r0.c - w0.c) > 1e-8)
          return "newton drifted away from the closed-form point";
      } catch (const solver_error& e) {
        return std::string("newton failed from a nearby seed: ") + e.what();
      }
    }
    return "";
  });

  c.run("lift-log-sum-constancy", [&]() -> std::string {
    for (int rep = 0; rep < 6; ++rep) {
      const int eta = c.uniform_int(-2, 2);
      std::vector<int> shifts(3);
      for (auto& s : shifts) s = c.uniform_int(-2, 2);
      const LiftedExample ex = random_llr_lift(c, eta, shifts);
      for (std::size_t k = 0; k < ex.lf.A.size(); ++k) {
        const cplx sum = ex.lf.A[k] + ex.lf.B[k] + ex.lf.C[k];
        if (std::abs(sum - ex.lf.theta_v) > 1e-9 * (1.0 + std::abs(ex.lf.theta_v)))
          return fail_msg("log-sum drift at step " + std::to_string(k),
                          std::abs(sum - ex.lf.theta_v), 1e-9);
      }
    }
    return "";
  });

  c.run("lift-windings-integral-sum-zero", [&]() -> std::string {
    for (int rep = 0; rep < 6; ++rep) {
      const int eta = c.uniform_int(-2, 2);
      std::vector<int> shifts(3);
      for (auto& s : shifts) s = c.uniform_int(-3, 3);
      const LiftedExample ex = random_llr_lift(c, eta, shifts);
      if (ex.lf.lhat + ex.lf.mhat + ex.lf.nhat != 0) return "windings do not sum to zero";
    }
    return "";
  });

  c.run("rep-params-consistency", [&]() -> std::string {
    const LiftedExample ex = random_llr_lift(c, c.uniform_int(-1, 1), {});
    for (int n : {5, 7, 31}) {
      const QRoot q(n);
      const RepParams rp = rep_params(ex.lf, q);
      for (std::size_t k = 1; k < ex.s.steps.size(); ++k) {
        const cplx ak = ex.s.steps[k].a;
        if (rel_err(int_pow(rp.x[k], n), ak) > 1e-9)
          return "x_k^n does not reproduce the weight a_k";
        if (rel_err(int_pow(rp.u[k - 1], n), cplx(1.0) / ak) > 1e-9)
          return "u_k^n does not reproduce 1/a_k";
        if (rel_err(int_pow(rp.v[k - 1], n), cplx(1.0) + int_pow(rp.u[k - 1], n)) > 1e-9)
          return "v_k^n != 1 + u_k^n";
      }
    }
    return "";
  });

  c.run("correction-factor-inverse", [&]() -> std::string {
    for (int n = 3; n <= 99; n += 2) {
      const std::int64_t half = (n - 1) / 2;
      const std::int64_t sq = (half * half) % n;  // ((n-1)/2)^2 = inverse of 4 mod n
      if ((4 * sq) % n != 1) return "((n-1)/2)^2 is not the inverse of 4 mod n";
      LogLift lf;
      lf.lhat = c.uniform_int(-6, 6);
      lf.mhat = c.uniform_int(-6, 6);
      lf.nhat = -lf.lhat - lf.mhat;
      lf.V.resize(3);
      lf.A.resize(4);
      lf.B.resize(4);
      lf.C.resize(4);
      const auto cf = correction_factors(lf, n, 1);
      const auto direct = [&](std::int64_t h) { return (((h % n) * sq) % n + n) % n; };
      if (cf[0] != direct(lf.lhat) || cf[1] != direct(lf.mhat) || cf[2] != direct(lf.nhat))
        return "correction factors disagree with the ((n-1)/2)^2 closed form";
      if ((cf[0] + cf[1] + cf[2]) % n != 0) return "correction factors do not sum to 0 mod n";
    }
    return "";
  });

  c.run("bloch-wigner-symmetries", [&]() -> std::string {
    for (int rep = 0; rep < 12; ++rep) {
      cplx z = c.annulus(0.2, 3.0);
      if (std::abs(z.imag()) < 1e-3 || std::abs(z - cplx(1.0)) < 1e-3) { --rep; continue; }
      const double d = bloch_wigner(z);
      if (std::abs(bloch_wigner(std::conj(z)) + d) > 1e-11) return "D(conj z) != -D(z)";
      if (std::abs(bloch_wigner(cplx(1.0) / z) + d) > 1e-11) return "D(1/z) != -D(z)";
      if (std::abs(bloch_wigner(cplx(1.0) - z) + d) > 1e-11) return "D(1-z) != -D(z)";
    }
    return "";
  });

  c.run("trace-cross-method-complex", [&]() -> std::string {
    const LiftedExample ex = random_llr_lift(c, 0, {});
    const auto word = MonodromyWord::parse("LLR");
    for (int n : {3, 5, 7, 9, 11, 13}) {
      const cplx tp = trace_product(word, ex.lf, n);
      const cplx ts = trace_sum(word, ex.lf, n);
      const double e = std::abs(tp - ts) / std::max(1.0, std::abs(tp));
      if (e > 1e-9)
        return fail_msg("complex trace mismatch at n=" + std::to_string(n), e, 1e-9);
    }
    return "";
  });

  c.run("fit-recovers-synthetic-series", [&]() -> std::string {
    TraceSeries s;
    const std::array<double, 5> truth{0.2122, -1.3, 0.7, -0.4, 0.1};
    for (int n = 51; n <= 301; n += 2) {
      TraceRow r;
      r.n = n;
      r.mode = n % 4;
      double ell = 0.0, p = 1.0;
      for (double coef : truth) {
        ell += coef * p;
        p /= n;
      }
      r.ell = ell;
      r.abs_trace = std::exp(ell * n);
      r.trace = cplx(r.abs_trace, 0.0);
      s.rows.push_back(r);
    }
    const FitResult f = fit(s, 51, 4);
    for (int d = 0; d < 5; ++d) {
      if (std::abs(f.mode1.coeffs[static_cast<std::size_t>(d)] - truth[static_cast<std::size_t>(d)]) > 1e-7)
        return "mode-1 coefficients not recovered";
      if (std::abs(f.mode3.coeffs[static_cast<std::size_t>(d)] - truth[static_cast<std::size_t>(d)]) > 1e-7)
        return "mode-3 coefficients not recovered";
    }
    if (f.mode1.rms > 1e-12 || f.mode3.rms > 1e-12) return "nonzero residual on exact data";
    return "";
  });

  return c.failures;
}

}  // namespace qtorus
