#include "qtorus/trace.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "qtorus/errors.hpp"
#include "qtorus/qdilog.hpp"

namespace qtorus {

namespace {

struct StepData {
  RepParams rp;
  std::array<std::int64_t, 3> cf;
  std::vector<int> eps;  // eps[k] for step k+1: -1 for L, +1 for R
};

StepData step_data(const MonodromyWord& word, const LogLift& lf, const QRoot& q, int root_k) {
  if (word.letters.size() < 2 || !word.pseudo_anosov())
    throw degenerate_error("trace: word is not pseudo-Anosov (needs both letters)");
  if (lf.V.size() != word.letters.size())
    throw std::invalid_argument("trace: lift does not match the word");
  StepData d;
  d.rp = rep_params(lf, q);
  d.cf = correction_factors(lf, q.n(), root_k);
  d.eps.reserve(word.letters.size());
  for (Letter l : word.letters) d.eps.push_back(l == Letter::L ? -1 : +1);
  return d;
}

}  // namespace

Intertwiner intertwiner_for(const MonodromyWord& word, const LogLift& lf, int n, int root_k) {
  const QRoot q(n, root_k);
  const StepData d = step_data(word, lf, q, root_k);
  std::vector<Intertwiner> parts;
  parts.reserve(word.letters.size() + 1);
  for (std::size_t k = 0; k < word.letters.size(); ++k) {
    const QdlParams p(d.rp.u[k], d.rp.v[k], q);
    parts.push_back(word.letters[k] == Letter::L ? build_left(p) : build_right(p));
  }
  parts.push_back(build_twist(d.cf[0], d.cf[1], d.cf[2], q));
  return compose(parts);
}

cplx trace_product(const MonodromyWord& word, const LogLift& lf, int n, int root_k) {
  const QRoot q(n, root_k);
  const StepData d = step_data(word, lf, q, root_k);
  const std::size_t k0 = word.letters.size();

  std::vector<Mat> lam;
  lam.reserve(k0);
  for (std::size_t k = 0; k < k0; ++k) {
    const QdlParams p(d.rp.u[k], d.rp.v[k], q);
    lam.push_back((word.letters[k] == Letter::L ? build_left(p) : build_right(p)).mat);
  }

  Mat prod = lam[0];
  for (std::size_t k = 1; k + 1 < k0; ++k) prod = prod * lam[k];

  // Right-multiplying by the twist permutes and rephases columns; gather the
  // last factor's columns instead of running a GEMM against a sparse matrix.
  const std::int64_t l0 = d.cf[0], m0 = d.cf[1], n0 = d.cf[2];
  Mat last(n, n);
  for (std::int64_t j = 1; j <= n; ++j) {
    const auto src = static_cast<Eigen::Index>(((j + l0 - 1) % n + n) % n);
    last.col(j - 1) = lam[k0 - 1].col(src) * q.pow(2 * j * (n0 - m0));
  }

  // tr(prod * last) without forming the product.
  return (prod.transpose().array() * last.array()).sum();
}

cplx trace_sum(const MonodromyWord& word, const LogLift& lf, int n, int root_k) {
  const QRoot q(n, root_k);
  const StepData d = step_data(word, lf, q, root_k);
  const std::size_t k0 = word.letters.size();
  const std::int64_t l0 = d.cf[0], m0 = d.cf[1], n0 = d.cf[2];
  const int eps1 = d.eps[0];

  // Diagonal weights: normalized cyclic-dilogarithm columns times the
  // quadratic phase, with the twist's boundary phases attached to the first
  // and last steps.  Keeping the normalization inside the exp() is what
  // prevents overflow: raw columns reach ~1e114 at n ~ 300.
  std::vector<std::vector<cplx>> diag(k0, std::vector<cplx>(static_cast<std::size_t>(n)));
  for (std::size_t k = 0; k < k0; ++k) {
    const QdlParams p(d.rp.u[k], d.rp.v[k], q);
    const QdlTable table(p);
    const double log_norm =
        dq_log_abs(d.rp.u[k], q) / static_cast<double>(n) + 0.5 * std::log(static_cast<double>(n));
    const int eps_next = d.eps[(k + 1) % k0];
    const std::int64_t quad = d.eps[k] + eps_next + 2;
    for (std::int64_t i = 1; i <= n; ++i) {
      std::int64_t e = quad * i * i;
      if (k == 0) e += 4 * eps1 * l0 * i;
      if (k == k0 - 1) e += 2 * i * (-eps1 * l0 - m0 + n0);
      diag[k][static_cast<std::size_t>(i - 1)] =
          std::exp(table.log_qdl(2 * i) - log_norm) * q.pow(e);
    }
  }

  // Coupling kernel between consecutive summation indices.
  const auto coupling = [&](std::size_t k) {
    const int eps_next = d.eps[(k + 1) % k0];
    Mat g(n, n);
    for (std::int64_t i = 1; i <= n; ++i)
      for (std::int64_t j = 1; j <= n; ++j)
        g(i - 1, j - 1) = diag[k][static_cast<std::size_t>(i - 1)] *
                          q.pow(-4LL * eps_next * i * j);
    return g;
  };

  Mat prod = coupling(0);
  for (std::size_t k = 1; k + 1 < k0; ++k) prod = prod * coupling(k);

  // Close the cycle against the last diagonal-plus-kernel without the final
  // GEMM: tr(prod * M) with M(i,j) = diag[k0-1](i) q^{-4 eps1 i j}.
  const int eps_last = d.eps[0];
  cplx acc(0.0);
  for (std::int64_t b = 1; b <= n; ++b) {
    cplx inner(0.0);
    for (std::int64_t a = 1; a <= n; ++a)
      inner += prod(a - 1, b - 1) * q.pow(-4LL * eps_last * b * a);
    acc += diag[k0 - 1][static_cast<std::size_t>(b - 1)] * inner;
  }

  // Global phase fixed by rewriting the twisted trace as the symmetric cyclic
  // sum; modulus 1, kept so both trace paths agree as complex numbers.
  return q.pow(l0 * (eps1 * l0 + 2 * m0 - 2 * n0 - 1)) * acc;
}

namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("QTORUS_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

TraceSeries series(const MonodromyWord& word, const LogLift& lf, int n_min, int n_max,
                   TraceMethod method, int workers, int root_k) {
  if (n_min < 3 || n_min % 2 == 0 || n_max % 2 == 0 || n_max < n_min)
    throw std::invalid_argument("series: need odd 3 <= n_min <= n_max");

  std::vector<int> ns;
  for (int n = n_min; n <= n_max; n += 2) ns.push_back(n);
  std::vector<TraceRow> rows(ns.size());

  const auto compute = [&](std::size_t idx) {
    const int n = ns[idx];
    TraceRow row;
    row.n = n;
    row.mode = n % 4;
    try {
      cplx t;
      if (method == TraceMethod::Product) {
        t = trace_product(word, lf, n, root_k);
      } else if (method == TraceMethod::Sum) {
        t = trace_sum(word, lf, n, root_k);
      } else {
        const cplx tp = trace_product(word, lf, n, root_k);
        const cplx ts = trace_sum(word, lf, n, root_k);
        const double scale = std::max({std::abs(tp), std::abs(ts), 1e-300});
        if (std::abs(std::abs(tp) - std::abs(ts)) / scale > 1e-7) row.flags = "suspect";
        t = tp;
      }
      row.trace = t;
      row.abs_trace = std::abs(t);
      row.ell = std::log(row.abs_trace) / static_cast<double>(n);
    } catch (const degenerate_error&) {
      row.flags = "degenerate";
      const double nan = std::nan("");
      row.trace = cplx(nan, nan);
      row.abs_trace = nan;
      row.ell = nan;
    }
    rows[idx] = std::move(row);
  };

  const int nw = std::min<int>(resolve_workers(workers), static_cast<int>(ns.size()));
  if (nw <= 1) {
    for (std::size_t i = 0; i < ns.size(); ++i) compute(i);
  } else {
    // Static round-robin partition: each index is owned by exactly one
    // worker, so results land in fixed slots and output never depends on
    // scheduling.
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int t = 0; t < nw; ++t)
      pool.emplace_back([&, t]() {
        for (std::size_t i = static_cast<std::size_t>(t); i < ns.size();
             i += static_cast<std::size_t>(nw))
          compute(i);
      });
    for (auto& th : pool) th.join();
  }

  TraceSeries out;
  out.rows = std::move(rows);
  return out;
}

}  // namespace qtorus
