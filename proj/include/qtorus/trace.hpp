#pragma once

#include <string>
#include <vector>

#include "qtorus/intertwiner.hpp"
#include "qtorus/lift.hpp"
#include "qtorus/sweep.hpp"

namespace qtorus {

struct TraceRow {
  int n = 0;
  int mode = 0;  // n mod 4, either 1 or 3
  cplx trace;
  double abs_trace = 0.0;
  double ell = 0.0;  // log(abs_trace) / n
  std::string flags;  // "", "suspect" (methods disagree), or "degenerate"
};

struct TraceSeries {
  std::vector<TraceRow> rows;
};

enum class TraceMethod { Product, Sum, Both };

// The full intertwiner at dimension n: the elementary exchange intertwiners
// of the word's letters composed in order, followed by the twist with the
// correction factors of the lift.  Its trace is the invariant under study.
Intertwiner intertwiner_for(const MonodromyWord& word, const LogLift& lf, int n, int root_k = 1);

// Trace via explicit matrix products.  One GEMM per letter after the first;
// the twist is applied as a column gather, never as a full product.
cplx trace_product(const MonodromyWord& word, const LogLift& lf, int n, int root_k = 1);

// Trace via the reorganized cyclic sum: diagonal weights carrying the
// cyclic-dilogarithm columns and the quadratic phases, coupled by the
// q^{-4 eps i j} kernels, contracted around the cycle.  Independent of the
// matrix path except for sharing the builders' parameter data; normalization
// is folded into the diagonals to keep every intermediate at unit scale.
cplx trace_sum(const MonodromyWord& word, const LogLift& lf, int n, int root_k = 1);

// Traces for all odd n in [n_min, n_max].  method Both cross-checks the two
// paths and flags rows whose moduli disagree beyond 1e-7 relative as
// "suspect"; rows hitting a degenerate configuration are flagged
// "degenerate" with NaN values.  workers <= 0 means: QTORUS_WORKERS from the
// environment, else hardware concurrency.  Output is ordered by n and
// independent of the worker count.
TraceSeries series(const MonodromyWord& word, const LogLift& lf, int n_min, int n_max,
                   TraceMethod method, int workers = 0, int root_k = 1);

}  // namespace qtorus
