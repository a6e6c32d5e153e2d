#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtorus/roots.hpp"

namespace qtorus {

enum class Letter : char { L = 'L', R = 'R' };

// A word in the two elementary mapping classes acting on the two triangulations
// of the once-punctured torus, read left to right, together with the recorded
// exponent of the central hyperelliptic involution (eps; it never enters any
// numerical quantity here).
struct MonodromyWord {
  std::vector<Letter> letters;
  int eps = 0;

  std::size_t size() const { return letters.size(); }
  // The induced map has a pseudo-Anosov representative iff both letters occur.
  bool pseudo_anosov() const;
  std::string str() const;

  static MonodromyWord parse(const std::string& s, int eps = 0);
};

// Cross-ratio weights on the three edge classes of the triangulation.  All
// three must be nonzero; the product a*b*c is invariant under the moves.
struct EdgeWeights {
  cplx a, b, c;
};

// Weights after each prefix of the word: steps[0] is the initial triple,
// steps[k] the triple after the k-th letter.
struct SweepWeights {
  MonodromyWord word;
  std::vector<EdgeWeights> steps;

  // Max relative gap between steps.front() and steps.back(); small for a
  // periodic point of the word's dynamics.
  double periodicity_defect() const;
};

// One diagonal exchange:
//   L: (a, b, c) -> (1/b, (1+b)^2 a, (1+b)^{-2} b^2 c)
//   R: (a, b, c) -> (1/c, (1+c)^2 b, (1+c)^{-2} c^2 a)
// The exchanged weight (b for L, c for R) must avoid 0 (argument error) and
// -1 (degenerate exchange).
EdgeWeights step(const EdgeWeights& w, Letter letter);

SweepWeights sweep(const MonodromyWord& word, const EdgeWeights& initial);

// Closed-form periodic starting triples of the word LLR.  Two one-parameter
// families, each a conjugate pair of branches (+1 / -1):
//   family 1:  b0 = -(2a0+1)/(2(a0+1)) +- i sqrt(8a0^2 + 11a0 + 4) / (2(a0+1) sqrt(a0))
//   family 2:  b0 = -(2a0+3)/(2(a0+1)) +- i sqrt(3a0 + 4)          / (2(a0+1) sqrt(a0))
// and in both cases c0 = (1 + a0(1+b0)^2)^2 / (a0^3 b0^2 (1+b0)^2), with the
// principal square root.  Verified against a full sweep before returning.
EdgeWeights solve_periodic_llr(cplx a0, int branch, int family);

// Newton refinement of a periodic point of an arbitrary pseudo-Anosov word,
// holding a0 fixed and solving the period conditions for (b0, c0).  Central
// finite-difference Jacobian; at most 100 iterations; relative residual
// 1e-11 over all three components (the a-component is implied by product
// conservation and checked).
SweepWeights solve_periodic_newton(const MonodromyWord& word, const EdgeWeights& seed,
                                   cplx fix_a0);

// Multi-start search for the geometric periodic point on the slice
// a0 b0 c0 = 1 (trace -2 at the puncture).  Starts are drawn from the annulus
// 0.3 < |w| < 3 with the given RNG seed, after a short list of known-good
// points.  Solutions are deduplicated, filtered to geometric ones (all
// tetrahedron shapes strictly off the real axis, common sign of Im), and the
// survivor with the lexicographically smallest rounded coordinate tuple is
// returned, which makes the choice between a conjugate pair deterministic.
SweepWeights solve_hyperbolic(const MonodromyWord& word, int starts = 64,
                              std::uint64_t rng_seed = 20240813u);

}  // namespace qtorus
