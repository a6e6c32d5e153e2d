#pragma once

#include <vector>

#include "qtorus/sweep.hpp"

namespace qtorus {

struct GeomResult {
  std::vector<cplx> shapes;
  double volume = 0.0;
};

// Dilogarithm Li_2(z), principal branch (cut along [1, inf)).  Reduced to
// |z| <= 1, Re z <= 1/2 by the inversion and reflection identities, then
// summed as the Bernoulli series in w = -Log(1 - z).  Accurate to ~1e-15
// relative away from the cut.
cplx dilog(cplx z);

// Bloch-Wigner function D(z) = Im Li_2(z) + arg(1 - z) log|z|.  Real z gives
// exactly 0; z = 0 and z = 1 are rejected.  This is the hyperbolic volume of
// the ideal tetrahedron with cross-ratio z (for Im z > 0).
double bloch_wigner(cplx z);

// Shape parameter of the tetrahedron glued in at step k: the negative of the
// weight about to be exchanged, so -b_{k-1} for an L step and -c_{k-1} for an
// R step.  Requires a periodic sweep (defect <= 1e-6).
std::vector<cplx> tetra_shapes(const SweepWeights& s);

GeomResult geom_result(const SweepWeights& s);

// Hyperbolic volume of the mapping torus of the word: |sum_k D(z_k)| over the
// shapes of the geometric periodic point found by solve_hyperbolic.
double volume(const MonodromyWord& word, int starts = 64, std::uint64_t rng_seed = 20240813u);

}  // namespace qtorus
