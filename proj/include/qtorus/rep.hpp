#pragma once

#include <Eigen/Dense>

#include "qtorus/roots.hpp"

namespace qtorus {

using Mat = Eigen::MatrixXcd;

// Nonzero scalars (x, y, z) classifying an n-dimensional irreducible cyclic
// representation of the quantized triangle algebra of the once-punctured
// torus at the root q.
struct RepTriple {
  cplx x, y, z;
};

struct GeneratorMatrices {
  Mat X, Y, Z;
};

// Standard representation on basis w_1..w_n (indices mod n):
//   X w_i = x q^{4i} w_i,   Y w_i = y q^{-2i} w_{i+1},   Z w_i = z q^{-2i} w_{i-1}.
// Satisfies X Y = q^4 Y X (and cyclic), X^n = x^n I, Y^n = y^n I, Z^n = z^n I,
// and q^{-2} X Y Z = xyz I.
GeneratorMatrices standard_rep(const RepTriple& t, const QRoot& q);

// Pullback of the generators along the left / right diagonal-exchange
// automorphism.  For the left move:
//   X -> Y^{-1},
//   Y -> (1 + q Y)(1 + q^3 Y) X,
//   Z -> (1 + q Y^{-1})^{-1} (1 + q^3 Y^{-1})^{-1} Z,
// and the right move swaps the roles of Y and Z and lands on X:
//   X -> Z^{-1},
//   Y -> (1 + q Z)(1 + q^3 Z) Y,
//   Z -> (1 + q Z^{-1})^{-1} (1 + q^3 Z^{-1})^{-1} X.
// Throws degenerate_error when a factor to invert is singular (y^n = -1,
// resp. z^n = -1) or when Y (resp. Z) itself is singular.
GeneratorMatrices apply_left_iso(const GeneratorMatrices& g, const QRoot& q);
GeneratorMatrices apply_right_iso(const GeneratorMatrices& g, const QRoot& q);

}  // namespace qtorus
