#pragma once

#include <cstdint>
#include <vector>

#include "qtorus/qdilog.hpp"
#include "qtorus/rep.hpp"

namespace qtorus {

enum class IntertwinerKind { Left, Right, Twist, Composite };

struct Intertwiner {
  Mat mat;
  IntertwinerKind kind = IntertwinerKind::Composite;
  int n = 0;
};

// Elementary intertwiner of a left diagonal exchange.  Entry (i, j), both
// 1-based, is the coefficient of w_i in the image of w_j:
//   qdl(u, v | 2j) / (|dq(u)|^{1/n} sqrt(n)) * q^{-i^2 + j^2 + 4ij + i - j}.
// The normalization makes |det| = 1.
Intertwiner build_left(const QdlParams& p);

// Right counterpart; exponent q^{i^2 + 3j^2 - 4ij + i - j} with the same
// prefactor.
Intertwiner build_right(const QdlParams& p);

// Twist intertwiner T_{l0, m0, n0}, requiring l0 + m0 + n0 = 0 mod n:
//   (T)_{i j} = q^{2 j (n0 - m0)} delta_{i, j + l0}   (indices mod n).
// A scaled permutation with det T = 1 exactly.
Intertwiner build_twist(std::int64_t l0, std::int64_t m0, std::int64_t n0, const QRoot& q);

// Matrix product of the parts, in the order given.  All parts must share n.
Intertwiner compose(const std::vector<Intertwiner>& parts);

}  // namespace qtorus
