#include "qtorus/intertwiner.hpp"

#include <cmath>
#include <stdexcept>

namespace qtorus {

namespace {

// Shared body of the two exchange builders.  eps = -1 selects the left
// exponent -i^2 + j^2 + 4ij, eps = +1 the right exponent i^2 + 3j^2 - 4ij;
// both can be written eps*(i^2 + j^2 - 4ij) + 2j^2, plus the common i - j.
Intertwiner build_exchange(const QdlParams& p, int eps, IntertwinerKind kind) {
  const int n = p.q.n();
  const QdlTable table(p);
  // Fold the 1/(|dq|^{1/n} sqrt(n)) normalization into the column coefficient
  // before exponentiating: the raw cyclic-dilogarithm values overflow double
  // near n ~ 300 while the normalized entries stay O(1).
  const double log_norm =
      dq_log_abs(p.u, p.q) / static_cast<double>(n) + 0.5 * std::log(static_cast<double>(n));
  Mat m(n, n);
  for (std::int64_t j = 1; j <= n; ++j) {
    const cplx coeff = std::exp(table.log_qdl(2 * j) - log_norm);
    for (std::int64_t i = 1; i <= n; ++i) {
      const std::int64_t e = eps * (i * i + j * j - 4 * i * j) + 2 * j * j + i - j;
      m(i - 1, j - 1) = coeff * p.q.pow(e);
    }
  }
  return {std::move(m), kind, n};
}

}  // namespace

Intertwiner build_left(const QdlParams& p) { return build_exchange(p, -1, IntertwinerKind::Left); }

Intertwiner build_right(const QdlParams& p) { return build_exchange(p, +1, IntertwinerKind::Right); }

Intertwiner build_twist(std::int64_t l0, std::int64_t m0, std::int64_t n0, const QRoot& q) {
  const int n = q.n();
  if (((l0 + m0 + n0) % n + n) % n != 0)
    throw std::invalid_argument("build_twist: l0 + m0 + n0 must vanish mod n");
  Mat m = Mat::Zero(n, n);
  for (std::int64_t j = 1; j <= n; ++j) {
    const auto row = static_cast<Eigen::Index>(((j + l0 - 1) % n + n) % n);  // w_j -> w_{j + l0}
    m(row, static_cast<Eigen::Index>(j - 1)) = q.pow(2 * j * (n0 - m0));
  }
  return {std::move(m), IntertwinerKind::Twist, n};
}

Intertwiner compose(const std::vector<Intertwiner>& parts) {
  if (parts.empty()) throw std::invalid_argument("compose: no parts");
  const int n = parts.front().n;
  for (const auto& p : parts)
    if (p.n != n) throw std::invalid_argument("compose: parts of mixed dimension");
  Mat acc = parts.front().mat;
  for (std::size_t i = 1; i < parts.size(); ++i) acc = acc * parts[i].mat;
  return {std::move(acc), IntertwinerKind::Composite, n};
}

}  // namespace qtorus
