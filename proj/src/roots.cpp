#include "qtorus/roots.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qtorus {

QRoot::QRoot(int n, int k) : n_(n), k_(k) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("QRoot: n must be odd and >= 3, got " + std::to_string(n));
  int kr = ((k % n) + n) % n;
  if (std::gcd(kr, n) != 1)
    throw std::invalid_argument("QRoot: k must be coprime to n, got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  k_red_ = kr;

  auto table = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    // q^m = exp(2 pi i (k m mod n) / n); reduce the exponent first so the
    // angle handed to polar stays in [0, 2 pi).
    int e = static_cast<int>((static_cast<std::int64_t>(kr) * m) % n);
    (*table)[static_cast<std::size_t>(m)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
  }
  // Primitivity sanity check: q^m != 1 for 0 < m < n.  Guaranteed by the gcd
  // test above; this catches table-construction mistakes.
  for (int m = 1; m < n; ++m) {
    if (std::abs((*table)[static_cast<std::size_t>(m)] - cplx(1.0, 0.0)) < 1e-9)
      throw std::logic_error("QRoot: power table lost primitivity");
  }
  powers_ = std::move(table);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
  std::int64_t r0 = n, r1 = ((a % n) + n) % n;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1)
    throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                                std::to_string(n));
  return ((t0 % n) + n) % n;
}

}  // namespace qtorus
