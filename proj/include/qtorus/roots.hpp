#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace qtorus {

using cplx = std::complex<double>;

// Primitive n-th root of unity q = exp(2*pi*i*k/n), n odd and >= 3, gcd(k,n)=1.
//
// Every power q^m used by the matrix builders goes through an exact integer
// reduction of m mod n followed by a table lookup, so no phase error
// accumulates no matter how large the exponent polynomial gets.  Copies share
// the table.
class QRoot {
 public:
  explicit QRoot(int n, int k = 1);

  int n() const { return n_; }
  int k() const { return k_; }
  cplx q() const { return (*powers_)[1]; }

  // q^m with exact reduction of m modulo n.
  cplx pow(std::int64_t m) const {
    std::int64_t r = m % n_;
    if (r < 0) r += n_;
    return (*powers_)[static_cast<std::size_t>(r)];
  }

 private:
  int n_ = 0;
  int k_ = 1;
  int k_red_ = 1;  // k mod n, in [0, n)
  std::shared_ptr<const std::vector<cplx>> powers_;
};

// Inverse of a modulo n (n >= 1).  Throws std::invalid_argument if gcd(a,n) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t n);

}  // namespace qtorus
