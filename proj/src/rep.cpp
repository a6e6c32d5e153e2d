#include "qtorus/rep.hpp"

#include <stdexcept>
#include <string>

#include "qtorus/errors.hpp"

namespace qtorus {

namespace {

void require_nonzero(const RepTriple& t) {
  if (t.x == cplx(0.0) || t.y == cplx(0.0) || t.z == cplx(0.0))
    throw std::invalid_argument("standard_rep: x, y, z must all be nonzero");
}

}  // namespace

GeneratorMatrices standard_rep(const RepTriple& t, const QRoot& q) {
  require_nonzero(t);
  const int n = q.n();
  GeneratorMatrices g;
  g.X = Mat::Zero(n, n);
  g.Y = Mat::Zero(n, n);
  g.Z = Mat::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    const int col = i - 1;
    g.X(col, col) = t.x * q.pow(4LL * i);
    g.Y(i % n, col) = t.y * q.pow(-2LL * i);           // w_i -> w_{i+1}
    g.Z((i - 2 + n) % n, col) = t.z * q.pow(-2LL * i); // w_i -> w_{i-1}
  }
  return g;
}

namespace {

// Shared body of the two diagonal-exchange pullbacks.  `B` is the generator
// that gets inverted (Y for the left move, Z for the right move) and `A` the
// one it multiplies onto.
GeneratorMatrices exchange_pullback(const Mat& A, const Mat& B, const Mat& C, const QRoot& q,
                                    const char* move) {
  const int n = static_cast<int>(B.rows());
  const Mat I = Mat::Identity(n, n);

  Eigen::FullPivLU<Mat> luB(B);
  luB.setThreshold(1e-10);
  if (!luB.isInvertible())
    throw degenerate_error(std::string(move) + ": generator to invert is singular");
  const Mat Binv = luB.inverse();

  GeneratorMatrices out;
  out.X = Binv;
  out.Y = (I + q.pow(1) * B) * ((I + q.pow(3) * B) * A);

  Eigen::FullPivLU<Mat> lu1(I + q.pow(1) * Binv);
  Eigen::FullPivLU<Mat> lu3(I + q.pow(3) * Binv);
  lu1.setThreshold(1e-10);
  lu3.setThreshold(1e-10);
  if (!lu1.isInvertible() || !lu3.isInvertible())
    throw degenerate_error(std::string(move) +
                           ": 1 + q^{1,3} B^{-1} is singular (scalar of B is an n-th root of -1)");
  out.Z = lu1.solve(lu3.solve(C));
  return out;
}

}  // namespace

GeneratorMatrices apply_left_iso(const GeneratorMatrices& g, const QRoot& q) {
  return exchange_pullback(g.X, g.Y, g.Z, q, "left exchange");
}

GeneratorMatrices apply_right_iso(const GeneratorMatrices& g, const QRoot& q) {
  // Mirror image: invert Z, multiply onto Y, send Z to the dressed X.
  return exchange_pullback(g.Y, g.Z, g.X, q, "right exchange");
}

}  // namespace qtorus
