#include "qtorus/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtorus/errors.hpp"

namespace qtorus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2_6 = kPi * kPi / 6.0;

// Bernoulli numbers B_0, B_1, B_2, ... with the B_1 = -1/2 convention; odd
// indices > 1 vanish.  Enough terms for |w| up to ~2 at double precision.
constexpr std::array<double, 32> kBernoulli = {
    1.0, -0.5, 1.0 / 6.0, 0.0,
    -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0,
    -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0,
    -691.0 / 2730.0, 0.0, 7.0 / 6.0, 0.0,
    -3617.0 / 510.0, 0.0, 43867.0 / 798.0, 0.0,
    -174611.0 / 330.0, 0.0, 854513.0 / 138.0, 0.0,
    -236364091.0 / 2730.0, 0.0, 8553103.0 / 6.0, 0.0,
    -23749461029.0 / 870.0, 0.0, 8615841276005.0 / 14322.0, 0.0};

// Series part: Li_2(z) = sum_{j>=0} B_j w^{j+1} / (j+1)!, w = -Log(1-z),
// valid for |w| < 2 pi.  After the reductions below |w| stays near 1.
cplx dilog_series(cplx z) {
  const cplx w = -std::log(cplx(1.0) - z);
  cplx term = w;  // B_0 w / 1!
  cplx sum = term;
  double fact_ratio;
  for (std::size_t j = 1; j < kBernoulli.size(); ++j) {
    fact_ratio = 1.0 / static_cast<double>(j + 1);
    term *= w * fact_ratio;  // now w^{j+1} / (j+1)!
    if (kBernoulli[j] == 0.0) continue;
    const cplx contrib = kBernoulli[j] * term;
    sum += contrib;
    if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

cplx dilog(cplx z) {
  if (z == cplx(0.0)) return cplx(0.0);
  if (z == cplx(1.0)) return cplx(kPi2_6, 0.0);

  // Track answer = sign * Li_2(z_cur) + shift through the reductions.
  double sign = 1.0;
  cplx shift(0.0);

  if (std::abs(z) > 1.0) {
    // Li_2(z) = -Li_2(1/z) - pi^2/6 - Log(-z)^2 / 2
    const cplx lnz = std::log(-z);
    shift += sign * (-cplx(kPi2_6) - 0.5 * lnz * lnz);
    sign = -sign;
    z = cplx(1.0) / z;
  }
  if (z.real() > 0.5) {
    // Li_2(z) = pi^2/6 - Log(z) Log(1-z) - Li_2(1-z)
    shift += sign * (cplx(kPi2_6) - std::log(z) * std::log(cplx(1.0) - z));
    sign = -sign;
    z = cplx(1.0) - z;
  }
  return sign * dilog_series(z) + shift;
}

double bloch_wigner(cplx z) {
  if (z == cplx(0.0) || z == cplx(1.0))
    throw std::invalid_argument("bloch_wigner: z = 0 and z = 1 are boundary points");
  if (z.imag() == 0.0) return 0.0;
  return dilog(z).imag() + std::arg(cplx(1.0) - z) * std::log(std::abs(z));
}

std::vector<cplx> tetra_shapes(const SweepWeights& s) {
  if (s.steps.size() != s.word.letters.size() + 1)
    throw std::invalid_argument("tetra_shapes: sweep does not match its word");
  if (s.periodicity_defect() > 1e-6)
    throw std::invalid_argument("tetra_shapes: sweep is not periodic");
  std::vector<cplx> shapes;
  shapes.reserve(s.word.letters.size());
  for (std::size_t k = 0; k < s.word.letters.size(); ++k) {
    const EdgeWeights& w = s.steps[k];
    shapes.push_back(s.word.letters[k] == Letter::L ? -w.b : -w.c);
  }
  return shapes;
}

GeomResult geom_result(const SweepWeights& s) {
  GeomResult g;
  g.shapes = tetra_shapes(s);
  double acc = 0.0;
  for (const cplx& z : g.shapes) acc += bloch_wigner(z);
  g.volume = std::abs(acc);
  return g;
}

double volume(const MonodromyWord& word, int starts, std::uint64_t rng_seed) {
  return geom_result(solve_hyperbolic(word, starts, rng_seed)).volume;
}

}  // namespace qtorus
