#pragma once

#include <stdexcept>

namespace qtorus {

// A geometric or algebraic configuration the construction cannot pass through:
// a diagonal exchange hitting weight -1, a vanishing 1 + u^n, a word that is
// not pseudo-Anosov, and similar.  The CLI maps this to exit code 2.
struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical routine gave up: Newton failed to converge, the Jacobian became
// singular, or no geometric solution was found.  The CLI maps this to exit 3.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qtorus
