#pragma once

// Moment bound for a nonnegative function phi on a domain X with |X| points:
//
//   sum phi^n <= |X|^-(n-1) ||phi||_1^n
//              + n(n-1)/2 ||phi||_inf^(n-2) sum (phi - ||phi||_1/|X|)^2.

#include "ffdist/spectral.hpp"

namespace ffdist {

struct AveragingBound {
  double lhs = 0;
  double rhs = 0;
  bool exact = false;       // integer-valued phi: decided in rational arithmetic
  bool holds = false;       // lhs <= rhs
  bool equal = false;       // lhs == rhs (exactly when `exact`)
};

// The domain is the whole table: |X| = phi.values.size(). Throws
// NegativeInput for negative or non-real entries and InvalidArgument for n < 2.
AveragingBound averaging_bound_check(const WeightedFunction& phi, unsigned n);

}  // namespace ffdist
