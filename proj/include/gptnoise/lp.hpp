#pragma once

#include "gptnoise/linalg.hpp"

namespace gptnoise::lp {

struct FeasibilityResult {
  bool feasible = false;
  /// Nonnegative solution of A x = b when feasible.
  RVector x;
  /// Farkas ray y with A^T y <= 0 and b^T y > 0 when infeasible.
  RVector certificate;
  /// Optimal phase-one objective (sum of artificial variables).
  double infeasibility = 0.0;
  int pivots = 0;
};

/// Decides {x >= 0 : A x = b} with a dense phase-one simplex tableau.
/// Pivoting follows Bland's rule, so the pivot sequence is deterministic
/// and cycling is impossible.
FeasibilityResult phase_one(const RMatrix& a, const RVector& b, double tol = 1e-9);

/// Checks a Farkas certificate independently of the solver.
bool verify_certificate(const RMatrix& a, const RVector& b, const RVector& y, double tol = 1e-9);

}  // namespace gptnoise::lp
