#include "gptnoise/lp.hpp"

#include <limits>

namespace gptnoise::lp {

namespace {
constexpr double kPivotEps = 1e-12;
}

FeasibilityResult phase_one(const RMatrix& a, const RVector& b, double tol) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (b.size() != m) throw Error(ErrorCode::InvalidParameter, "right-hand side length does not match constraint rows");
  if (!a.allFinite() || !b.allFinite()) throw Error(ErrorCode::InvalidMatrix, "LP data has non-finite entries");

  // Tableau columns: [x (n) | artificials (m) | rhs].
  const Index rhs = n + m;
  RMatrix tab = RMatrix::Zero(m, n + m + 1);
  RVector sign = RVector::Ones(m);
  for (Index i = 0; i < m; ++i) {
    if (b(i) < 0) sign(i) = -1.0;
    tab.row(i).head(n) = sign(i) * a.row(i);
    tab(i, n + i) = 1.0;
    tab(i, rhs) = sign(i) * b(i);
  }
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  // Reduced costs of the phase-one objective (sum of artificials).
  RVector cost = RVector::Zero(n + m + 1);
  for (Index i = 0; i < m; ++i) cost -= tab.row(i).transpose();
  for (Index i = 0; i < m; ++i) cost(n + i) = 0.0;

  FeasibilityResult result;
  const int max_pivots = 50 * static_cast<int>(n + m) + 1000;
  while (result.pivots < max_pivots) {
    Index enter = -1;
    for (Index j = 0; j < n + m; ++j) {
      if (cost(j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      const double coef = tab(i, enter);
      if (coef <= kPivotEps) continue;
      const double ratio = tab(i, rhs) / coef;
      const bool better = ratio < best - kPivotEps;
      const bool tie = !better && ratio <= best + kPivotEps;
      if (better || (tie && leave >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a pivot.
    if (leave < 0) break;

    tab.row(leave) /= tab(leave, enter);
    for (Index i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f != 0.0) tab.row(i) -= f * tab.row(leave);
    }
    const double f = cost(enter);
    cost -= f * tab.row(leave).transpose();
    basis[static_cast<std::size_t>(leave)] = enter;
    ++result.pivots;
  }

  double infeasibility = 0.0;
  result.x = RVector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index var = basis[static_cast<std::size_t>(i)];
    if (var >= n)
      infeasibility += tab(i, rhs);
    else
      result.x(var) = std::max(0.0, tab(i, rhs));
  }
  result.infeasibility = infeasibility;
  result.feasible = infeasibility <= tol;
  if (!result.feasible) {
    // Simplex multipliers y = c_B B^{-1}; the reduced cost of artificial i is 1 - y_i.
    result.certificate.resize(m);
    for (Index i = 0; i < m; ++i) result.certificate(i) = sign(i) * (1.0 - cost(n + i));
  }
  return result;
}

bool verify_certificate(const RMatrix& a, const RVector& b, const RVector& y, double tol) {
  if (y.size() != a.rows() || b.size() != a.rows()) return false;
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  const RVector aty = a.transpose() * y;
  if (aty.size() > 0 && aty.maxCoeff() > tol * scale) return false;
  return b.dot(y) > tol * scale;
}

}  // namespace gptnoise::lp
