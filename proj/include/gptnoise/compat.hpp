#pragma once

// Joint observables, the noise-content sufficient condition for
// compatibility with an explicit joint construction, and an exact LP
// decision procedure for polytope theories.

#include <optional>
#include <vector>

#include "gptnoise/channels.hpp"
#include "gptnoise/noise.hpp"

namespace gptnoise {

/// Observable on a product outcome grid X1 x ... x Xm. Base outcome codes
/// are the mixed-radix encoding (encode_tuple) of positions in each factor.
class JointObservable {
 public:
  JointObservable(Observable base, std::vector<std::vector<int>> factors);

  const Observable& base() const { return base_; }
  const std::vector<std::vector<int>>& factors() const { return factors_; }
  Index arity() const { return static_cast<Index>(factors_.size()); }
  std::vector<Index> radices() const;

 private:
  Observable base_;
  std::vector<std::vector<int>> factors_;
};

/// Number of cells of the product grid, or SizeCap past `cap`.
Index grid_size(const std::vector<Index>& radices, Index cap);

/// Marginal over factor j (0-based).
Observable marginal(const JointObservable& g, Index j);

/// G_{x1..xm} = sum_y prod_j nu_j(y, x_j) C_y.
JointObservable joint_from_postprocessings(const Observable& c, const std::vector<ClassicalChannel>& channels);

/// Max marginal deviation from the given observables; OutcomeMismatch on shape mismatch.
double marginal_error(const JointObservable& g, const std::vector<Observable>& observables);
bool is_joint_of(const JointObservable& g, const std::vector<Observable>& observables, double tol);

/// Weights p_j = 1 - w_j + (sum w - (m - 1)) / m, clamped and renormalized.
RVector default_weights(const RVector& noise_contents);

/// Joint observable from A_j = p_j C_j + (1 - p_j) T_j, with G given by
/// G_{x1..xm} = sum_j p_j C_j(x_j) prod_{i != j} q_i(x_i). Throws
/// InsufficientNoise when some w(A_j) < 1 - p_j.
JointObservable build_joint(const std::vector<Observable>& observables, const RVector& weights);

enum class CompatibilityStatus { CompatibleCertified, IncompatibleCertified, Undecided };

std::string_view to_string(CompatibilityStatus s);

struct CompatibilityVerdict {
  CompatibilityStatus status = CompatibilityStatus::Undecided;
  std::optional<JointObservable> joint;
  /// Farkas ray proving the LP infeasible.
  std::optional<RVector> certificate;
  double inequality_value = 0.0;  // sum_j w_j
  double threshold = 0.0;         // m - 1
  std::vector<double> noise_contents;
  std::optional<RVector> weights;
};

inline constexpr Index kDefaultWitnessCap = 100'000;
inline constexpr Index kLpCellCap = 10'000;

/// Certifies compatibility when sum_j w(A_j) >= m - 1 and builds the witness;
/// Undecided otherwise. `weights` overrides the default mixing weights.
CompatibilityVerdict sufficient_compatible(const std::vector<Observable>& observables, std::optional<RVector> weights = std::nullopt,
                                           Index witness_cap = kDefaultWitnessCap);

/// Exact joint-observable existence test on a polytope theory, posed as LP
/// feasibility over the vertex values of every grid cell.
CompatibilityVerdict lp_compatible_polytope(const std::vector<Observable>& observables, double tol = 1e-9, Index cell_cap = kLpCellCap);

}  // namespace gptnoise
