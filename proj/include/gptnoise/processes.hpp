#pragma once

// Channels as states (Choi operators) and process POVMs, whose effects
// satisfy sum_x M_x = rho (x) 1 for a density operator rho on the input.

#include <cstdint>

#include "gptnoise/compat.hpp"
#include "gptnoise/quantum.hpp"

namespace gptnoise {

/// Omega = sum_k (1 (x) K_k) |psi+><psi+| (1 (x) K_k)^*, psi+ = sum_i e_i (x) e_i.
/// Kraus operators are dim_b x dim_a.
ChoiState choi_from_kraus(const std::vector<CMatrix>& kraus);

ChoiState identity_channel(Index dim);
/// rho -> (1 - p) rho + p tr(rho) 1/d
ChoiState depolarizing_channel(Index dim, double p);
/// Channel from a Haar-random Stinespring isometry with `env` Kraus operators.
ChoiState random_channel(Index dim_a, Index dim_b, Index env, std::uint64_t seed);

class PPOVM {
 public:
  /// Throws InvalidPPOVM unless the observable is a valid process POVM.
  explicit PPOVM(Observable observable, double tol = kNormalizationTol);

  const Observable& observable() const { return observable_; }
  const HermitianMatrix& rho() const { return rho_; }
  const ProcessSpace& dims() const { return observable_.space().as_process(); }

 private:
  Observable observable_;
  HermitianMatrix rho_;
};

PPOVM make_ppovm(Index dim_a, Index dim_b, const std::vector<HermitianMatrix>& effects);

/// A_x = p_x |psi_x><psi_x| (x) 1 for an orthonormal basis psi.
PPOVM product_trivial_ppovm(const Basis& basis, const RVector& probs, Index dim_b);

/// (rho^{1/2} (x) 1) S^{-1/2} G_x S^{-1/2} (rho^{1/2} (x) 1) with random G_x, rho.
PPOVM random_ppovm(Index dim_a, Index dim_b, Index outcomes, std::uint64_t seed);

/// tr[Omega M_x] for each outcome.
RVector evaluate_ppovm(const PPOVM& a, const ChoiState& channel);

/// A = m T + (1 - m) A' with T_x = (m_x/m) rho (x) 1, m_x the minimal
/// eigenvalue of A_x; the residual is revalidated as a PPOVM.
NoiseDecomposition ppovm_noise_lower_bound(const PPOVM& a);

struct Cor2Report {
  std::vector<double> noise_bounds;  // exact 1 for detected trivial PPOVMs
  std::vector<bool> exact_trivial;
  double sum = 0.0;
  double threshold = 0.0;
  bool certified = false;
  std::optional<JointObservable> joint;
};

/// Sum of minimal-eigenvalue bounds against m - 1; certified collections
/// come with a joint PPOVM.
Cor2Report cor2_report(const std::vector<PPOVM>& ppovms);

}  // namespace gptnoise
