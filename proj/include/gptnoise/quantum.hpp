#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>

#include "gptnoise/compat.hpp"

namespace gptnoise {

/// Orthonormal basis stored as the columns of a unitary matrix.
class Basis {
 public:
  explicit Basis(CMatrix vectors, double tol = 1e-10);

  static Basis computational(Index dim);
  /// psi_j = d^{-1/2} sum_k omega^{jk} e_k with omega = exp(2 pi i / d).
  static Basis fourier(Index dim);
  static Basis haar_random(Index dim, std::uint64_t seed);

  Index dim() const { return vectors_.rows(); }
  const CMatrix& vectors() const { return vectors_; }
  CVector vector(Index i) const { return vectors_.col(i); }

 private:
  CMatrix vectors_;
};

CMatrix gaussian_complex(Index rows, Index cols, std::mt19937_64& rng);
/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
CMatrix haar_unitary(Index dim, std::mt19937_64& rng);
/// Full-rank density operator from a normalized Wishart matrix.
HermitianMatrix random_density(Index dim, std::mt19937_64& rng);
/// Haar-random unit vector.
CVector random_pure_state(Index dim, std::mt19937_64& rng);

/// A_i = |b_i><b_i|, outcomes 0..d-1.
Observable sharp_povm(const Basis& basis);

/// Effects (d/N) |v_x><v_x| for unit vectors v_x (columns); the frame must
/// resolve the identity.
Observable regular_rank1_povm(const CMatrix& unit_vectors, double tol = kNormalizationTol);

/// Regular rank-1 POVM from the harmonic frame v_x = d^{-1/2} (omega_N^{xk})_k, N >= d.
Observable harmonic_frame_povm(Index dim, Index outcomes);

/// U A_x U^* for every effect.
Observable rotate(const Observable& a, const CMatrix& unitary);

/// Deterministic random POVM: S^{-1/2} G_x S^{-1/2} with G_x Wishart, S = sum G_x.
Observable random_povm(Index dim, Index outcomes, std::uint64_t seed);

struct EigenConditionReport {
  std::vector<double> noise_contents;  // sum of minimal eigenvalues per POVM
  double sum = 0.0;
  double threshold = 0.0;  // m - 1
  bool certified = false;  // sum >= m - 1: the collection is compatible
};

EigenConditionReport eigen_condition_report(const std::vector<Observable>& povms);

/// Smallest N for which reversed regular rank-1 POVMs (m of them, dimension d)
/// pass the eigenvalue condition: (d - 1) m + 1.
Index reversed_threshold(Index dim, Index count);

/// Sharp POVMs of the computational and Fourier bases.
std::pair<Observable, Observable> fourier_mub_pair(Index dim);

/// Density operator sigma with tr[A_i sigma] = tr[B_j sigma] = (1 - delta_0)/(d - 1)
/// for the Fourier MUB pair; d >= 3.
HermitianMatrix mub_reverse_steering_state(Index dim);

struct TripleWitness {
  CompatibilityStatus status = CompatibilityStatus::Undecided;
  /// rank of [b1_i, b2_j, b3_k], index 9 i + 3 j + k.
  std::array<Index, 27> ranks{};
};

/// Incompatibility witness for the reversed sharp POVMs of three qutrit
/// bases: certified when every triple (b1_i, b2_j, b3_k) spans C^3.
TripleWitness reverse_triple_witness(const Basis& b1, const Basis& b2, const Basis& b3, double rank_tol = 1e-8);

/// Seed of the shipped Haar-random qutrit basis triple (bases use seed, seed+1, seed+2).
inline constexpr std::uint64_t kTripleWitnessSeed = 0xC0FFEE;

}  // namespace gptnoise
