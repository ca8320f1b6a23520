#pragma once

// Noise content w(A; T): the largest weight t with A = t N + (1 - t) R for a
// trivial observable N. It equals the sum over outcomes of inf_s A_x(s).

#include <optional>

#include "gptnoise/core.hpp"

namespace gptnoise {

enum class InfimumMethod { VertexMin, MinEigenvalue, PPOVMLowerBound };

std::string_view to_string(InfimumMethod m);

struct EffectInfimum {
  int outcome = 0;
  double value = 0.0;
  InfimumMethod method = InfimumMethod::VertexMin;
};

struct NoiseDecomposition {
  double t = 0.0;
  TrivialObservable trivial;
  /// The trivial observable embedded in the space, as used in the mixture.
  Observable noise;
  Observable residual;
  InfimumMethod method = InfimumMethod::VertexMin;
  /// False when t is only a certified lower bound (process backend).
  bool exact = true;
};

EffectInfimum effect_infimum(const Observable& a, int outcome);
std::vector<EffectInfimum> effect_infima(const Observable& a);

/// Decomposition with t = sum_x inf_s A_x(s). Process observables use the
/// minimal eigenvalues of their operators, which only bound t from below.
NoiseDecomposition noise_content(const Observable& a);

/// 1 when every process effect factorizes as c_x rho_x (x) 1 (so the
/// observable is trivial); nullopt otherwise or for non-process spaces.
std::optional<double> noise_content_exact_trivial_ppovm(const Observable& a, double tol = 1e-9);

/// noise_content, except that exactly-trivial process observables are
/// recognized and returned with t = 1.
NoiseDecomposition best_noise_decomposition(const Observable& a);

/// Same decomposition with a smaller weight s <= d.t: the surplus noise is
/// folded back into the residual.
NoiseDecomposition rescale(const NoiseDecomposition& d, const Observable& a, double s);

/// max effect deviation between A and t N + (1 - t) R.
double reconstruction_error(const Observable& a, const NoiseDecomposition& d);

struct ConcavityReport {
  double lhs = 0.0;  // w(sA + (1-s)B)
  double rhs = 0.0;  // s w(A) + (1-s) w(B)
  bool pass = false;
};

ConcavityReport concavity_check(const Observable& a, const Observable& b, double s, double tol = 1e-9);

}  // namespace gptnoise
