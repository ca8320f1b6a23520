#pragma once

#include <doctest.h>

#include <random>

#include "gptnoise/linalg.hpp"

namespace gptnoise::test {

inline CMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

inline CVector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// eigenvalues from Eigen's own solver, used as an independent reference
inline RVector reference_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Sampled minimum of <v|M|v>/<v|v>. The first half of the budget draws
// Gaussian (Haar-direction) vectors; the second half perturbs the best vector
// found so far with a shrinking step, which concentrates samples near the
// minimizer. Every sample is still a genuine state, so the result can only
// overestimate the true minimum.
inline double sampled_min_rayleigh(const CMatrix& m, int samples, std::mt19937_64& rng) {
  const Index n = m.rows();
  auto quotient = [&](const CVector& v) { return (v.adjoint() * m * v)(0, 0).real() / v.squaredNorm(); };
  CVector best = random_vector(n, rng);
  double lo = quotient(best);
  const int global = samples / 2;
  for (int k = 1; k < global; ++k) {
    const CVector v = random_vector(n, rng);
    const double q = quotient(v);
    if (q < lo) lo = q, best = v / v.norm();
  }
  double step = 0.5;
  int since = 0;
  for (int k = global; k < samples; ++k) {
    const CVector v = best + step * random_vector(n, rng) / std::sqrt(double(n));
    const double q = quotient(v);
    if (q < lo) {
      lo = q;
      best = v / v.norm();
      since = 0;
    } else if (++since > 20) {
      step = std::max(step * 0.5, 1e-8);
      since = 0;
    }
  }
  return lo;
}

}  // namespace gptnoise::test
