#include "gptnoise/quantum.hpp"

#include <numbers>

namespace gptnoise {

Basis::Basis(CMatrix vectors, double tol) : vectors_(std::move(vectors)) {
  if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 1) throw Error(ErrorCode::InvalidParameter, "a basis needs d vectors in dimension d");
  const double dev = (vectors_.adjoint() * vectors_ - CMatrix::Identity(vectors_.cols(), vectors_.cols())).cwiseAbs().maxCoeff();
  if (dev > tol) throw Error(ErrorCode::InvalidParameter, "basis vectors are not orthonormal (deviation " + std::to_string(dev) + ")");
}

Basis Basis::computational(Index dim) { return Basis(CMatrix::Identity(dim, dim)); }

Basis Basis::fourier(Index dim) {
  CMatrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index k = 0; k < dim; ++k)
    for (Index j = 0; j < dim; ++j)
      f(k, j) = norm * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / static_cast<double>(dim));
  return Basis(f);
}

Basis Basis::haar_random(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return Basis(haar_unitary(dim, rng));
}

CMatrix gaussian_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CMatrix haar_unitary(Index dim, std::mt19937_64& rng) {
  const CMatrix z = gaussian_complex(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

HermitianMatrix random_density(Index dim, std::mt19937_64& rng) {
  const CMatrix g = gaussian_complex(dim, dim, rng);
  CMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return HermitianMatrix(0.5 * (w + w.adjoint()));
}

CVector random_pure_state(Index dim, std::mt19937_64& rng) {
  CVector v = gaussian_complex(dim, 1, rng).col(0);
  return v / v.norm();
}

Observable sharp_povm(const Basis& basis) {
  std::vector<int> outcomes;
  std::vector<Effect> effects;
  for (Index i = 0; i < basis.dim(); ++i) {
    outcomes.push_back(static_cast<int>(i));
    effects.push_back(QuantumEffect{HermitianMatrix(outer(basis.vector(i)))});
  }
  return Observable(StateSpace::quantum(basis.dim()), std::move(outcomes), std::move(effects));
}

Observable regular_rank1_povm(const CMatrix& unit_vectors, double tol) {
  const Index d = unit_vectors.rows();
  const Index n = unit_vectors.cols();
  if (n < d) throw Error(ErrorCode::InvalidParameter, "a regular rank-1 POVM needs at least d outcomes");
  const double scale = static_cast<double>(d) / static_cast<double>(n);
  std::vector<int> outcomes;
  std::vector<Effect> effects;
  CMatrix total = CMatrix::Zero(d, d);
  for (Index x = 0; x < n; ++x) {
    const double len = unit_vectors.col(x).norm();
    if (std::abs(len - 1.0) > tol) throw Error(ErrorCode::InvalidParameter, "frame vectors must be unit vectors");
    const CMatrix e = scale * outer(unit_vectors.col(x));
    total += e;
    outcomes.push_back(static_cast<int>(x));
    effects.push_back(QuantumEffect{HermitianMatrix(e)});
  }
  if ((total - CMatrix::Identity(d, d)).norm() > tol) throw Error(ErrorCode::InvalidParameter, "frame does not resolve the identity");
  return Observable(StateSpace::quantum(d), std::move(outcomes), std::move(effects));
}

Observable harmonic_frame_povm(Index dim, Index outcomes) {
  if (dim < 1 || outcomes < dim) throw Error(ErrorCode::InvalidParameter, "harmonic frame needs N >= d >= 1");
  CMatrix v(dim, outcomes);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index x = 0; x < outcomes; ++x)
    for (Index k = 0; k < dim; ++k)
      v(k, x) = norm * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((x * k) % outcomes) / static_cast<double>(outcomes));
  return regular_rank1_povm(v);
}

Observable rotate(const Observable& a, const CMatrix& unitary) {
  std::vector<Effect> effects;
  for (const auto& e : a.effects()) effects.push_back(QuantumEffect{HermitianMatrix(unitary * e.op().matrix() * unitary.adjoint(), 1e-9)});
  return Observable(a.space(), a.outcomes(), std::move(effects));
}

Observable random_povm(Index dim, Index outcomes, std::uint64_t seed) {
  if (outcomes < 1 || dim < 1) throw Error(ErrorCode::InvalidParameter, "random POVM needs positive dimension and outcome count");
  std::vector<int> labels(static_cast<std::size_t>(outcomes));
  for (Index x = 0; x < outcomes; ++x) labels[static_cast<std::size_t>(x)] = static_cast<int>(x);
  const auto space = StateSpace::quantum(dim);
  if (outcomes == 1) return Observable(space, labels, {Effect::unit(space)});

  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + attempt);
    std::vector<CMatrix> g;
    CMatrix s = CMatrix::Zero(dim, dim);
    for (Index x = 0; x < outcomes; ++x) {
      const CMatrix z = gaussian_complex(dim, dim, rng);
      g.push_back(z * z.adjoint());
      s += g.back();
    }
    const HermitianMatrix sh(0.5 * (s + s.adjoint()));
    if (min_eigenvalue(sh) <= 1e-10) continue;
    const CMatrix root = inverse_sqrt(sh).matrix();
    std::vector<Effect> effects;
    for (const auto& gx : g) {
      const CMatrix e = root * gx * root;
      effects.push_back(QuantumEffect{HermitianMatrix(0.5 * (e + e.adjoint()))});
    }
    return Observable(space, labels, std::move(effects));
  }
  throw Error(ErrorCode::GenerationFailure, "could not generate a random POVM after 8 attempts");
}

EigenConditionReport eigen_condition_report(const std::vector<Observable>& povms) {
  if (povms.empty()) throw Error(ErrorCode::InvalidParameter, "no POVMs given");
  EigenConditionReport r;
  for (const auto& a : povms) {
    if (a.space().kind() != SpaceKind::Quantum) throw Error(ErrorCode::SpaceMismatch, "eigenvalue condition needs quantum observables");
    if (!(a.space() == povms.front().space())) throw Error(ErrorCode::SpaceMismatch, "POVMs act on different dimensions");
    r.noise_contents.push_back(noise_content(a).t);
    r.sum += r.noise_contents.back();
  }
  r.threshold = static_cast<double>(povms.size()) - 1.0;
  r.certified = r.sum + 1e-12 >= r.threshold;
  return r;
}

Index reversed_threshold(Index dim, Index count) {
  if (dim < 2 || count < 2) throw Error(ErrorCode::InvalidParameter, "need d >= 2 and m >= 2");
  return (dim - 1) * count + 1;
}

std::pair<Observable, Observable> fourier_mub_pair(Index dim) {
  if (dim < 2) throw Error(ErrorCode::InvalidParameter, "MUB pair needs d >= 2");
  return {sharp_povm(Basis::computational(dim)), sharp_povm(Basis::fourier(dim))};
}

HermitianMatrix mub_reverse_steering_state(Index dim) {
  if (dim < 3) throw Error(ErrorCode::InvalidParameter, "the steering state needs d >= 3");
  const double d = static_cast<double>(dim);
  const double diag = 1.0 / (d - 1.0);
  const double off = 1.0 / ((d - 1.0) * (d - 2.0));
  CMatrix sigma = CMatrix::Zero(dim, dim);
  for (Index i = 1; i < dim; ++i) {
    sigma(i, i) = diag;
    for (Index j = i + 1; j < dim; ++j) {
      sigma(i, j) = -off;
      sigma(j, i) = -off;
    }
  }
  return HermitianMatrix(sigma);
}

TripleWitness reverse_triple_witness(const Basis& b1, const Basis& b2, const Basis& b3, double rank_tol) {
  if (b1.dim() != 3 || b2.dim() != 3 || b3.dim() != 3) throw Error(ErrorCode::InvalidParameter, "the triple witness is defined for qutrit bases");
  TripleWitness w;
  bool all_full = true;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 3; ++k) {
        CMatrix stack(3, 3);
        stack.col(0) = b1.vector(i);
        stack.col(1) = b2.vector(j);
        stack.col(2) = b3.vector(k);
        const Index r = rank(stack, rank_tol);
        w.ranks[static_cast<std::size_t>(9 * i + 3 * j + k)] = r;
        all_full = all_full && r == 3;
      }
  w.status = all_full ? CompatibilityStatus::IncompatibleCertified : CompatibilityStatus::Undecided;
  return w;
}

}  // namespace gptnoise
