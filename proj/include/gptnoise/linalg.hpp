#pragma once

// Dense complex kernels: Hermitian eigenvalues by cyclic Jacobi rotations,
// singular values by one-sided (Hestenes) Jacobi, Kronecker products and
// partial traces. Eigen supplies storage and expression arithmetic only.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "gptnoise/error.hpp"

namespace gptnoise {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr Index kDefaultDimensionCap = 4096;

struct JacobiOptions {
  double off_tolerance = 1e-14;
  int max_sweeps = 100;
};

template <typename Scalar>
struct JacobiEigenResult {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  Eigen::Matrix<RealScalar, Eigen::Dynamic, 1> values;          // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns match values
  int sweeps = 0;
  bool converged = false;
};

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a) {
  if (!a.allFinite()) throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
}

// Plane rotation U on (p,q) that annihilates the (p,q) entry of a Hermitian
// 2x2 block [[app, g], [conj(g), aqq]]. U = diag(1, conj(e)) * [[c, s], [-s, c]]
// with e = g/|g|.
template <typename Scalar>
struct PlaneRotation {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  RealScalar c;
  RealScalar s;
  Scalar phase;  // e

  static PlaneRotation make(RealScalar app, RealScalar aqq, const Scalar& g) {
    using std::abs;
    using std::sqrt;
    const RealScalar ag = abs(g);
    const RealScalar theta = (aqq - app) / (RealScalar(2) * ag);
    const RealScalar t = (theta >= 0 ? RealScalar(1) : RealScalar(-1)) / (abs(theta) + sqrt(theta * theta + RealScalar(1)));
    const RealScalar c = RealScalar(1) / sqrt(t * t + RealScalar(1));
    return {c, t * c, g / ag};
  }

  // columns p,q of m <- columns of m * U
  template <typename M>
  void apply_right(M& m, Index p, Index q) const {
    const Scalar ce = Eigen::numext::conj(phase);
    for (Index k = 0; k < m.rows(); ++k) {
      const Scalar mp = m(k, p);
      const Scalar mq = m(k, q);
      m(k, p) = c * mp - s * ce * mq;
      m(k, q) = s * mp + c * ce * mq;
    }
  }

  // rows p,q of m <- rows of U^* * m
  template <typename M>
  void apply_left_adjoint(M& m, Index p, Index q) const {
    for (Index k = 0; k < m.cols(); ++k) {
      const Scalar mp = m(p, k);
      const Scalar mq = m(q, k);
      m(p, k) = c * mp - s * phase * mq;
      m(q, k) = s * mp + c * phase * mq;
    }
  }
};

}  // namespace detail

/// Eigen-decomposition of a Hermitian (or real symmetric) matrix by cyclic
/// Jacobi sweeps. Only the upper triangle's Hermitian completion is assumed;
/// callers pass a matrix that is already Hermitian.
template <typename Derived>
JacobiEigenResult<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input, bool compute_vectors = true,
                                                         const JacobiOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (input.rows() != input.cols()) throw Error(ErrorCode::InvalidMatrix, "eigenvalues need a square matrix");
  detail::require_finite(input);

  const Index n = input.rows();
  Mat a = input;
  Mat v;
  if (compute_vectors) v = Mat::Identity(n, n);

  const RealScalar scale = std::max<RealScalar>(RealScalar(1), a.norm());
  JacobiEigenResult<Scalar> result;
  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    RealScalar off2 = 0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) off2 += Eigen::numext::abs2(a(i, j));
    if (std::sqrt(off2) < options.off_tolerance * scale) {
      result.converged = true;
      result.sweeps = sweep;
      break;
    }
    if (sweep == options.max_sweeps) {
      result.sweeps = sweep;
      break;
    }
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar g = a(p, q);
        if (g == Scalar(0)) continue;
        const auto rot = detail::PlaneRotation<Scalar>::make(Eigen::numext::real(a(p, p)), Eigen::numext::real(a(q, q)), g);
        rot.apply_right(a, p, q);
        rot.apply_left_adjoint(a, p, q);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(Eigen::numext::real(a(p, p)));
        a(q, q) = Scalar(Eigen::numext::real(a(q, q)));
        if (compute_vectors) rot.apply_right(v, p, q);
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Index i, Index j) { return Eigen::numext::real(a(i, i)) < Eigen::numext::real(a(j, j)); });

  result.values.resize(n);
  if (compute_vectors) result.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    result.values(k) = Eigen::numext::real(a(src, src));
    if (compute_vectors) result.vectors.col(k) = v.col(src);
  }
  return result;
}

/// Singular values (descending) by one-sided Jacobi orthogonalization of the columns.
template <typename Derived>
Eigen::Matrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real, Eigen::Dynamic, 1> jacobi_singular_values(
    const Eigen::MatrixBase<Derived>& input, const JacobiOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  detail::require_finite(input);
  // Work on the orientation with fewer columns.
  Mat a = input.cols() <= input.rows() ? Mat(input) : Mat(input.adjoint());
  const Index n = a.cols();
  const RealScalar eps = std::numeric_limits<RealScalar>::epsilon();

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const RealScalar alpha = a.col(p).squaredNorm();
        const RealScalar beta = a.col(q).squaredNorm();
        const Scalar gamma = a.col(p).dot(a.col(q));  // conjugates the first argument
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == Scalar(0)) continue;
        rotated = true;
        const auto rot = detail::PlaneRotation<Scalar>::make(alpha, beta, gamma);
        rot.apply_right(a, p, q);
      }
    }
    if (!rotated) break;
  }

  Eigen::Matrix<RealScalar, Eigen::Dynamic, 1> sv(n);
  for (Index j = 0; j < n; ++j) sv(j) = a.col(j).norm();
  std::sort(sv.data(), sv.data() + n, std::greater<RealScalar>());
  return sv;
}

/// Kronecker product; throws DimensionCap if either result dimension exceeds `cap`.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor(const Eigen::MatrixBase<DerivedA>& a,
                                                                                const Eigen::MatrixBase<DerivedB>& b,
                                                                                Index cap = kDefaultDimensionCap) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > cap || cols > cap) throw Error(ErrorCode::DimensionCap, "tensor product exceeds dimension cap");
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Complex matrix that is Hermitian by construction. Inputs whose
/// anti-Hermitian part exceeds `tol` (max-abs) are rejected; smaller
/// asymmetries are removed by (M + M^*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m, double tol = kHermitianTol);

  static HermitianMatrix identity(Index dim);
  static HermitianMatrix zero(Index dim);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Unchecked {};
  HermitianMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

RVector eigenvalues(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);
double max_eigenvalue(const HermitianMatrix& m);
bool is_psd(const HermitianMatrix& m, double tol);
Index rank(const CMatrix& m, double tol);

/// f applied to the spectrum: V f(D) V^*.
template <typename F>
HermitianMatrix spectral_apply(const HermitianMatrix& m, F&& f) {
  const auto eig = jacobi_eigen(m.matrix(), true);
  RVector fv(eig.values.size());
  for (Index i = 0; i < fv.size(); ++i) fv(i) = f(eig.values(i));
  CMatrix out = eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return HermitianMatrix(out, 1e-9);
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m);
HermitianMatrix inverse_sqrt(const HermitianMatrix& m, double floor = 1e-12);

/// Tr_B of an operator on C^dA (x) C^dB (index a*dB + b).
CMatrix partial_trace_b(const CMatrix& m, Index dim_a, Index dim_b);
/// Tr_A of an operator on C^dA (x) C^dB.
CMatrix partial_trace_a(const CMatrix& m, Index dim_a, Index dim_b);

CMatrix outer(const CVector& v);

}  // namespace gptnoise
