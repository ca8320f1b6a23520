#include "gptnoise/linalg.hpp"

namespace gptnoise {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::AffineInconsistency: return "AffineInconsistency";
    case ErrorCode::OutcomeMismatch: return "OutcomeMismatch";
    case ErrorCode::InsufficientNoise: return "InsufficientNoise";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::InvalidPPOVM: return "InvalidPPOVM";
    case ErrorCode::GenerationFailure: return "GenerationFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

HermitianMatrix::HermitianMatrix(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidMatrix, "Hermitian matrix must be square");
  detail::require_finite(m);
  const double asym = m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) throw Error(ErrorCode::InvalidMatrix, "matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index dim) { return HermitianMatrix(CMatrix::Identity(dim, dim), Unchecked{}); }

HermitianMatrix HermitianMatrix::zero(Index dim) { return HermitianMatrix(CMatrix::Zero(dim, dim), Unchecked{}); }

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidMatrix, "dimension mismatch in sum");
  return HermitianMatrix(a.m_ + b.m_, HermitianMatrix::Unchecked{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidMatrix, "dimension mismatch in difference");
  return HermitianMatrix(a.m_ - b.m_, HermitianMatrix::Unchecked{});
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) { return HermitianMatrix(s * a.m_, HermitianMatrix::Unchecked{}); }

RVector eigenvalues(const HermitianMatrix& m) { return jacobi_eigen(m.matrix(), false).values; }

double min_eigenvalue(const HermitianMatrix& m) {
  if (m.dim() == 0) throw Error(ErrorCode::InvalidMatrix, "empty matrix has no eigenvalues");
  return eigenvalues(m)(0);
}

double max_eigenvalue(const HermitianMatrix& m) {
  if (m.dim() == 0) throw Error(ErrorCode::InvalidMatrix, "empty matrix has no eigenvalues");
  const RVector ev = eigenvalues(m);
  return ev(ev.size() - 1);
}

bool is_psd(const HermitianMatrix& m, double tol) { return m.dim() == 0 || min_eigenvalue(m) >= -tol; }

Index rank(const CMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  const RVector sv = jacobi_singular_values(m);
  if (sv(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m) {
  return spectral_apply(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

HermitianMatrix inverse_sqrt(const HermitianMatrix& m, double floor) {
  return spectral_apply(m, [floor](double x) {
    if (x <= floor) throw Error(ErrorCode::InvalidMatrix, "inverse square root of a singular matrix");
    return 1.0 / std::sqrt(x);
  });
}

CMatrix partial_trace_b(const CMatrix& m, Index dim_a, Index dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorCode::InvalidMatrix, "partial trace dimensions do not match the operator");
  CMatrix out = CMatrix::Zero(dim_a, dim_a);
  for (Index i = 0; i < dim_a; ++i)
    for (Index j = 0; j < dim_a; ++j) out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
  return out;
}

CMatrix partial_trace_a(const CMatrix& m, Index dim_a, Index dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorCode::InvalidMatrix, "partial trace dimensions do not match the operator");
  CMatrix out = CMatrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

CMatrix outer(const CVector& v) { return v * v.adjoint(); }

}  // namespace gptnoise
