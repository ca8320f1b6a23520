#include "gptnoise/processes.hpp"

namespace gptnoise {

ChoiState choi_from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw Error(ErrorCode::InvalidParameter, "a channel needs at least one Kraus operator");
  const Index da = kraus.front().cols();
  const Index db = kraus.front().rows();
  CVector psi = CVector::Zero(da * da);
  for (Index i = 0; i < da; ++i) psi(i * da + i) = 1.0;
  CMatrix omega = CMatrix::Zero(da * db, da * db);
  for (const auto& k : kraus) {
    if (k.rows() != db || k.cols() != da) throw Error(ErrorCode::InvalidParameter, "Kraus operators must share a shape");
    const CVector v = tensor(CMatrix::Identity(da, da), k) * psi;
    omega += outer(v);
  }
  return {da, db, HermitianMatrix(0.5 * (omega + omega.adjoint()))};
}

ChoiState identity_channel(Index dim) { return choi_from_kraus({CMatrix::Identity(dim, dim)}); }

ChoiState depolarizing_channel(Index dim, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParameter, "depolarizing probability must lie in [0,1]");
  // Kraus: sqrt(1-p) 1 and sqrt(p/d) |i><j|.
  std::vector<CMatrix> kraus{std::sqrt(1.0 - p) * CMatrix::Identity(dim, dim)};
  const double w = std::sqrt(p / static_cast<double>(dim));
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      CMatrix k = CMatrix::Zero(dim, dim);
      k(i, j) = w;
      kraus.push_back(k);
    }
  return choi_from_kraus(kraus);
}

ChoiState random_channel(Index dim_a, Index dim_b, Index env, std::uint64_t seed) {
  if (env < 1) throw Error(ErrorCode::InvalidParameter, "environment dimension must be positive");
  if (dim_b * env < dim_a) throw Error(ErrorCode::InvalidParameter, "dim_b * env must be at least dim_a for an isometry");
  std::mt19937_64 rng(seed);
  const CMatrix g = gaussian_complex(dim_b * env, dim_a, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix v = qr.householderQ() * CMatrix::Identity(dim_b * env, dim_a);  // isometry
  std::vector<CMatrix> kraus;
  for (Index k = 0; k < env; ++k) kraus.push_back(v.middleRows(k * dim_b, dim_b));
  return choi_from_kraus(kraus);
}

PPOVM::PPOVM(Observable observable, double tol) : observable_(std::move(observable)) {
  if (observable_.space().kind() != SpaceKind::Process) throw Error(ErrorCode::InvalidPPOVM, "a PPOVM needs a process state space");
  const auto report = validate_observable(observable_, tol);
  if (!report.ok()) throw Error(ErrorCode::InvalidPPOVM, report.summary());
  rho_ = process_normalization(observable_);
}

PPOVM make_ppovm(Index dim_a, Index dim_b, const std::vector<HermitianMatrix>& effects) {
  std::vector<int> outcomes;
  std::vector<Effect> e;
  for (std::size_t x = 0; x < effects.size(); ++x) {
    outcomes.push_back(static_cast<int>(x));
    e.push_back(ProcessEffect{effects[x]});
  }
  return PPOVM(Observable(StateSpace::process(dim_a, dim_b), std::move(outcomes), std::move(e)));
}

PPOVM product_trivial_ppovm(const Basis& basis, const RVector& probs, Index dim_b) {
  if (probs.size() != basis.dim()) throw Error(ErrorCode::InvalidParameter, "one probability per basis vector is required");
  std::vector<HermitianMatrix> effects;
  for (Index x = 0; x < basis.dim(); ++x)
    effects.emplace_back(tensor(CMatrix(probs(x) * outer(basis.vector(x))), CMatrix::Identity(dim_b, dim_b)));
  return make_ppovm(basis.dim(), dim_b, effects);
}

PPOVM random_ppovm(Index dim_a, Index dim_b, Index outcomes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Index d = dim_a * dim_b;
  const HermitianMatrix rho = random_density(dim_a, rng);
  std::vector<CMatrix> g;
  CMatrix s = CMatrix::Zero(d, d);
  for (Index x = 0; x < outcomes; ++x) {
    const CMatrix z = gaussian_complex(d, d, rng);
    g.push_back(z * z.adjoint());
    s += g.back();
  }
  const CMatrix root = inverse_sqrt(HermitianMatrix(0.5 * (s + s.adjoint()))).matrix();
  const CMatrix lift = tensor(sqrt_psd(rho).matrix(), CMatrix::Identity(dim_b, dim_b));
  std::vector<HermitianMatrix> effects;
  for (const auto& gx : g) {
    const CMatrix m = lift * root * gx * root * lift;
    effects.emplace_back(0.5 * (m + m.adjoint()));
  }
  return make_ppovm(dim_a, dim_b, effects);
}

RVector evaluate_ppovm(const PPOVM& a, const ChoiState& channel) {
  const auto& p = a.dims();
  if (channel.dim_a != p.dim_a || channel.dim_b != p.dim_b) throw Error(ErrorCode::SpaceMismatch, "channel dimensions differ from the PPOVM");
  return evaluate(a.observable(), channel);
}

NoiseDecomposition ppovm_noise_lower_bound(const PPOVM& a) {
  NoiseDecomposition d = noise_content(a.observable());
  const auto report = validate_observable(d.residual);
  if (!report.ok()) throw Error(ErrorCode::InvalidPPOVM, "residual is not a PPOVM: " + report.summary());
  return d;
}

Cor2Report cor2_report(const std::vector<PPOVM>& ppovms) {
  if (ppovms.size() < 2) throw Error(ErrorCode::InvalidParameter, "the condition needs at least two PPOVMs");
  Cor2Report r;
  std::vector<Observable> obs;
  for (const auto& a : ppovms) {
    if (!(a.observable().space() == ppovms.front().observable().space())) throw Error(ErrorCode::SpaceMismatch, "PPOVMs have different dimensions");
    const bool trivial = noise_content_exact_trivial_ppovm(a.observable()).has_value();
    r.exact_trivial.push_back(trivial);
    r.noise_bounds.push_back(trivial ? 1.0 : noise_content(a.observable()).t);
    r.sum += r.noise_bounds.back();
    obs.push_back(a.observable());
  }
  r.threshold = static_cast<double>(ppovms.size()) - 1.0;
  r.certified = r.sum + 1e-12 >= r.threshold;
  if (r.certified) {
    const auto verdict = sufficient_compatible(obs);
    r.joint = verdict.joint;
  }
  return r;
}

}  // namespace gptnoise
