#include "gptnoise/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gptnoise/lp.hpp"

namespace gptnoise {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Polytope: return "polytope";
    case SpaceKind::Quantum: return "quantum";
    case SpaceKind::Process: return "process";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// StateSpace

StateSpace StateSpace::polytope(const RMatrix& vertices) {
  if (vertices.cols() < 1) throw Error(ErrorCode::InvalidParameter, "polytope needs at least one vertex");
  if (!vertices.allFinite()) throw Error(ErrorCode::InvalidParameter, "polytope vertices must be finite");
  PolytopeSpace p;
  p.vertices = vertices;
  const Index n = vertices.cols();
  const RMatrix diffs = vertices.rightCols(n - 1).colwise() - vertices.col(0);
  p.hull_dim = diffs.size() == 0 ? 0 : rank(diffs.cast<Complex>(), 1e-10);

  // Affine relations: kernel of [V; 1^T].
  RMatrix lifted(vertices.rows() + 1, n);
  lifted.topRows(vertices.rows()) = vertices;
  lifted.bottomRows(1).setOnes();
  Eigen::FullPivLU<RMatrix> lu(lifted);
  lu.setThreshold(1e-10);
  p.affine_relations = lu.dimensionOfKernel() > 0 ? RMatrix(lu.kernel()) : RMatrix(n, 0);
  if (p.affine_relations.cols() > 0) {
    Eigen::HouseholderQR<RMatrix> qr(p.affine_relations);
    p.affine_relations = qr.householderQ() * RMatrix::Identity(n, p.affine_relations.cols());
  }

  StateSpace s;
  s.data_ = std::move(p);
  return s;
}

StateSpace StateSpace::quantum(Index dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidParameter, "quantum dimension must be positive");
  StateSpace s;
  s.data_ = QuantumSpace{dim};
  return s;
}

StateSpace StateSpace::process(Index dim_a, Index dim_b) {
  if (dim_a < 1 || dim_b < 1) throw Error(ErrorCode::InvalidParameter, "process dimensions must be positive");
  StateSpace s;
  s.data_ = ProcessSpace{dim_a, dim_b};
  return s;
}

SpaceKind StateSpace::kind() const { return static_cast<SpaceKind>(data_.index()); }

const PolytopeSpace& StateSpace::as_polytope() const {
  if (const auto* p = std::get_if<PolytopeSpace>(&data_)) return *p;
  throw Error(ErrorCode::SpaceMismatch, "expected a polytope state space");
}

const QuantumSpace& StateSpace::as_quantum() const {
  if (const auto* p = std::get_if<QuantumSpace>(&data_)) return *p;
  throw Error(ErrorCode::SpaceMismatch, "expected a quantum state space");
}

const ProcessSpace& StateSpace::as_process() const {
  if (const auto* p = std::get_if<ProcessSpace>(&data_)) return *p;
  throw Error(ErrorCode::SpaceMismatch, "expected a process state space");
}

Index StateSpace::operator_dim() const {
  switch (kind()) {
    case SpaceKind::Polytope: return 0;
    case SpaceKind::Quantum: return as_quantum().dim;
    case SpaceKind::Process: return as_process().dim_a * as_process().dim_b;
  }
  return 0;
}

bool operator==(const StateSpace& a, const StateSpace& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SpaceKind::Polytope: {
      const auto& va = a.as_polytope().vertices;
      const auto& vb = b.as_polytope().vertices;
      return va.rows() == vb.rows() && va.cols() == vb.cols() && va == vb;
    }
    case SpaceKind::Quantum: return a.as_quantum().dim == b.as_quantum().dim;
    case SpaceKind::Process:
      return a.as_process().dim_a == b.as_process().dim_a && a.as_process().dim_b == b.as_process().dim_b;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Effect

Effect Effect::zero(const StateSpace& space) {
  switch (space.kind()) {
    case SpaceKind::Polytope: return PolytopeEffect{RVector::Zero(space.as_polytope().ambient_dim()), 0.0};
    case SpaceKind::Quantum: return QuantumEffect{HermitianMatrix::zero(space.operator_dim())};
    case SpaceKind::Process: return ProcessEffect{HermitianMatrix::zero(space.operator_dim())};
  }
  return {};
}

Effect Effect::unit(const StateSpace& space) {
  switch (space.kind()) {
    case SpaceKind::Polytope: return PolytopeEffect{RVector::Zero(space.as_polytope().ambient_dim()), 1.0};
    case SpaceKind::Quantum: return QuantumEffect{HermitianMatrix::identity(space.operator_dim())};
    case SpaceKind::Process: {
      const auto& p = space.as_process();
      return process_unit(HermitianMatrix(CMatrix::Identity(p.dim_a, p.dim_a) / static_cast<double>(p.dim_a)), p.dim_b);
    }
  }
  return {};
}

Effect Effect::process_unit(const HermitianMatrix& rho, Index dim_b) {
  return ProcessEffect{HermitianMatrix(tensor(rho.matrix(), CMatrix::Identity(dim_b, dim_b)))};
}

SpaceKind Effect::kind() const { return static_cast<SpaceKind>(data_.index()); }

bool Effect::matches(const StateSpace& space) const {
  if (kind() != space.kind()) return false;
  if (kind() == SpaceKind::Polytope) return as_polytope().linear.size() == space.as_polytope().ambient_dim();
  return op().dim() == space.operator_dim();
}

const PolytopeEffect& Effect::as_polytope() const {
  if (const auto* p = std::get_if<PolytopeEffect>(&data_)) return *p;
  throw Error(ErrorCode::SpaceMismatch, "expected a polytope effect");
}

const HermitianMatrix& Effect::op() const {
  if (const auto* q = std::get_if<QuantumEffect>(&data_)) return q->op;
  if (const auto* p = std::get_if<ProcessEffect>(&data_)) return p->op;
  throw Error(ErrorCode::SpaceMismatch, "polytope effects have no operator");
}

namespace {

// a + sign * b
Effect combine(const Effect& a, const Effect& b, double sign) {
  if (a.kind() != b.kind()) throw Error(ErrorCode::SpaceMismatch, "cannot combine effects of different theories");
  switch (a.kind()) {
    case SpaceKind::Polytope: {
      const auto& pa = a.as_polytope();
      const auto& pb = b.as_polytope();
      if (pa.linear.size() != pb.linear.size()) throw Error(ErrorCode::SpaceMismatch, "ambient dimensions differ");
      return PolytopeEffect{pa.linear + sign * pb.linear, pa.offset + sign * pb.offset};
    }
    case SpaceKind::Quantum: return QuantumEffect{sign > 0 ? a.op() + b.op() : a.op() - b.op()};
    case SpaceKind::Process: return ProcessEffect{sign > 0 ? a.op() + b.op() : a.op() - b.op()};
  }
  return {};
}

}  // namespace

Effect operator+(const Effect& a, const Effect& b) { return combine(a, b, 1.0); }

Effect operator-(const Effect& a, const Effect& b) { return combine(a, b, -1.0); }

Effect operator*(double s, const Effect& a) {
  switch (a.kind()) {
    case SpaceKind::Polytope: return PolytopeEffect{s * a.as_polytope().linear, s * a.as_polytope().offset};
    case SpaceKind::Quantum: return QuantumEffect{s * a.op()};
    case SpaceKind::Process: return ProcessEffect{s * a.op()};
  }
  return {};
}

// ---------------------------------------------------------------------------
// States

void validate_state(const StateSpace& space, const State& s, double tol) {
  if (static_cast<std::size_t>(space.kind()) != s.index())
    throw Error(ErrorCode::SpaceMismatch, "state does not belong to a " + std::string(to_string(space.kind())) + " space");
  switch (space.kind()) {
    case SpaceKind::Polytope: {
      const auto& w = std::get<ConvexWeights>(s).weights;
      if (w.size() != space.as_polytope().vertex_count()) throw Error(ErrorCode::InvalidState, "weight count differs from vertex count");
      if (!w.allFinite() || w.minCoeff() < -tol || std::abs(w.sum() - 1.0) > tol)
        throw Error(ErrorCode::InvalidState, "weights are not a probability vector");
      return;
    }
    case SpaceKind::Quantum: {
      const auto& rho = std::get<DensityOperator>(s).rho;
      if (rho.dim() != space.operator_dim()) throw Error(ErrorCode::SpaceMismatch, "density operator has the wrong dimension");
      if (!is_psd(rho, tol) || std::abs(rho.trace() - 1.0) > tol) throw Error(ErrorCode::InvalidState, "not a density operator");
      return;
    }
    case SpaceKind::Process: {
      const auto& c = std::get<ChoiState>(s);
      const auto& p = space.as_process();
      if (c.dim_a != p.dim_a || c.dim_b != p.dim_b || c.omega.dim() != p.dim_a * p.dim_b)
        throw Error(ErrorCode::SpaceMismatch, "Choi operator has the wrong dimensions");
      if (!is_psd(c.omega, tol)) throw Error(ErrorCode::InvalidState, "Choi operator is not positive");
      const CMatrix tr_b = partial_trace_b(c.omega.matrix(), p.dim_a, p.dim_b);
      if ((tr_b - CMatrix::Identity(p.dim_a, p.dim_a)).cwiseAbs().maxCoeff() > tol)
        throw Error(ErrorCode::InvalidState, "Choi operator is not trace preserving");
      return;
    }
  }
}

ConvexWeights weights_from_point(const StateSpace& space, const RVector& point, double tol) {
  const auto& p = space.as_polytope();
  if (point.size() != p.ambient_dim()) throw Error(ErrorCode::InvalidState, "point has the wrong ambient dimension");
  RMatrix a(p.ambient_dim() + 1, p.vertex_count());
  a.topRows(p.ambient_dim()) = p.vertices;
  a.bottomRows(1).setOnes();
  RVector b(p.ambient_dim() + 1);
  b.head(p.ambient_dim()) = point;
  b(p.ambient_dim()) = 1.0;
  const auto res = lp::phase_one(a, b, tol);
  if (!res.feasible || (a * res.x - b).cwiseAbs().maxCoeff() > tol)
    throw Error(ErrorCode::InvalidState, "point lies outside the polytope");
  RVector w = res.x;
  w /= w.sum();
  return {w};
}

double evaluate_raw(const Effect& e, const StateSpace& space, const State& s) {
  if (!e.matches(space)) throw Error(ErrorCode::SpaceMismatch, "effect does not belong to the state space");
  switch (space.kind()) {
    case SpaceKind::Polytope: {
      const auto& w = std::get<ConvexWeights>(s).weights;
      return vertex_values(e, space).dot(w);
    }
    case SpaceKind::Quantum: return (std::get<DensityOperator>(s).rho.matrix() * e.op().matrix()).trace().real();
    case SpaceKind::Process: return (std::get<ChoiState>(s).omega.matrix() * e.op().matrix()).trace().real();
  }
  return 0.0;
}

double evaluate(const Effect& e, const StateSpace& space, const State& s) {
  validate_state(space, s);
  const double v = evaluate_raw(e, space, s);
  if (v < -kNormalizationTol || v > 1.0 + kNormalizationTol)
    throw Error(ErrorCode::InvalidState, "effect value " + std::to_string(v) + " lies outside [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

RVector vertex_values(const Effect& e, const StateSpace& space) {
  const auto& p = space.as_polytope();
  const auto& pe = e.as_polytope();
  if (pe.linear.size() != p.ambient_dim()) throw Error(ErrorCode::SpaceMismatch, "effect has the wrong ambient dimension");
  return (p.vertices.transpose() * pe.linear).array() + pe.offset;
}

Effect polytope_effect_from_vertex_values(const StateSpace& space, const RVector& values, double tol) {
  const auto& p = space.as_polytope();
  if (values.size() != p.vertex_count()) throw Error(ErrorCode::InvalidParameter, "one value per vertex is required");
  if (!values.allFinite()) throw Error(ErrorCode::InvalidParameter, "vertex values must be finite");
  RMatrix a(p.vertex_count(), p.ambient_dim() + 1);
  a.leftCols(p.ambient_dim()) = p.vertices.transpose();
  a.rightCols(1).setOnes();
  const RVector coef = a.completeOrthogonalDecomposition().solve(values);
  const double residual = (a * coef - values).cwiseAbs().maxCoeff();
  if (residual > tol)
    throw Error(ErrorCode::AffineInconsistency, "vertex values violate an affine relation (residual " + std::to_string(residual) + ")");
  return PolytopeEffect{coef.head(p.ambient_dim()), coef(p.ambient_dim())};
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(StateSpace space, std::vector<int> outcomes, std::vector<Effect> effects) : space_(std::move(space)) {
  if (outcomes.size() != effects.size()) throw Error(ErrorCode::InvalidParameter, "one effect per outcome is required");
  if (outcomes.empty()) throw Error(ErrorCode::InvalidParameter, "an observable needs at least one outcome");
  std::vector<std::size_t> order(outcomes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return outcomes[i] < outcomes[j]; });
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int x = outcomes[order[k]];
    if (x < 0) throw Error(ErrorCode::InvalidParameter, "outcomes must be non-negative");
    if (!outcomes_.empty() && outcomes_.back() == x) throw Error(ErrorCode::InvalidParameter, "duplicate outcome " + std::to_string(x));
    if (!effects[order[k]].matches(space_)) throw Error(ErrorCode::SpaceMismatch, "effect for outcome " + std::to_string(x) + " does not match the space");
    outcomes_.push_back(x);
    effects_.push_back(std::move(effects[order[k]]));
  }
}

std::optional<Index> Observable::index_of(int outcome) const {
  const auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), outcome);
  if (it == outcomes_.end() || *it != outcome) return std::nullopt;
  return static_cast<Index>(it - outcomes_.begin());
}

const Effect& Observable::effect(int outcome) const {
  const auto i = index_of(outcome);
  if (!i) throw Error(ErrorCode::OutcomeMismatch, "unknown outcome " + std::to_string(outcome));
  return effects_[static_cast<std::size_t>(*i)];
}

RVector evaluate(const Observable& a, const State& s) {
  validate_state(a.space(), s);
  RVector out(a.size());
  for (Index i = 0; i < a.size(); ++i) out(i) = std::clamp(evaluate_raw(a.effects()[static_cast<std::size_t>(i)], a.space(), s), 0.0, 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// Trivial observables, mixing

TrivialObservable::TrivialObservable(std::vector<int> outcomes, RVector probs) : outcomes_(std::move(outcomes)), probs_(std::move(probs)) {
  if (static_cast<Index>(outcomes_.size()) != probs_.size()) throw Error(ErrorCode::InvalidParameter, "one probability per outcome is required");
  if (outcomes_.empty()) throw Error(ErrorCode::InvalidParameter, "a trivial observable needs at least one outcome");
  if (!probs_.allFinite() || probs_.minCoeff() < -1e-12 || std::abs(probs_.sum() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidParameter, "trivial observable probabilities must form a distribution");
  probs_ = probs_.cwiseMax(0.0);
}

TrivialObservable TrivialObservable::uniform(std::vector<int> outcomes) {
  const auto n = static_cast<Index>(outcomes.size());
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "a trivial observable needs at least one outcome");
  return TrivialObservable(std::move(outcomes), RVector::Constant(n, 1.0 / static_cast<double>(n)));
}

double TrivialObservable::prob(int outcome) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i)
    if (outcomes_[i] == outcome) return probs_(static_cast<Index>(i));
  throw Error(ErrorCode::OutcomeMismatch, "unknown outcome " + std::to_string(outcome));
}

Observable embed_trivial(const TrivialObservable& t, const StateSpace& space) {
  if (space.kind() == SpaceKind::Process) {
    const Index da = space.as_process().dim_a;
    return embed_trivial(t, space, HermitianMatrix(CMatrix::Identity(da, da) / static_cast<double>(da)));
  }
  const Effect u = Effect::unit(space);
  std::vector<Effect> effects;
  for (Index i = 0; i < t.probs().size(); ++i) effects.push_back(t.probs()(i) * u);
  return Observable(space, t.outcomes(), std::move(effects));
}

Observable embed_trivial(const TrivialObservable& t, const StateSpace& space, const HermitianMatrix& xi) {
  if (space.kind() != SpaceKind::Process) return embed_trivial(t, space);
  const auto& p = space.as_process();
  if (xi.dim() != p.dim_a) throw Error(ErrorCode::SpaceMismatch, "xi must act on the input space");
  const Effect u = Effect::process_unit(xi, p.dim_b);
  std::vector<Effect> effects;
  for (Index i = 0; i < t.probs().size(); ++i) effects.push_back(t.probs()(i) * u);
  return Observable(space, t.outcomes(), std::move(effects));
}

Observable mix(const Observable& a, const Observable& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidParameter, "mixing parameter must lie in [0,1]");
  if (!(a.space() == b.space())) throw Error(ErrorCode::SpaceMismatch, "cannot mix observables on different spaces");
  std::set<int> all(a.outcomes().begin(), a.outcomes().end());
  all.insert(b.outcomes().begin(), b.outcomes().end());
  const Effect zero = Effect::zero(a.space());
  std::vector<int> outcomes(all.begin(), all.end());
  std::vector<Effect> effects;
  for (int z : outcomes) {
    const auto ia = a.index_of(z);
    const auto ib = b.index_of(z);
    const Effect& ea = ia ? a.effects()[static_cast<std::size_t>(*ia)] : zero;
    const Effect& eb = ib ? b.effects()[static_cast<std::size_t>(*ib)] : zero;
    effects.push_back(t * ea + (1.0 - t) * eb);
  }
  return Observable(a.space(), std::move(outcomes), std::move(effects));
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::summary() const {
  if (issues.empty()) return "valid";
  std::ostringstream os;
  for (const auto& i : issues) {
    os << i.what;
    if (i.outcome) os << " (outcome " << *i.outcome << ")";
    os << ": " << i.magnitude << "\n";
  }
  return os.str();
}

HermitianMatrix process_normalization(const Observable& a) {
  const auto& p = a.space().as_process();
  CMatrix sum = CMatrix::Zero(p.dim_a * p.dim_b, p.dim_a * p.dim_b);
  for (const auto& e : a.effects()) sum += e.op().matrix();
  return HermitianMatrix(partial_trace_b(sum, p.dim_a, p.dim_b) / static_cast<double>(p.dim_b), 1e-9);
}

ValidationReport validate_observable(const Observable& a, double tol) {
  ValidationReport report;
  const auto& space = a.space();
  auto add = [&](std::string what, std::optional<int> x, double mag) { report.issues.push_back({std::move(what), x, mag}); };

  switch (space.kind()) {
    case SpaceKind::Polytope: {
      const Index n = space.as_polytope().vertex_count();
      RVector total = RVector::Zero(n);
      for (Index i = 0; i < a.size(); ++i) {
        const RVector v = vertex_values(a.effects()[static_cast<std::size_t>(i)], space);
        total += v;
        const int x = a.outcomes()[static_cast<std::size_t>(i)];
        if (v.minCoeff() < -tol) add("effect negative at a vertex", x, -v.minCoeff());
        if (v.maxCoeff() > 1.0 + tol) add("effect exceeds 1 at a vertex", x, v.maxCoeff() - 1.0);
      }
      const double dev = (total.array() - 1.0).abs().maxCoeff();
      if (dev > tol) add("normalization violated", std::nullopt, dev);
      break;
    }
    case SpaceKind::Quantum: {
      const Index d = space.operator_dim();
      CMatrix total = CMatrix::Zero(d, d);
      for (Index i = 0; i < a.size(); ++i) {
        const auto& op = a.effects()[static_cast<std::size_t>(i)].op();
        total += op.matrix();
        const RVector ev = eigenvalues(op);
        const int x = a.outcomes()[static_cast<std::size_t>(i)];
        if (ev(0) < -tol) add("effect not positive", x, -ev(0));
        if (ev(ev.size() - 1) > 1.0 + tol) add("effect exceeds identity", x, ev(ev.size() - 1) - 1.0);
      }
      const double dev = (total - CMatrix::Identity(d, d)).norm();
      if (dev > tol) add("normalization violated", std::nullopt, dev);
      break;
    }
    case SpaceKind::Process: {
      const auto& p = space.as_process();
      const HermitianMatrix rho = process_normalization(a);
      const RVector rho_ev = eigenvalues(rho);
      if (rho_ev(0) < -tol) add("normalization state not positive", std::nullopt, -rho_ev(0));
      if (std::abs(rho.trace() - 1.0) > tol) add("normalization state trace differs from 1", std::nullopt, std::abs(rho.trace() - 1.0));
      const CMatrix unit = tensor(rho.matrix(), CMatrix::Identity(p.dim_b, p.dim_b));
      CMatrix total = CMatrix::Zero(unit.rows(), unit.cols());
      for (Index i = 0; i < a.size(); ++i) {
        const auto& op = a.effects()[static_cast<std::size_t>(i)].op();
        total += op.matrix();
        const int x = a.outcomes()[static_cast<std::size_t>(i)];
        const double lo = min_eigenvalue(op);
        if (lo < -tol) add("effect not positive", x, -lo);
        const double gap = min_eigenvalue(HermitianMatrix(unit - op.matrix(), 1e-9));
        if (gap < -tol) add("effect exceeds rho (x) 1", x, -gap);
      }
      const double dev = (total - unit).norm();
      if (dev > tol) add("normalization is not of the form rho (x) 1", std::nullopt, dev);
      break;
    }
  }
  return report;
}

double effect_distance(const Effect& a, const Effect& b, const StateSpace& space) {
  if (!a.matches(space) || !b.matches(space)) throw Error(ErrorCode::SpaceMismatch, "effects do not belong to the space");
  switch (space.kind()) {
    case SpaceKind::Polytope: return (vertex_values(a, space) - vertex_values(b, space)).cwiseAbs().maxCoeff();
    case SpaceKind::Quantum: return (a.op().matrix() - b.op().matrix()).cwiseAbs().maxCoeff();
    case SpaceKind::Process: {
      const auto& p = space.as_process();
      const CMatrix diff = a.op().matrix() - b.op().matrix();
      CMatrix omega = partial_trace_b(diff, p.dim_a, p.dim_b) / static_cast<double>(p.dim_b);
      omega -= (omega.trace() / static_cast<double>(p.dim_a)) * CMatrix::Identity(p.dim_a, p.dim_a);
      return (diff - tensor(omega, CMatrix::Identity(p.dim_b, p.dim_b))).cwiseAbs().maxCoeff();
    }
  }
  return 0.0;
}

double observable_distance(const Observable& a, const Observable& b) {
  if (!(a.space() == b.space())) throw Error(ErrorCode::SpaceMismatch, "observables live on different spaces");
  std::set<int> all(a.outcomes().begin(), a.outcomes().end());
  all.insert(b.outcomes().begin(), b.outcomes().end());
  const Effect zero = Effect::zero(a.space());
  double worst = 0.0;
  for (int z : all) {
    const auto ia = a.index_of(z);
    const auto ib = b.index_of(z);
    worst = std::max(worst, effect_distance(ia ? a.effects()[static_cast<std::size_t>(*ia)] : zero,
                                            ib ? b.effects()[static_cast<std::size_t>(*ib)] : zero, a.space()));
  }
  return worst;
}

}  // namespace gptnoise
