#include "gptnoise/compat.hpp"

#include <numeric>

#include "gptnoise/lp.hpp"

namespace gptnoise {

std::string_view to_string(CompatibilityStatus s) {
  switch (s) {
    case CompatibilityStatus::CompatibleCertified: return "CompatibleCertified";
    case CompatibilityStatus::IncompatibleCertified: return "IncompatibleCertified";
    case CompatibilityStatus::Undecided: return "Undecided";
  }
  return "Unknown";
}

JointObservable::JointObservable(Observable base, std::vector<std::vector<int>> factors) : base_(std::move(base)), factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::InvalidParameter, "a joint observable needs at least one factor");
  Index cells = 1;
  for (const auto& f : factors_) {
    if (f.empty()) throw Error(ErrorCode::InvalidParameter, "empty factor outcome set");
    cells *= static_cast<Index>(f.size());
  }
  if (base_.size() != cells) throw Error(ErrorCode::OutcomeMismatch, "base outcome count differs from the product grid size");
  for (Index c = 0; c < cells; ++c)
    if (base_.outcomes()[static_cast<std::size_t>(c)] != c) throw Error(ErrorCode::OutcomeMismatch, "base outcomes must be the cell codes 0..n-1");
}

std::vector<Index> JointObservable::radices() const {
  std::vector<Index> r;
  for (const auto& f : factors_) r.push_back(static_cast<Index>(f.size()));
  return r;
}

Index grid_size(const std::vector<Index>& radices, Index cap) {
  Index cells = 1;
  for (Index r : radices) {
    cells *= r;
    if (cells > cap) throw Error(ErrorCode::SizeCap, "product outcome grid exceeds " + std::to_string(cap) + " cells");
  }
  return cells;
}

namespace {

std::vector<int> cell_codes(Index cells) {
  std::vector<int> out(static_cast<std::size_t>(cells));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

void require_same_space(const std::vector<Observable>& obs) {
  if (obs.empty()) throw Error(ErrorCode::InvalidParameter, "no observables given");
  for (const auto& a : obs)
    if (!(a.space() == obs.front().space())) throw Error(ErrorCode::SpaceMismatch, "observables live on different state spaces");
}

}  // namespace

Observable marginal(const JointObservable& g, Index j) {
  if (j < 0 || j >= g.arity()) throw Error(ErrorCode::InvalidParameter, "marginal index out of range");
  const auto radices = g.radices();
  const auto& factor = g.factors()[static_cast<std::size_t>(j)];
  std::vector<Effect> effects(factor.size(), Effect::zero(g.base().space()));
  for (Index c = 0; c < g.base().size(); ++c) {
    const auto digits = decode_tuple(static_cast<int>(c), radices);
    auto& e = effects[static_cast<std::size_t>(digits[static_cast<std::size_t>(j)])];
    e = e + g.base().effects()[static_cast<std::size_t>(c)];
  }
  return Observable(g.base().space(), factor, std::move(effects));
}

JointObservable joint_from_postprocessings(const Observable& c, const std::vector<ClassicalChannel>& channels) {
  if (channels.empty()) throw Error(ErrorCode::InvalidParameter, "no channels given");
  std::vector<std::vector<Index>> row_of_outcome;  // per channel: observable index -> channel row
  std::vector<Index> radices;
  std::vector<std::vector<int>> factors;
  for (const auto& nu : channels) {
    if (nu.in_outcomes().size() != c.outcomes().size()) throw Error(ErrorCode::OutcomeMismatch, "channel input does not match the observable");
    std::vector<Index> rows(c.outcomes().size());
    for (std::size_t r = 0; r < nu.in_outcomes().size(); ++r) {
      const auto i = c.index_of(nu.in_outcomes()[r]);
      if (!i) throw Error(ErrorCode::OutcomeMismatch, "channel input outcome is not an outcome of the observable");
      rows[static_cast<std::size_t>(*i)] = static_cast<Index>(r);
    }
    row_of_outcome.push_back(std::move(rows));
    radices.push_back(static_cast<Index>(nu.out_outcomes().size()));
    factors.push_back(nu.out_outcomes());
  }
  const Index cells = grid_size(radices, kDefaultWitnessCap);
  std::vector<Effect> effects;
  effects.reserve(static_cast<std::size_t>(cells));
  for (Index cell = 0; cell < cells; ++cell) {
    const auto digits = decode_tuple(static_cast<int>(cell), radices);
    Effect e = Effect::zero(c.space());
    for (Index y = 0; y < c.size(); ++y) {
      double w = 1.0;
      for (std::size_t j = 0; j < channels.size() && w != 0.0; ++j)
        w *= channels[j].matrix()(row_of_outcome[j][static_cast<std::size_t>(y)], digits[j]);
      if (w != 0.0) e = e + w * c.effects()[static_cast<std::size_t>(y)];
    }
    effects.push_back(std::move(e));
  }
  return JointObservable(Observable(c.space(), cell_codes(cells), std::move(effects)), std::move(factors));
}

double marginal_error(const JointObservable& g, const std::vector<Observable>& observables) {
  if (g.arity() != static_cast<Index>(observables.size())) throw Error(ErrorCode::OutcomeMismatch, "joint arity differs from the number of observables");
  double worst = 0.0;
  for (std::size_t j = 0; j < observables.size(); ++j) {
    if (g.factors()[j] != observables[j].outcomes()) throw Error(ErrorCode::OutcomeMismatch, "factor outcomes differ from observable outcomes");
    worst = std::max(worst, observable_distance(marginal(g, static_cast<Index>(j)), observables[j]));
  }
  return worst;
}

bool is_joint_of(const JointObservable& g, const std::vector<Observable>& observables, double tol) {
  return marginal_error(g, observables) <= tol;
}

RVector default_weights(const RVector& w) {
  const auto m = static_cast<double>(w.size());
  const double excess = (w.sum() - (m - 1.0)) / m;
  RVector p = ((1.0 - w.array()) + excess).cwiseMax(0.0).cwiseMin(1.0);
  return p / p.sum();
}

JointObservable build_joint(const std::vector<Observable>& observables, const RVector& weights) {
  require_same_space(observables);
  const std::size_t m = observables.size();
  if (weights.size() != static_cast<Index>(m)) throw Error(ErrorCode::InvalidParameter, "one weight per observable is required");
  if (!weights.allFinite() || weights.minCoeff() < 0.0 || std::abs(weights.sum() - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidParameter, "weights must form a probability vector");

  std::vector<Observable> parts;  // C_j
  std::vector<RVector> dists;     // q_j
  std::vector<Index> radices;
  std::vector<std::vector<int>> factors;
  for (std::size_t j = 0; j < m; ++j) {
    const auto d = best_noise_decomposition(observables[j]);
    const double need = 1.0 - weights(static_cast<Index>(j));
    if (d.t < need - 1e-12)
      throw Error(ErrorCode::InsufficientNoise,
                  "observable " + std::to_string(j) + " has noise content " + std::to_string(d.t) + ", short by " + std::to_string(need - d.t));
    parts.push_back(rescale(d, observables[j], std::min(need, d.t)).residual);
    dists.push_back(d.trivial.probs());
    radices.push_back(observables[j].size());
    factors.push_back(observables[j].outcomes());
  }

  const Index cells = grid_size(radices, kDefaultWitnessCap);
  const StateSpace& space = observables.front().space();
  std::vector<Effect> effects;
  effects.reserve(static_cast<std::size_t>(cells));
  for (Index cell = 0; cell < cells; ++cell) {
    const auto digits = decode_tuple(static_cast<int>(cell), radices);
    Effect e = Effect::zero(space);
    for (std::size_t j = 0; j < m; ++j) {
      double w = weights(static_cast<Index>(j));
      for (std::size_t i = 0; i < m && w != 0.0; ++i)
        if (i != j) w *= dists[i](digits[i]);
      if (w != 0.0) e = e + w * parts[j].effects()[static_cast<std::size_t>(digits[j])];
    }
    effects.push_back(std::move(e));
  }
  return JointObservable(Observable(space, cell_codes(cells), std::move(effects)), std::move(factors));
}

CompatibilityVerdict sufficient_compatible(const std::vector<Observable>& observables, std::optional<RVector> weights, Index witness_cap) {
  require_same_space(observables);
  if (observables.size() < 2) throw Error(ErrorCode::InvalidParameter, "compatibility needs at least two observables");
  CompatibilityVerdict v;
  RVector w(static_cast<Index>(observables.size()));
  for (std::size_t j = 0; j < observables.size(); ++j) {
    w(static_cast<Index>(j)) = best_noise_decomposition(observables[j]).t;
    v.noise_contents.push_back(w(static_cast<Index>(j)));
  }
  v.inequality_value = w.sum();
  v.threshold = static_cast<double>(observables.size()) - 1.0;
  if (v.inequality_value + 1e-12 < v.threshold) return v;

  std::vector<Index> radices;
  for (const auto& a : observables) radices.push_back(a.size());
  grid_size(radices, witness_cap);
  const RVector p = weights ? *weights : default_weights(w);
  v.weights = p;
  v.joint = build_joint(observables, p);
  v.status = CompatibilityStatus::CompatibleCertified;
  return v;
}

CompatibilityVerdict lp_compatible_polytope(const std::vector<Observable>& observables, double tol, Index cell_cap) {
  require_same_space(observables);
  const StateSpace& space = observables.front().space();
  if (space.kind() != SpaceKind::Polytope) throw Error(ErrorCode::SpaceMismatch, "the LP decider needs a polytope state space");
  const auto& poly = space.as_polytope();
  const Index n = poly.vertex_count();
  const Index relations = poly.affine_relations.cols();

  std::vector<Index> radices;
  std::vector<std::vector<int>> factors;
  for (const auto& a : observables) {
    radices.push_back(a.size());
    factors.push_back(a.outcomes());
  }
  const Index cells = grid_size(radices, cell_cap);
  Index marginal_rows = 0;
  for (Index r : radices) marginal_rows += r * n;
  const Index rows = cells * relations + marginal_rows;
  const Index cols = cells * n;
  if (rows * (cols + rows) > 50'000'000) throw Error(ErrorCode::SizeCap, "LP tableau would be too large");

  // Variable (cell, vertex) -> column cell * n + vertex.
  RMatrix a = RMatrix::Zero(rows, cols);
  RVector b = RVector::Zero(rows);
  Index row = 0;
  for (Index c = 0; c < cells; ++c)
    for (Index r = 0; r < relations; ++r, ++row) a.block(row, c * n, 1, n) = poly.affine_relations.col(r).transpose();

  std::vector<Index> offsets;  // first marginal row of each factor
  for (std::size_t j = 0; j < observables.size(); ++j) {
    offsets.push_back(row);
    for (Index k = 0; k < radices[j]; ++k) {
      const RVector values = vertex_values(observables[j].effects()[static_cast<std::size_t>(k)], space);
      b.segment(row + k * n, n) = values;
    }
    row += radices[j] * n;
  }
  for (Index c = 0; c < cells; ++c) {
    const auto digits = decode_tuple(static_cast<int>(c), radices);
    for (std::size_t j = 0; j < observables.size(); ++j)
      for (Index i = 0; i < n; ++i) a(offsets[j] + digits[j] * n + i, c * n + i) = 1.0;
  }

  CompatibilityVerdict v;
  RVector w(static_cast<Index>(observables.size()));
  for (std::size_t j = 0; j < observables.size(); ++j) {
    w(static_cast<Index>(j)) = noise_content(observables[j]).t;
    v.noise_contents.push_back(w(static_cast<Index>(j)));
  }
  v.inequality_value = w.sum();
  v.threshold = static_cast<double>(observables.size()) - 1.0;

  const auto res = lp::phase_one(a, b, tol);
  if (!res.feasible) {
    v.status = CompatibilityStatus::IncompatibleCertified;
    v.certificate = res.certificate;
    return v;
  }
  std::vector<Effect> effects;
  effects.reserve(static_cast<std::size_t>(cells));
  for (Index c = 0; c < cells; ++c) effects.push_back(polytope_effect_from_vertex_values(space, res.x.segment(c * n, n), 1e-7));
  v.joint = JointObservable(Observable(space, cell_codes(cells), std::move(effects)), std::move(factors));
  v.status = CompatibilityStatus::CompatibleCertified;
  return v;
}

}  // namespace gptnoise
