#include "gptnoise/noise.hpp"

#include <algorithm>

namespace gptnoise {

std::string_view to_string(InfimumMethod m) {
  switch (m) {
    case InfimumMethod::VertexMin: return "VertexMin";
    case InfimumMethod::MinEigenvalue: return "MinEigenvalue";
    case InfimumMethod::PPOVMLowerBound: return "PPOVMLowerBound";
  }
  return "Unknown";
}

namespace {

// t within this distance of 1 is treated as fully trivial; dividing by 1 - t
// there would only amplify round-off.
constexpr double kFullNoiseSlack = 1e-12;

InfimumMethod method_for(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Polytope: return InfimumMethod::VertexMin;
    case SpaceKind::Quantum: return InfimumMethod::MinEigenvalue;
    case SpaceKind::Process: return InfimumMethod::PPOVMLowerBound;
  }
  return InfimumMethod::VertexMin;
}

double raw_infimum(const Effect& e, const StateSpace& space) {
  if (space.kind() == SpaceKind::Polytope) return vertex_values(e, space).minCoeff();
  return min_eigenvalue(e.op());
}

Observable residual_of(const Observable& a, const Observable& noise, double t) {
  std::vector<Effect> effects;
  effects.reserve(a.effects().size());
  for (std::size_t i = 0; i < a.effects().size(); ++i)
    effects.push_back((1.0 / (1.0 - t)) * (a.effects()[i] - t * noise.effects()[i]));
  return Observable(a.space(), a.outcomes(), std::move(effects));
}

Observable embed_for(const Observable& a, const TrivialObservable& trivial) {
  if (a.space().kind() == SpaceKind::Process) return embed_trivial(trivial, a.space(), process_normalization(a));
  return embed_trivial(trivial, a.space());
}

}  // namespace

EffectInfimum effect_infimum(const Observable& a, int outcome) {
  const Effect& e = a.effect(outcome);
  return {outcome, std::clamp(raw_infimum(e, a.space()), 0.0, 1.0), method_for(a.space().kind())};
}

std::vector<EffectInfimum> effect_infima(const Observable& a) {
  std::vector<EffectInfimum> out;
  out.reserve(a.outcomes().size());
  for (int x : a.outcomes()) out.push_back(effect_infimum(a, x));
  return out;
}

NoiseDecomposition noise_content(const Observable& a) {
  const auto infima = effect_infima(a);
  RVector values(a.size());
  for (Index i = 0; i < a.size(); ++i) values(i) = infima[static_cast<std::size_t>(i)].value;
  double t = std::min(values.sum(), 1.0);

  const InfimumMethod method = method_for(a.space().kind());
  const bool exact = method != InfimumMethod::PPOVMLowerBound;
  if (t <= 0.0) {
    auto trivial = TrivialObservable::uniform(a.outcomes());
    Observable noise = embed_for(a, trivial);
    return {0.0, std::move(trivial), std::move(noise), a, method, exact};
  }
  TrivialObservable trivial(a.outcomes(), values / values.sum());
  Observable noise = embed_for(a, trivial);
  if (t >= 1.0 - kFullNoiseSlack) {
    Observable residual = noise;
    return {t, std::move(trivial), std::move(noise), std::move(residual), method, exact};
  }
  Observable residual = residual_of(a, noise, t);
  return {t, std::move(trivial), std::move(noise), std::move(residual), method, exact};
}

std::optional<double> noise_content_exact_trivial_ppovm(const Observable& a, double tol) {
  if (a.space().kind() != SpaceKind::Process) return std::nullopt;
  const auto& p = a.space().as_process();
  const CMatrix id_b = CMatrix::Identity(p.dim_b, p.dim_b);
  for (const auto& e : a.effects()) {
    const CMatrix reduced = partial_trace_b(e.op().matrix(), p.dim_a, p.dim_b) / static_cast<double>(p.dim_b);
    if ((e.op().matrix() - tensor(reduced, id_b)).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  }
  return 1.0;
}

NoiseDecomposition best_noise_decomposition(const Observable& a) {
  if (noise_content_exact_trivial_ppovm(a)) {
    const double db = static_cast<double>(a.space().as_process().dim_b);
    RVector probs(a.size());
    for (Index i = 0; i < a.size(); ++i) probs(i) = std::max(0.0, a.effects()[static_cast<std::size_t>(i)].op().trace() / db);
    probs /= probs.sum();
    return {1.0, TrivialObservable(a.outcomes(), probs), a, a, InfimumMethod::PPOVMLowerBound, true};
  }
  return noise_content(a);
}

NoiseDecomposition rescale(const NoiseDecomposition& d, const Observable& a, double s) {
  if (!(s >= 0.0 && s <= d.t + 1e-12)) throw Error(ErrorCode::InvalidParameter, "rescaled weight must lie in [0, t]");
  NoiseDecomposition out = d;
  out.t = std::min(s, d.t);
  if (out.t >= 1.0 - kFullNoiseSlack)
    out.residual = d.noise;
  else
    out.residual = residual_of(a, d.noise, out.t);
  return out;
}

double reconstruction_error(const Observable& a, const NoiseDecomposition& d) {
  return observable_distance(a, mix(d.noise, d.residual, d.t));
}

ConcavityReport concavity_check(const Observable& a, const Observable& b, double s, double tol) {
  if (!(a.space() == b.space())) throw Error(ErrorCode::SpaceMismatch, "observables live on different spaces");
  if (a.outcomes() != b.outcomes()) throw Error(ErrorCode::OutcomeMismatch, "concavity needs a common outcome set");
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::InvalidParameter, "mixing weight must lie in [0,1]");
  ConcavityReport r;
  r.lhs = noise_content(mix(a, b, s)).t;
  r.rhs = s * noise_content(a).t + (1.0 - s) * noise_content(b).t;
  r.pass = r.lhs >= r.rhs - tol;
  return r;
}

}  // namespace gptnoise
