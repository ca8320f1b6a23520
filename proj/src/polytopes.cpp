#include "gptnoise/polytopes.hpp"

#include <numbers>
#include <random>

namespace gptnoise {

StateSpace squit_space() {
  RMatrix v(2, 4);
  v << 0, 1, 1, 0,
       0, 0, 1, 1;
  return StateSpace::polytope(v);
}

namespace {

Observable two_outcome(const StateSpace& space, const RVector& linear, double offset) {
  const Effect plus = PolytopeEffect{linear, offset};
  return Observable(space, {0, 1}, {plus, Effect::unit(space) - plus});
}

void check_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::InvalidParameter, std::string(name) + " must lie in [0,1]");
}

}  // namespace

Observable squit_a(double alpha) {
  check_unit_interval(alpha, "alpha");
  return two_outcome(squit_space(), RVector::Unit(2, 1) * (1.0 - alpha), alpha);
}

Observable squit_b(double beta) {
  check_unit_interval(beta, "beta");
  return two_outcome(squit_space(), RVector::Unit(2, 0) * (1.0 - beta), beta);
}

StateSpace regular_polygon(Index n) {
  if (n < 3) throw Error(ErrorCode::InvalidParameter, "a polygon needs at least three vertices");
  RMatrix v(2, n);
  for (Index k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v(0, k) = std::cos(phi);
    v(1, k) = std::sin(phi);
  }
  return StateSpace::polytope(v);
}

Observable random_polytope_observable(const StateSpace& space, Index outcomes, std::uint64_t seed) {
  if (space.kind() != SpaceKind::Polytope) throw Error(ErrorCode::SpaceMismatch, "random_polytope_observable needs a polytope space");
  if (outcomes < 1) throw Error(ErrorCode::InvalidParameter, "need at least one outcome");
  const auto& poly = space.as_polytope();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;

  std::vector<RVector> linear;
  std::vector<double> offset;
  RVector total = RVector::Zero(poly.vertex_count());
  for (Index x = 0; x + 1 < outcomes; ++x) {
    RVector a(poly.ambient_dim());
    for (Index i = 0; i < a.size(); ++i) a(i) = normal(rng);
    const RVector values = poly.vertices.transpose() * a;
    // lift so the minimum over vertices is a random nonnegative floor
    const double b = -values.minCoeff() + (unif(rng) < 0.5 ? 0.0 : 0.3 * unif(rng));
    linear.push_back(a);
    offset.push_back(b);
    total += (values.array() + b).matrix();
  }
  const double peak = outcomes > 1 ? total.maxCoeff() : 0.0;
  const double scale = peak > 0.0 ? (0.5 + 0.5 * unif(rng)) / peak : 0.0;

  std::vector<Effect> effects;
  std::vector<int> labels;
  Effect rest = Effect::unit(space);
  for (std::size_t x = 0; x < linear.size(); ++x) {
    const Effect e = PolytopeEffect{scale * linear[x], scale * offset[x]};
    rest = rest - e;
    effects.push_back(e);
    labels.push_back(static_cast<int>(x));
  }
  effects.push_back(rest);
  labels.push_back(static_cast<int>(outcomes - 1));
  return Observable(space, labels, effects);
}

}  // namespace gptnoise
