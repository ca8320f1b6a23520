#include "support.hpp"

#include "gptnoise/polytopes.hpp"
#include "gptnoise/processes.hpp"

using namespace gptnoise;
using namespace gptnoise::test;

namespace {

template <typename F>
void check_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("expected error " << to_string(code));
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

HermitianMatrix projector(Index d, Index i) { return HermitianMatrix(outer(CVector::Unit(d, i))); }

Observable qubit_sharp() {
  return Observable(StateSpace::quantum(2), {0, 1}, {QuantumEffect{projector(2, 0)}, QuantumEffect{projector(2, 1)}});
}

}  // namespace

TEST_CASE("evaluate basic effects") {
  const auto q = StateSpace::quantum(2);
  const State one = DensityOperator{projector(2, 1)};
  CHECK(evaluate(Effect::unit(q), q, one) == 1.0);
  CHECK(evaluate(QuantumEffect{projector(2, 0)}, q, one) == 0.0);

  const auto sq = squit_space();
  const Observable a = squit_a(0.4);
  ConvexWeights s1{RVector::Unit(4, 0)};
  CHECK(evaluate(a.effect(0), sq, s1) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("evaluate rejects mismatched or invalid states") {
  const auto q = StateSpace::quantum(2);
  check_error(ErrorCode::SpaceMismatch, [&] { (void)evaluate(Effect::unit(q), q, DensityOperator{(1.0 / 3.0) * HermitianMatrix::identity(3)}); });
  check_error(ErrorCode::InvalidState, [&] { (void)evaluate(Effect::unit(q), q, DensityOperator{HermitianMatrix::identity(2)}); });
  const auto sq = squit_space();
  check_error(ErrorCode::InvalidState, [&] { (void)evaluate(Effect::unit(sq), sq, ConvexWeights{RVector::Constant(4, 0.5)}); });
  check_error(ErrorCode::SpaceMismatch, [&] { (void)evaluate(Effect::unit(sq), sq, DensityOperator{projector(2, 0)}); });
}

TEST_CASE("ambient points convert to convex weights") {
  const auto sq = squit_space();
  RVector p(2);
  p << 0.25, 0.75;
  const auto w = weights_from_point(sq, p);
  CHECK((w.weights.array() >= -1e-12).all());
  CHECK(w.weights.sum() == doctest::Approx(1.0));
  CHECK((sq.as_polytope().vertices * w.weights - p).norm() < 1e-12);
  p << 1.5, 0.5;
  check_error(ErrorCode::InvalidState, [&] { (void)weights_from_point(sq, p); });
}

TEST_CASE("validate_observable") {
  CHECK(validate_observable(qubit_sharp()).ok());

  const Observable doubled(StateSpace::quantum(2), {0, 1}, {QuantumEffect{projector(2, 0)}, QuantumEffect{projector(2, 0)}});
  const auto rep = validate_observable(doubled);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& issue : rep.issues)
    if (!issue.outcome) {
      CHECK(issue.magnitude == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
      found = true;
    }
  CHECK(found);
  CHECK_FALSE(rep.summary().empty());
}

TEST_CASE("PPOVM with product effects is valid with the expected rho") {
  const Basis psi = Basis::haar_random(2, 4);
  RVector p(2);
  p << 0.3, 0.7;
  std::vector<Effect> effects;
  CMatrix rho = CMatrix::Zero(2, 2);
  for (Index x = 0; x < 2; ++x) {
    effects.push_back(ProcessEffect{HermitianMatrix(tensor(CMatrix(p(x) * outer(psi.vector(x))), CMatrix::Identity(2, 2)), 1e-9)});
    rho += p(x) * outer(psi.vector(x));
  }
  const Observable a(StateSpace::process(2, 2), {0, 1}, effects);
  CHECK(validate_observable(a).ok());
  CHECK(max_abs(process_normalization(a).matrix() - rho) < 1e-12);
}

TEST_CASE("invalid process observables are reported") {
  // normalization that is not of the form rho (x) 1
  const Observable a(StateSpace::process(2, 2), {0}, {ProcessEffect{HermitianMatrix(tensor(CMatrix::Identity(2, 2), CMatrix(outer(CVector::Unit(2, 0)))))}});
  CHECK_FALSE(validate_observable(a).ok());
}

TEST_CASE("observable construction errors") {
  const auto q = StateSpace::quantum(2);
  check_error(ErrorCode::SpaceMismatch, [&] { Observable(q, {0}, {Effect::unit(StateSpace::quantum(3))}); });
  check_error(ErrorCode::InvalidParameter, [&] { Observable(q, {0, 0}, {Effect::zero(q), Effect::unit(q)}); });
  check_error(ErrorCode::InvalidParameter, [&] { Observable(q, {-1}, {Effect::unit(q)}); });
  check_error(ErrorCode::OutcomeMismatch, [&] { (void)qubit_sharp().effect(5); });
}

TEST_CASE("outcomes are sorted with their effects") {
  const Observable a(StateSpace::quantum(2), {7, 3}, {QuantumEffect{projector(2, 0)}, QuantumEffect{projector(2, 1)}});
  CHECK(a.outcomes() == std::vector<int>{3, 7});
  CHECK(a.effect(7).op()(0, 0) == Complex(1.0));
}

TEST_CASE("mix") {
  const Observable a = qubit_sharp();
  CHECK(observable_distance(mix(a, a, 0.5), a) < 1e-15);

  const Observable b(StateSpace::quantum(2), {1, 2}, {QuantumEffect{0.5 * HermitianMatrix::identity(2)}, QuantumEffect{0.5 * HermitianMatrix::identity(2)}});
  const Observable c = mix(a, b, 1.0);
  CHECK(c.outcomes() == std::vector<int>{0, 1, 2});
  CHECK(max_abs(c.effect(2).op().matrix()) == 0.0);
  CHECK(observable_distance(c, a) == 0.0);
  check_error(ErrorCode::InvalidParameter, [&] { (void)mix(a, b, 1.5); });
  check_error(ErrorCode::InvalidParameter, [&] { (void)mix(a, b, -0.1); });

  // squit: A^alpha = alpha T + (1 - alpha) A^0 with T the constant (1, 0) observable
  const auto sq = squit_space();
  const double alpha = 0.3;
  const Observable t = embed_trivial(TrivialObservable({0, 1}, RVector::Unit(2, 0)), sq);
  const Observable m = mix(t, squit_a(0.0), alpha);
  for (int x : {0, 1}) CHECK((vertex_values(m.effect(x), sq) - vertex_values(squit_a(alpha).effect(x), sq)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("embed_trivial") {
  const auto q = StateSpace::quantum(2);
  const Observable u = embed_trivial(TrivialObservable::uniform({0, 1}), q);
  for (const auto& e : u.effects()) CHECK(max_abs(e.op().matrix() - 0.5 * CMatrix::Identity(2, 2)) == 0.0);

  const auto sq = squit_space();
  const Observable t = embed_trivial(TrivialObservable({0, 1}, RVector::Unit(2, 0)), sq);
  CHECK(vertex_values(t.effect(0), sq) == RVector::Ones(4));
  CHECK(vertex_values(t.effect(1), sq) == RVector::Zero(4));

  const Observable pr = embed_trivial(TrivialObservable::uniform({0, 1, 2}), StateSpace::process(2, 2));
  const CMatrix expected = tensor(CMatrix(CMatrix::Identity(2, 2) / 2.0), CMatrix(CMatrix::Identity(2, 2))) / 3.0;
  for (const auto& e : pr.effects()) CHECK(max_abs(e.op().matrix() - expected) < 1e-15);

  check_error(ErrorCode::InvalidParameter, [] { TrivialObservable({0, 1}, RVector::Constant(2, 0.6)); });
}

TEST_CASE("polytope effects from vertex values") {
  const auto sq = squit_space();
  const double alpha = 0.35;
  RVector v(4);
  v << alpha, alpha, 1, 1;
  const Effect e = polytope_effect_from_vertex_values(sq, v);
  CHECK(effect_distance(e, squit_a(alpha).effect(0), sq) < 1e-12);

  v << 1, 0, 1, 0;
  check_error(ErrorCode::AffineInconsistency, [&] { (void)polytope_effect_from_vertex_values(sq, v); });

  RMatrix tri(2, 3);
  tri << 0, 1, 0,
         0, 0, 1;
  const auto ts = StateSpace::polytope(tri);
  RVector tv(3);
  tv << 0.2, 0.5, 0.9;
  CHECK((vertex_values(polytope_effect_from_vertex_values(ts, tv), ts) - tv).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("process effects are compared as functionals on channels") {
  const auto sp = StateSpace::process(2, 2);
  CMatrix omega = CMatrix::Zero(2, 2);
  omega(0, 0) = 1;
  omega(1, 1) = -1;
  const HermitianMatrix base(tensor(CMatrix(CMatrix::Identity(2, 2) / 2.0), CMatrix(CMatrix::Identity(2, 2))));
  const HermitianMatrix shifted = base + 0.1 * HermitianMatrix(tensor(omega, CMatrix(CMatrix::Identity(2, 2))));
  CHECK(effect_distance(ProcessEffect{base}, ProcessEffect{shifted}, sp) < 1e-15);
  // and indeed no channel tells them apart
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const State ch = random_channel(2, 2, 2, 100 + k);
    CHECK(std::abs(evaluate_raw(ProcessEffect{base}, sp, ch) - evaluate_raw(ProcessEffect{shifted}, sp, ch)) < 1e-12);
  }
}

TEST_CASE("observables sum to one on random states") {
  std::mt19937_64 rng(17);
  const Observable q = random_povm(3, 4, 5);
  const Observable p = random_polytope_observable(regular_polygon(5), 3, 6);
  const PPOVM pp = random_ppovm(2, 2, 3, 7);
  std::uniform_real_distribution<double> u;
  for (int k = 0; k < 100; ++k) {
    CHECK(evaluate(q, DensityOperator{random_density(3, rng)}).sum() == doctest::Approx(1.0).epsilon(1e-9));
    RVector w(5);
    for (Index i = 0; i < 5; ++i) w(i) = -std::log(u(rng));
    w /= w.sum();
    CHECK(evaluate(p, ConvexWeights{w}).sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(evaluate_ppovm(pp, random_channel(2, 2, 3, 1000 + k)).sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("mixtures evaluate affinely and trivial embeddings are state independent") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u;
  const Observable a = random_povm(2, 3, 1), b = random_povm(2, 3, 2);
  RVector probs(3);
  probs << 0.2, 0.3, 0.5;
  const TrivialObservable tr({0, 1, 2}, probs);
  const Observable t = embed_trivial(tr, StateSpace::quantum(2));
  const Observable tp = embed_trivial(tr, StateSpace::process(2, 3));
  for (int k = 0; k < 100; ++k) {
    const double s = u(rng);
    const State rho = DensityOperator{random_density(2, rng)};
    const RVector lhs = evaluate(mix(a, b, s), rho);
    const RVector rhs = s * evaluate(a, rho) + (1 - s) * evaluate(b, rho);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((evaluate(t, rho) - probs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((evaluate(tp, random_channel(2, 3, 2, 500 + k)) - probs).cwiseAbs().maxCoeff() < 1e-12);
  }
}
