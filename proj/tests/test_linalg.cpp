#include "support.hpp"

using namespace gptnoise;
using namespace gptnoise::test;

TEST_CASE("min eigenvalue of simple matrices") {
  CHECK(min_eigenvalue(HermitianMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(min_eigenvalue(HermitianMatrix::zero(2)) == 0.0);
}

TEST_CASE("reversed regular rank-1 effect, d=2 N=3") {
  // trine: unit vectors at 120 degrees in the real plane
  const double pi = std::acos(-1.0);
  const int n = 3, d = 2;
  CMatrix sum = CMatrix::Zero(2, 2);
  std::vector<CMatrix> effects;
  for (int x = 0; x < n; ++x) {
    CVector v(2);
    v << std::cos(2 * pi * x / n), std::sin(2 * pi * x / n);
    effects.push_back(double(d) / n * outer(v));
    sum += effects.back();
  }
  REQUIRE(max_abs(sum - CMatrix::Identity(2, 2)) < 1e-14);
  for (const auto& e : effects) {
    const HermitianMatrix rev((CMatrix::Identity(2, 2) - e) / double(n - 1));
    CHECK(min_eigenvalue(rev) == doctest::Approx(double(n - d) / (n * (n - 1))).epsilon(1e-12));
  }
}

TEST_CASE("eigenvalues match an independent solver") {
  std::mt19937_64 rng(7);
  for (Index n = 1; n <= 16; ++n) {
    const CMatrix m = random_hermitian(n, rng);
    const RVector ours = eigenvalues(HermitianMatrix(m));
    const RVector ref = reference_eigenvalues(m);
    CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(ours.sum() - m.trace().real()) < 1e-9);
  }
}

TEST_CASE("eigenvalue accuracy up to dimension 64") {
  std::mt19937_64 rng(11);
  for (Index n : {32, 64}) {
    const CMatrix m = random_hermitian(n, rng);
    const auto r = jacobi_eigen(m, true);
    CHECK(r.converged);
    CHECK(std::abs(r.values(0) - reference_eigenvalues(m)(0)) < 1e-10);
    CHECK(max_abs(r.vectors * r.values.cast<Complex>().asDiagonal() * r.vectors.adjoint() - m) < 1e-10);
  }
}

TEST_CASE("real symmetric input works through the same template") {
  RMatrix m(2, 2);
  m << 2, 1, 1, 2;
  const auto r = jacobi_eigen(m, false);
  CHECK(r.values(0) == doctest::Approx(1.0));
  CHECK(r.values(1) == doctest::Approx(3.0));
}

TEST_CASE("non-finite entries are rejected") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    (void)jacobi_eigen(m);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMatrix);
  }
  CHECK_THROWS_AS(HermitianMatrix{m}, Error);
}

TEST_CASE("Hermiticity is enforced at construction") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = Complex(0, 1e-13);
  const HermitianMatrix h(m);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  m(0, 1) = 1e-6;
  try {
    HermitianMatrix bad(m);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMatrix);
  }
}

TEST_CASE("Rayleigh quotients bound the minimal eigenvalue") {
  std::mt19937_64 rng(3);
  for (Index n : {2, 3, 4}) {
    const CMatrix m = random_hermitian(n, rng);
    const double lmin = min_eigenvalue(HermitianMatrix(m));
    int below = 0;
    for (int k = 0; k < 10000; ++k) {
      const CVector v = random_vector(n, rng);
      if ((v.adjoint() * m * v)(0, 0).real() / v.squaredNorm() < lmin - 1e-12) ++below;
    }
    CHECK(below == 0);
    const double sampled = sampled_min_rayleigh(m, 100000, rng);
    INFO("dim " << n << " gap " << sampled - lmin);
    CHECK(sampled >= lmin - 1e-12);
    CHECK(sampled - lmin < 1e-3);
  }
}

TEST_CASE("tensor products") {
  CHECK(max_abs(tensor(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)) - CMatrix::Identity(6, 6)) == 0.0);
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1;
  CVector diag(4);
  diag << 1, 1, 0, 0;
  CHECK(max_abs(tensor(p, CMatrix::Identity(2, 2)) - CMatrix(diag.asDiagonal())) == 0.0);

  CVector psi = CVector::Zero(4);
  psi(0) = 1;
  psi(3) = 1;
  CHECK(outer(psi).trace().real() == doctest::Approx(2.0));

  CHECK_THROWS_AS(tensor(CMatrix::Identity(64, 64), CMatrix::Identity(65, 65)), Error);
  try {
    (void)tensor(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3), 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionCap);
  }
}

TEST_CASE("tensor is associative bit-exactly on integer matrices") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-5, 5);
  auto rand_int = [&](Index r, Index c) {
    CMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = Complex(u(rng), u(rng));
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = rand_int(2, 3), b = rand_int(3, 2), c = rand_int(2, 2);
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
  }
}

TEST_CASE("is_psd") {
  CHECK(is_psd(HermitianMatrix::identity(2), 1e-9));
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = -1;
  CHECK_FALSE(is_psd(HermitianMatrix(m), 1e-9));
}

TEST_CASE("rank") {
  CHECK(rank(CMatrix::Identity(3, 3), 1e-8) == 3);
  CMatrix dup(3, 3);
  dup.col(0) = CVector::Unit(3, 0);
  dup.col(1) = CVector::Unit(3, 0);
  dup.col(2) = CVector::Unit(3, 1);
  CHECK(rank(dup, 1e-8) == 2);
  CHECK(rank(CMatrix::Zero(2, 2), 1e-8) == 0);
}

TEST_CASE("singular values match an independent SVD") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (auto [r, c] : std::vector<std::pair<Index, Index>>{{3, 3}, {5, 2}, {2, 6}}) {
    CMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
    const RVector ours = jacobi_singular_values(m);
    const RVector ref = Eigen::JacobiSVD<CMatrix>(m).singularValues();
    REQUIRE(ours.size() == ref.size());
    CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial traces and spectral functions") {
  std::mt19937_64 rng(13);
  const CMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  const CMatrix ab = tensor(a, b);
  CHECK(max_abs(partial_trace_b(ab, 2, 3) - a * b.trace()) < 1e-12);
  CHECK(max_abs(partial_trace_a(ab, 2, 3) - b * a.trace()) < 1e-12);

  const CMatrix g = random_hermitian(4, rng);
  const HermitianMatrix p(g * g + CMatrix::Identity(4, 4));
  const HermitianMatrix s = sqrt_psd(p);
  CHECK(max_abs(s.matrix() * s.matrix() - p.matrix()) < 1e-10);
  const HermitianMatrix inv = inverse_sqrt(p);
  CHECK(max_abs(inv.matrix() * p.matrix() * inv.matrix() - CMatrix::Identity(4, 4)) < 1e-10);
}
