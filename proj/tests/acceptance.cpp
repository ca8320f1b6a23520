// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "gptnoise/polytopes.hpp"
#include "gptnoise/processes.hpp"

using namespace gptnoise;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail << "first failure: " << why << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // <= 0: no limit
  std::function<void(Outcome&)> run;
};

// ---------- criterion 1 helpers ----------

// Points of a barycentric grid on each triangle of a fan triangulation of a
// convex polygon whose vertices are listed in boundary order.
std::vector<RVector> polygon_grid(const RMatrix& v, int k) {
  std::vector<RVector> pts;
  for (Index t = 1; t + 1 < v.cols(); ++t)
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j) {
        const double a = double(i) / k, b = double(j) / k;
        pts.push_back((1 - a - b) * v.col(0) + a * v.col(t) + b * v.col(t + 1));
      }
  return pts;
}

std::vector<RVector> square_grid(int n) {
  std::vector<RVector> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pts.push_back((RVector(2) << double(i) / (n - 1), double(j) / (n - 1)).finished());
  return pts;
}

StateSpace random_pentagon(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u;
  std::vector<double> angles;
  for (int i = 0; i < 5; ++i) angles.push_back(2 * std::numbers::pi * u(rng));
  std::sort(angles.begin(), angles.end());
  const double sx = 0.5 + u(rng), sy = 0.5 + u(rng);
  RMatrix v(2, 5);
  for (int i = 0; i < 5; ++i) v(0, i) = sx * std::cos(angles[static_cast<std::size_t>(i)]), v(1, i) = sy * std::sin(angles[static_cast<std::size_t>(i)]);
  return StateSpace::polytope(v);
}

double brute_polytope_noise(const Observable& a, const std::vector<RVector>& points) {
  double total = 0.0;
  for (const auto& e : a.effects()) {
    const auto& pe = e.as_polytope();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& p : points) lo = std::min(lo, pe.linear.dot(p) + pe.offset);
    total += lo;
  }
  return total;
}

CVector gaussian_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

// Sampled infimum of tr[E psi] over pure states: half of the samples are
// Haar-random, half are local moves around the best state so far.
double sampled_infimum(const CMatrix& e, int samples, std::mt19937_64& rng) {
  const Index n = e.rows();
  auto value = [&](const CVector& v) { return (v.adjoint() * e * v)(0, 0).real() / v.squaredNorm(); };
  CVector best = gaussian_vector(n, rng);
  double lo = value(best);
  for (int k = 1; k < samples / 2; ++k) {
    const CVector v = gaussian_vector(n, rng);
    const double q = value(v);
    if (q < lo) lo = q, best = v / v.norm();
  }
  double step = 0.5;
  int stale = 0;
  for (int k = samples / 2; k < samples; ++k) {
    const CVector v = best + step * gaussian_vector(n, rng) / std::sqrt(double(n));
    const double q = value(v);
    if (q < lo) {
      lo = q, best = v / v.norm(), stale = 0;
    } else if (++stale > 20) {
      step = std::max(0.5 * step, 1e-8), stale = 0;
    }
  }
  return lo;
}

void criterion1(Outcome& out) {
  double worst_poly = 0.0;
  const auto sq_points = square_grid(100);
  for (std::uint64_t k = 0; k < 50; ++k) {
    const bool squit = k % 2 == 0;
    const StateSpace space = squit ? squit_space() : random_pentagon(k);
    const auto points = squit ? sq_points : polygon_grid(space.as_polytope().vertices, 80);
    const Observable a = random_polytope_observable(space, 2 + Index(k % 4), 0xC0FFEE + k);
    const double t = noise_content(a).t;
    const double brute = brute_polytope_noise(a, points);
    worst_poly = std::max(worst_poly, std::abs(t - brute));
    out.require(points.size() >= 9900, "fewer than 10^4 hull points");
    out.require(std::abs(t - brute) <= 1e-6, "polytope observable " + std::to_string(k) + " differs from brute force");
  }
  double worst_gap = -std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(0xC0FFEE);
  for (std::uint64_t k = 0; k < 50; ++k) {
    const Index d = 2 + Index(k % 2);
    const Observable a = random_povm(d, 2 + Index(k % 4), 0xC0FFEE + 100 + k);
    const double t = noise_content(a).t;
    double sampled = 0.0;
    for (const auto& e : a.effects()) sampled += sampled_infimum(e.op().matrix(), 100000, rng);
    worst_gap = std::max(worst_gap, sampled - t);
    out.require(sampled >= t - 1e-12, "sampled value below the eigenvalue bound");
    out.require(sampled - t < 1e-3, "POVM " + std::to_string(k) + " gap " + std::to_string(sampled - t));
  }
  out.detail << "max |t - brute| polytope " << worst_poly << ", max quantum gap " << worst_gap;
}

void criterion2(Outcome& out) {
  int certified_cases = 0;
  double worst = 0.0;
  for (Index d : {2, 3})
    for (Index m : {2, 3}) {
      std::mt19937_64 rng(0xC0FFEE + static_cast<std::uint64_t>(10 * d + m));
      std::vector<CMatrix> us;
      for (Index j = 0; j < m; ++j) us.push_back(haar_unitary(d, rng));
      for (Index n = 2; n <= 8; ++n) {
        if (n < d) continue;  // no regular rank-1 POVM with fewer outcomes than the dimension
        std::vector<Observable> obs;
        for (Index j = 0; j < m; ++j) obs.push_back(reverse(rotate(harmonic_frame_povm(d, n), us[static_cast<std::size_t>(j)])));
        const auto v = sufficient_compatible(obs);
        const bool certified = v.status == CompatibilityStatus::CompatibleCertified;
        out.require(certified == (n >= (d - 1) * m + 1), "d=" + std::to_string(d) + " m=" + std::to_string(m) + " N=" + std::to_string(n));
        if (certified) {
          ++certified_cases;
          const double err = marginal_error(*v.joint, obs);
          worst = std::max(worst, err);
          out.require(err < 1e-9, "marginal error");
        }
      }
    }
  out.detail << certified_cases << " certified cases, max marginal error " << worst;
}

void criterion3(Outcome& out) {
  int agree = 0;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double alpha = i / 10.0, beta = j / 10.0;
      const Observable a = squit_a(alpha), b = squit_b(beta);
      out.require(noise_content(a).t == alpha && noise_content(b).t == beta, "noise contents not exact");
      const auto lp = lp_compatible_polytope({a, b}, 1e-9);
      const bool expected = alpha + beta >= 1.0 - 1e-9;
      const bool ok = (lp.status == CompatibilityStatus::CompatibleCertified) == expected && lp.status != CompatibilityStatus::Undecided;
      out.require(ok, "LP verdict at alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta));
      const bool suff = sufficient_compatible({a, b}).status == CompatibilityStatus::CompatibleCertified;
      out.require(suff == expected, "sufficient condition at alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta));
      agree += ok;
    }
  out.detail << agree << "/121 grid points agree";
}

void criterion4(Outcome& out) {
  double worst = 0.0;
  for (Index d = 3; d <= 6; ++d) {
    const HermitianMatrix s = mub_reverse_steering_state(d);
    const auto [a, b] = fourier_mub_pair(d);
    out.require(min_eigenvalue(s) >= -1e-10, "sigma not PSD");
    out.require(std::abs(s.trace() - 1.0) <= 1e-10, "trace");
    for (Index i = 0; i < d; ++i) {
      const double target = i == 0 ? 0.0 : 1.0 / double(d - 1);
      const double da = std::abs((a.effects()[i].op().matrix() * s.matrix()).trace().real() - target);
      const double db = std::abs((b.effects()[i].op().matrix() * s.matrix()).trace().real() - target);
      worst = std::max({worst, da, db});
      out.require(da <= 1e-10 && db <= 1e-10, "trace condition at d=" + std::to_string(d));
    }
  }
  out.detail << "max deviation " << worst;
}

void criterion5(Outcome& out) {
  const Basis b1 = Basis::haar_random(3, kTripleWitnessSeed), b2 = Basis::haar_random(3, kTripleWitnessSeed + 1),
              b3 = Basis::haar_random(3, kTripleWitnessSeed + 2);
  const auto w = reverse_triple_witness(b1, b2, b3);
  bool all3 = true;
  for (Index r : w.ranks) all3 = all3 && r == 3;
  out.require(all3, "a stack of the seeded triple is rank deficient");
  out.require(w.status == CompatibilityStatus::IncompatibleCertified, "seeded triple not certified");
  CMatrix chi = b3.vectors();
  chi.col(0) = b2.vector(0);
  CMatrix q = chi.householderQr().householderQ();
  q.col(0) = b2.vector(0);
  const auto degenerate = reverse_triple_witness(b1, b2, Basis(q, 1e-9));
  out.require(degenerate.status == CompatibilityStatus::Undecided, "shared-vector triple not undecided");
  out.detail << "seeded: " << to_string(w.status) << ", shared vector: " << to_string(degenerate.status);
}

void criterion6(Outcome& out) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Observable a = random_povm(2 + Index(seed % 3), 2, 0xC0FFEE + seed);
    const Observable arr = doubly_reverse(a);
    for (std::size_t x = 0; x < 2; ++x)
      out.require(arr.effects()[x].op().matrix() == a.effects()[x].op().matrix(), "N=2 doubly reverse not bit-exact");
  }
  double worst = 0.0;
  for (Index n = 3; n <= 5; ++n) {
    const double formula = double(n * (n - 2)) / double((n - 1) * (n - 1));
    const Basis basis = Basis::haar_random(n, 0xC0FFEE + static_cast<std::uint64_t>(n));
    const Observable sharp = sharp_povm(basis);
    const Observable arr = doubly_reverse(sharp);
    // <b_1| A^rr_0 |b_1> = lambda / N for a sharp observable
    const double measured = double(n) * (basis.vector(1).adjoint() * arr.effects()[0].op().matrix() * basis.vector(1))(0, 0).real();
    worst = std::max(worst, std::abs(measured - formula));
    out.require(std::abs(measured - formula) <= 1e-12, "lambda at N=" + std::to_string(n));
    out.require(std::abs(doubly_reverse_lambda(n) - formula) <= 1e-12, "closed-form lambda");

    const Index mmax = (n - 1) * (n - 1);
    std::vector<Observable> obs;
    for (Index m = 1; m <= mmax + 1; ++m) {
      obs.push_back(doubly_reverse(sharp_povm(Basis::haar_random(n, 0xC0FFEE + 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(m)))));
      if (m < 2) continue;
      const bool certified = eigen_condition_report(obs).certified;
      out.require(certified == (m <= mmax), "certification at N=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  out.detail << "max lambda deviation " << worst;
}

void criterion7(Outcome& out) {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PPOVM a = random_ppovm(2 + Index(seed % 2), 2 + Index((seed / 2) % 2), 2 + Index(seed % 4), 0xC0FFEE + seed);
    try {
      const auto d = ppovm_noise_lower_bound(a);
      const PPOVM residual(d.residual);
      const bool same_rho = (residual.rho().matrix() - a.rho().matrix()).cwiseAbs().maxCoeff() <= 1e-9;
      const bool rebuilt = reconstruction_error(a.observable(), d) <= 1e-9;
      out.require(same_rho && rebuilt, "residual normalization or reconstruction");
      ok += same_rho && rebuilt;
    } catch (const Error& e) {
      out.require(false, std::string("residual rejected: ") + e.what());
    }
  }
  RVector p(3);
  p << 0.2, 0.3, 0.5;
  const PPOVM only = product_trivial_ppovm(Basis::haar_random(3, 0xC0FFEE), p, 2);
  const double lower = ppovm_noise_lower_bound(only).t;
  const auto exact = noise_content_exact_trivial_ppovm(only.observable());
  out.require(std::abs(lower) <= 1e-12, "lower bound of the product trivial PPOVM");
  out.require(exact && *exact == 1.0, "exact-trivial detection");
  out.detail << ok << "/50 residuals valid, lower bound " << lower << ", exact " << (exact ? *exact : -1.0);
}

Observable random_on(int backend, Index n, std::uint64_t seed) {
  switch (backend) {
    case 0: return random_povm(2 + Index(seed % 2), n, seed);
    case 1: return random_polytope_observable(seed % 2 ? squit_space() : regular_polygon(5), n, seed);
    default: return random_ppovm(2, 2, n, seed).observable();
  }
}

ClassicalChannel random_stochastic(const std::vector<int>& in, Index out, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u;
  RMatrix m(static_cast<Index>(in.size()), out);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < out; ++j) m(i, j) = -std::log(u(rng));
    m.row(i) /= m.row(i).sum();
  }
  std::vector<int> labels;
  for (Index j = 0; j < out; ++j) labels.push_back(static_cast<int>(j));
  return ClassicalChannel(in, labels, m);
}

void criterion8(Outcome& out) {
  std::mt19937_64 rng(0xC0FFEE);
  std::uniform_real_distribution<double> u;
  const char* names[] = {"quantum", "polytope", "process"};
  for (int backend = 0; backend < 3; ++backend) {
    int mono = 0, conc = 0;
    for (int k = 0; k < 100; ++k) {
      const auto seed = 0xC0FFEE + 10000 * static_cast<std::uint64_t>(backend) + static_cast<std::uint64_t>(k);
      const Index n = 2 + k % 3;
      const Observable a = random_on(backend, n, seed);
      const auto nu = random_stochastic(a.outcomes(), 2 + k % 4, rng);
      mono += noise_content(post_process(nu, a)).t >= noise_content(a).t - 1e-9;
      conc += concavity_check(a, random_on(backend, n, seed + 5000), u(rng), 1e-9).pass;
    }
    out.require(mono == 100, std::string(names[backend]) + " monotonicity");
    out.require(conc == 100, std::string(names[backend]) + " concavity");
    out.detail << names[backend] << " " << mono << "/" << conc << " ";
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "noise content equals sampled infima", 60.0, criterion1},
      {2, "reversed regular POVM threshold table", 10.0, criterion2},
      {3, "squit tightness on the 11x11 grid", 10.0, criterion3},
      {4, "MUB steering state conditions", 5.0, criterion4},
      {5, "reverse triple witness", 1.0, criterion5},
      {6, "doubly reverse observables", 5.0, criterion6},
      {7, "PPOVM lower-bound residuals", 30.0, criterion7},
      {8, "monotonicity and concavity properties", 0.0, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0) out.require(secs < c.limit_seconds, "runtime over limit");
    failed += !out.pass;
    std::printf("[%s] criterion %d: %s (%.3f s) %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, secs, out.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
