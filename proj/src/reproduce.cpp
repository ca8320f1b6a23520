#include "gptnoise/reproduce.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gptnoise/json_io.hpp"
#include "gptnoise/polytopes.hpp"
#include "gptnoise/processes.hpp"

namespace gptnoise {

namespace {

using io::json;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
  return out;
}

const char* yes_no(bool b) { return b ? "1" : "0"; }

struct Table {
  ReproduceResult& r;
  json& rows;
  void add(const std::vector<std::string>& cells, json row) {
    r.csv_rows.push_back(join(cells));
    rows.push_back(std::move(row));
  }
  void fail(const std::string& why) { r.failures.push_back(why); }
};

std::vector<CMatrix> seeded_unitaries(Index dim, Index count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> out;
  for (Index j = 0; j < count; ++j) out.push_back(haar_unitary(dim, rng));
  return out;
}

void run_reversed_threshold(const ReproduceOptions& opt, Table& t) {
  for (Index d : {2, 3}) {
    for (Index m : {2, 3}) {
      const auto unitaries = seeded_unitaries(d, m, opt.seed + static_cast<std::uint64_t>(10 * d + m));
      for (Index n = 2; n <= 8; ++n) {
        const bool expected = n >= reversed_threshold(d, m);
        if (n < d) {
          t.add({std::to_string(d), std::to_string(m), std::to_string(n), "", "", num(double(m - 1)), "n/a", yes_no(expected), ""},
                {{"d", d}, {"m", m}, {"N", n}, {"applicable", false}});
          continue;
        }
        std::vector<Observable> obs;
        for (Index j = 0; j < m; ++j) obs.push_back(reverse(rotate(harmonic_frame_povm(d, n), unitaries[static_cast<std::size_t>(j)])));
        const auto verdict = sufficient_compatible(obs);
        const bool certified = verdict.status == CompatibilityStatus::CompatibleCertified;
        const double w = verdict.noise_contents.front();
        const double w_expected = double(n - d) / double(n - 1);
        double merr = 0.0;
        if (certified) merr = marginal_error(*verdict.joint, obs);
        t.add({std::to_string(d), std::to_string(m), std::to_string(n), num(w), num(verdict.inequality_value), num(verdict.threshold),
               yes_no(certified), yes_no(expected), certified ? num(merr) : ""},
              {{"d", d}, {"m", m}, {"N", n}, {"applicable", true}, {"noise_content", w}, {"sum", verdict.inequality_value},
               {"threshold", verdict.threshold}, {"certified", certified}, {"expected", expected}, {"marginal_error", merr}});
        const std::string tag = "d=" + std::to_string(d) + " m=" + std::to_string(m) + " N=" + std::to_string(n);
        if (certified != expected) t.fail(tag + ": certification differs from N >= (d-1)m+1");
        for (double wj : verdict.noise_contents)
          if (std::abs(wj - w_expected) > opt.tol) t.fail(tag + ": noise content " + num(wj) + " != " + num(w_expected));
        if (certified && !(merr < opt.tol)) t.fail(tag + ": joint marginal error " + num(merr));
      }
    }
  }
}

void run_squit(const ReproduceOptions& opt, Table& t) {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double alpha = i / 10.0;
      const double beta = j / 10.0;
      const Observable a = squit_a(alpha);
      const Observable b = squit_b(beta);
      const double wa = noise_content(a).t;
      const double wb = noise_content(b).t;
      const auto suff = sufficient_compatible({a, b});
      const auto lp = lp_compatible_polytope({a, b}, opt.tol);
      const bool expected = alpha + beta >= 1.0 - 1e-9;
      const bool lp_compatible = lp.status == CompatibilityStatus::CompatibleCertified;
      t.add({num(alpha), num(beta), num(wa), num(wb), std::string(to_string(suff.status)), std::string(to_string(lp.status)), yes_no(expected)},
            {{"alpha", alpha}, {"beta", beta}, {"w_a", wa}, {"w_b", wb}, {"sufficient", std::string(to_string(suff.status))},
             {"lp", std::string(to_string(lp.status))}, {"expected_compatible", expected}});
      const std::string tag = "alpha=" + num(alpha) + " beta=" + num(beta);
      if (wa != alpha || wb != beta) t.fail(tag + ": noise contents differ from (alpha, beta)");
      if (lp_compatible != expected) t.fail(tag + ": LP verdict differs from alpha+beta >= 1");
      if (lp.status == CompatibilityStatus::Undecided) t.fail(tag + ": LP undecided");
      if ((suff.status == CompatibilityStatus::CompatibleCertified) != expected) t.fail(tag + ": sufficient condition differs from alpha+beta >= 1");
      if (lp_compatible && !is_joint_of(*lp.joint, {a, b}, opt.tol)) t.fail(tag + ": LP witness marginals off");
    }
  }
}

void run_mub_sigma(const ReproduceOptions&, Table& t) {
  for (Index d = 3; d <= 6; ++d) {
    const auto sigma = mub_reverse_steering_state(d);
    const auto [a, b] = fourier_mub_pair(d);
    const double lmin = min_eigenvalue(sigma);
    const double tr = sigma.trace();
    double dev_a = 0.0, dev_b = 0.0;
    for (Index i = 0; i < d; ++i) {
      const double target = i == 0 ? 0.0 : 1.0 / double(d - 1);
      dev_a = std::max(dev_a, std::abs(std::real((a.effects()[i].op().matrix() * sigma.matrix()).trace()) - target));
      dev_b = std::max(dev_b, std::abs(std::real((b.effects()[i].op().matrix() * sigma.matrix()).trace()) - target));
    }
    const bool ok = lmin >= -1e-10 && std::abs(tr - 1.0) <= 1e-10 && dev_a <= 1e-10 && dev_b <= 1e-10;
    t.add({std::to_string(d), num(lmin), num(tr), num(dev_a), num(dev_b), yes_no(ok)},
          {{"d", d}, {"min_eigenvalue", lmin}, {"trace", tr}, {"max_dev_a", dev_a}, {"max_dev_b", dev_b}, {"pass", ok}});
    if (!ok) t.fail("d=" + std::to_string(d) + ": sigma conditions violated");
  }
}

void run_triple_witness(const ReproduceOptions& opt, Table& t) {
  auto row = [&](const std::string& name, const Basis& b1, const Basis& b2, const Basis& b3, CompatibilityStatus want) {
    const auto w = reverse_triple_witness(b1, b2, b3);
    Index lo = 3;
    for (Index r : w.ranks) lo = std::min(lo, r);
    t.add({name, std::to_string(lo), std::string(to_string(w.status)), std::string(to_string(want))},
          {{"case", name}, {"min_rank", lo}, {"ranks", w.ranks}, {"status", std::string(to_string(w.status))}});
    if (w.status != want) t.fail(name + ": expected " + std::string(to_string(want)));
  };
  const Basis b1 = Basis::haar_random(3, opt.seed);
  const Basis b2 = Basis::haar_random(3, opt.seed + 1);
  const Basis b3 = Basis::haar_random(3, opt.seed + 2);
  row("seeded", b1, b2, b3, CompatibilityStatus::IncompatibleCertified);
  // third basis shares its first vector with the first basis
  CMatrix shared = b3.vectors();
  shared.col(0) = b1.vector(0);
  const CMatrix q = shared.householderQr().householderQ();
  CMatrix fixed = q;
  fixed.col(0) = b1.vector(0);
  row("shared-vector", b1, b2, Basis(fixed, 1e-9), CompatibilityStatus::Undecided);
}

void run_ppovm_gap(const ReproduceOptions& opt, Table& t) {
  for (Index d : {2, 3}) {
    RVector probs = RVector::LinSpaced(d, 1.0, double(d));
    probs /= probs.sum();
    const PPOVM a = product_trivial_ppovm(Basis::haar_random(d, opt.seed + static_cast<std::uint64_t>(d)), probs, d);
    const double lower = ppovm_noise_lower_bound(a).t;
    const auto exact = noise_content_exact_trivial_ppovm(a.observable());
    const double best = best_noise_decomposition(a.observable()).t;
    const bool ok = std::abs(lower) <= opt.tol && exact && *exact == 1.0 && best == 1.0;
    t.add({std::to_string(d), std::to_string(d), num(lower), exact ? num(*exact) : "", yes_no(ok)},
          {{"dimA", d}, {"dimB", d}, {"lower_bound", lower}, {"exact_trivial", exact ? json(*exact) : json(nullptr)}, {"pass", ok}});
    if (!ok) t.fail("d=" + std::to_string(d) + ": expected lower bound 0 and exact value 1");
  }
}

void run_doubly_reverse(const ReproduceOptions& opt, Table& t) {
  for (Index d : {2, 3}) {
    const Observable a = random_povm(d, 2, opt.seed + static_cast<std::uint64_t>(d));
    const Observable arr = doubly_reverse(a);
    bool exact = true;
    for (std::size_t x = 0; x < a.effects().size(); ++x) exact = exact && arr.effects()[x].op().matrix() == a.effects()[x].op().matrix();
    t.add({"bit-exact", std::to_string(d), "2", "", "", "", "", yes_no(exact)},
          {{"case", "bit-exact"}, {"d", d}, {"N", 2}, {"pass", exact}});
    if (!exact) t.fail("N=2 d=" + std::to_string(d) + ": doubly reversed observable differs");
  }
  for (Index n = 3; n <= 5; ++n) {
    const RMatrix rr = compose(reverse_channel(n), reverse_channel(n)).matrix();
    const double lambda = (1.0 - rr(0, 0)) * double(n) / double(n - 1);
    const double formula = doubly_reverse_lambda(n);
    const Index mmax = (n - 1) * (n - 1);
    const auto bases = seeded_unitaries(n, mmax + 1, opt.seed + static_cast<std::uint64_t>(100 + n));
    std::vector<Observable> obs;
    for (Index m = 1; m <= mmax + 1; ++m) {
      obs.push_back(doubly_reverse(sharp_povm(Basis(bases[static_cast<std::size_t>(m - 1)]))));
      if (m < 2) continue;
      const auto rep = eigen_condition_report(obs);
      const bool expected = m <= mmax;
      bool witness_ok = true;
      if (rep.certified && std::pow(double(n), double(m)) <= 5000.0) {
        const auto v = sufficient_compatible(obs);
        witness_ok = v.joint && is_joint_of(*v.joint, obs, opt.tol);
      }
      const bool ok = rep.certified == expected && std::abs(lambda - formula) <= 1e-12 && witness_ok;
      t.add({"certify", std::to_string(n), std::to_string(n), std::to_string(m), num(lambda), num(rep.sum), yes_no(rep.certified), yes_no(ok)},
            {{"case", "certify"}, {"d", n}, {"N", n}, {"m", m}, {"lambda", lambda}, {"lambda_formula", formula}, {"sum", rep.sum},
             {"certified", rep.certified}, {"expected", expected}, {"pass", ok}});
      if (!ok) t.fail("N=" + std::to_string(n) + " m=" + std::to_string(m) + ": certification or lambda mismatch");
    }
  }
}

struct TargetInfo {
  std::function<void(const ReproduceOptions&, Table&)> run;
  std::string header;
  std::string columns;
};

const std::map<std::string, TargetInfo>& registry() {
  static const std::map<std::string, TargetInfo> r = {
      {"reversed-threshold",
       {run_reversed_threshold, "d,m,N,noise_content,sum,threshold,certified,expected,marginal_error",
        "d: dimension; m: number of reversed POVMs; N: outcomes; noise_content: w of each reversed POVM; sum: sum of w; threshold: m-1; "
        "certified: sufficient condition fired (n/a when no regular POVM exists); expected: N >= (d-1)m+1; marginal_error: joint witness deviation"}},
      {"squit",
       {run_squit, "alpha,beta,w_a,w_b,sufficient,lp,expected_compatible",
        "alpha, beta: noise parameters; w_a, w_b: noise contents; sufficient: noise-content verdict; lp: exact LP verdict; "
        "expected_compatible: alpha+beta >= 1"}},
      {"mub-sigma",
       {run_mub_sigma, "d,min_eigenvalue,trace,max_dev_a,max_dev_b,pass",
        "d: dimension; min_eigenvalue, trace: of sigma; max_dev_a, max_dev_b: largest deviation of tr[A_i sigma], tr[B_j sigma] "
        "from (1-delta_0)/(d-1)"}},
      {"triple-witness",
       {run_triple_witness, "case,min_rank,status,expected",
        "case: basis triple; min_rank: smallest rank over the 27 stacks; status: witness verdict; expected: required verdict"}},
      {"ppovm-gap",
       {run_ppovm_gap, "dimA,dimB,lower_bound,exact_trivial,pass",
        "dimA, dimB: channel dimensions; lower_bound: minimal-eigenvalue bound; exact_trivial: value from trivial-PPOVM detection"}},
      {"doubly-reverse",
       {run_doubly_reverse, "case,d,N,m,lambda,sum,certified,pass",
        "case: bit-exact (N=2) or certify; d: dimension; N: outcomes; m: number of observables; lambda: measured trivial weight; "
        "sum: sum of noise contents; certified: eigenvalue condition; pass: row check (certified iff m <= (N-1)^2)"}},
  };
  return r;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParameter, "cannot write " + p.string());
  out << text;
}

}  // namespace

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> names = {"reversed-threshold", "squit", "mub-sigma", "triple-witness", "ppovm-gap", "doubly-reverse"};
  return names;
}

std::string reproduce_columns(const std::string& target) {
  const auto it = registry().find(target);
  if (it == registry().end()) throw Error(ErrorCode::InvalidParameter, "unknown target " + target);
  return it->second.columns;
}

ReproduceResult reproduce(const std::string& target, const ReproduceOptions& options) {
  const auto it = registry().find(target);
  if (it == registry().end()) throw Error(ErrorCode::InvalidParameter, "unknown target " + target);
  ReproduceResult r;
  r.target = target;
  r.csv_header = it->second.header;
  json rows = json::array();
  Table table{r, rows};
  it->second.run(options, table);
  r.pass = r.failures.empty();

  if (options.write_files) {
    std::filesystem::create_directories(options.out_dir);
    const auto csv = options.out_dir / (target + ".csv");
    const auto js = options.out_dir / (target + ".json");
    const auto manifest = options.out_dir / "manifest.json";
    std::string text = r.csv_header + "\n";
    for (const auto& row : r.csv_rows) text += row + "\n";
    write_text(csv, text);
    write_text(js, json{{"target", target}, {"pass", r.pass}, {"failures", r.failures}, {"rows", rows}}.dump(2) + "\n");
    char seed_hex[32];
    std::snprintf(seed_hex, sizeof seed_hex, "0x%llX", static_cast<unsigned long long>(options.seed));
    const json m = {{"command", "reproduce " + target},
                    {"seed", seed_hex},
                    {"tolerances", {{"tol", options.tol}, {"normalization", kNormalizationTol}, {"hermitian", kHermitianTol}}},
                    {"version", kArtifactVersion},
                    {"outputs", {csv.filename().string(), js.filename().string()}},
                    {"pass", r.pass}};
    write_text(manifest, m.dump(2) + "\n");
    r.outputs = {csv, js, manifest};
  }
  return r;
}

}  // namespace gptnoise
