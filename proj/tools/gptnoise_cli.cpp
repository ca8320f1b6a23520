// gptnoise: noise content and compatibility of observables from JSON files,
// plus reproduction of the reference tables.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gptnoise/json_io.hpp"
#include "gptnoise/reproduce.hpp"

namespace {

using namespace gptnoise;
using io::json;

enum Exit { kOk = 0, kUndecided = 1, kUsage = 2, kInvalid = 3, kIncompatible = 4 };

std::string target_help() {
  std::ostringstream out;
  out << "Targets and CSV columns:\n";
  for (const auto& t : reproduce_targets()) out << "  " << t << "\n      " << reproduce_columns(t) << "\n";
  out << "Each run writes <target>.csv, <target>.json and manifest.json to --out.";
  return out.str();
}

int cmd_reproduce(const std::string& target, const std::string& out_dir, std::uint64_t seed, double tol) {
  const auto& names = reproduce_targets();
  if (std::find(names.begin(), names.end(), target) == names.end()) {
    std::cerr << "unknown target '" << target << "'; known targets:";
    for (const auto& n : names) std::cerr << " " << n;
    std::cerr << "\n";
    return kUsage;
  }
  ReproduceOptions opt;
  opt.out_dir = out_dir;
  opt.seed = seed;
  opt.tol = tol;
  const auto r = reproduce(target, opt);
  std::cout << r.csv_header << "\n";
  for (const auto& row : r.csv_rows) std::cout << row << "\n";
  for (const auto& f : r.failures) std::cerr << "FAIL " << f << "\n";
  std::cerr << target << ": " << (r.pass ? "pass" : "fail") << "\n";
  return r.pass ? kOk : 1;
}

int cmd_noise(const std::string& path, double tol) {
  Observable a;
  try {
    a = io::any_observable_from_json(io::read_file(path));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? kUsage : kInvalid;
  }
  const auto report = validate_observable(a, tol);
  if (!report.ok()) {
    std::cerr << "invalid observable:\n" << report.summary() << "\n";
    return kInvalid;
  }
  const auto d = best_noise_decomposition(a);
  json out = io::to_json(d);
  if (a.space().kind() == SpaceKind::Process) out["lower_bound"] = noise_content(a).t;
  std::cout << out.dump(2) << "\n";
  return kOk;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) w.push_back(std::stod(item));
  return w;
}

int cmd_compat(const std::vector<std::string>& paths, bool lp, const std::string& weights, double tol, std::uint64_t seed,
               const std::string& out_dir) {
  std::vector<Observable> obs;
  try {
    for (const auto& p : paths) obs.push_back(io::any_observable_from_json(io::read_file(p)));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? kUsage : kInvalid;
  }
  for (std::size_t j = 0; j < obs.size(); ++j) {
    if (!(obs[j].space() == obs.front().space())) {
      std::cerr << "space mismatch: " << paths[j] << " lives on a different state space than " << paths.front() << "\n";
      return kInvalid;
    }
    const auto report = validate_observable(obs[j], tol);
    if (!report.ok()) {
      std::cerr << "invalid observable " << paths[j] << ":\n" << report.summary() << "\n";
      return kInvalid;
    }
  }
  if (lp && obs.front().space().kind() != SpaceKind::Polytope) {
    std::cerr << "space mismatch: --lp needs polytope observables\n";
    return kInvalid;
  }

  CompatibilityVerdict v;
  try {
    if (lp) {
      v = lp_compatible_polytope(obs, tol);
    } else {
      std::optional<RVector> w;
      if (!weights.empty()) {
        const auto parsed = parse_weights(weights);
        w = Eigen::Map<const RVector>(parsed.data(), static_cast<Index>(parsed.size()));
      }
      v = sufficient_compatible(obs, w);
    }
  } catch (const std::invalid_argument&) {
    std::cerr << "--weights must be a comma-separated list of numbers\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::SpaceMismatch ? kInvalid : kUsage;
  }
  if (v.joint && !is_joint_of(*v.joint, obs, tol)) {
    std::cerr << "joint witness failed re-validation\n";
    return kInvalid;
  }

  json out = io::to_json(v);
  out["seed"] = seed;
  out["tol"] = tol;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / "verdict.json") << out.dump(2) << "\n";
    if (v.joint) std::ofstream(std::filesystem::path(out_dir) / "joint.json") << io::to_json(*v.joint).dump(2) << "\n";
  }
  std::cout << out.dump(2) << "\n";
  switch (v.status) {
    case CompatibilityStatus::CompatibleCertified: return kOk;
    case CompatibilityStatus::IncompatibleCertified: return kIncompatible;
    case CompatibilityStatus::Undecided: return kUndecided;
  }
  return kUndecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise content and compatibility of observables in finite-dimensional probabilistic theories"};
  app.require_subcommand(1);

  double tol = 1e-9;
  std::uint64_t seed = kTripleWitnessSeed;
  std::string out_dir;

  auto* rep = app.add_subcommand("reproduce", "Regenerate and check a reference table");
  std::string target;
  rep->add_option("target", target, "Target name")->required();
  rep->add_option("--out", out_dir, "Output directory")->default_val("results");
  rep->add_option("--seed", seed, "Generator seed")->default_val(seed);
  rep->add_option("--tol", tol, "Check tolerance")->default_val(tol);
  rep->footer(target_help());

  auto* noise = app.add_subcommand("noise", "Noise content decomposition of an observable (JSON)");
  std::string noise_file;
  noise->add_option("file", noise_file, "Observable or PPOVM JSON file")->required();
  noise->add_option("--tol", tol, "Validation tolerance")->default_val(tol);

  auto* compat = app.add_subcommand("compat", "Compatibility verdict for two or more observables");
  std::vector<std::string> files;
  bool lp = false;
  std::string weights;
  compat->add_option("files", files, "Observable JSON files")->required()->expected(2, -1);
  compat->add_flag("--lp", lp, "Decide exactly with the polytope LP");
  compat->add_option("--weights", weights, "Mixing weights w1,w2,...");
  compat->add_option("--tol", tol, "Tolerance")->default_val(tol);
  compat->add_option("--seed", seed, "Seed recorded in the output")->default_val(seed);
  compat->add_option("--out", out_dir, "Directory for verdict.json and joint.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*rep) return cmd_reproduce(target, out_dir, seed, tol);
    if (*noise) return cmd_noise(noise_file, tol);
    if (*compat) return cmd_compat(files, lp, weights, tol, seed, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
