#pragma once

// Reproduction targets: each regenerates one table of reference results,
// checks it, and writes <target>.csv, <target>.json and manifest.json.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gptnoise/quantum.hpp"

namespace gptnoise {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct ReproduceOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = kTripleWitnessSeed;
  double tol = 1e-9;
  bool write_files = true;
};

struct ReproduceResult {
  std::string target;
  bool pass = false;
  std::string csv_header;
  std::vector<std::string> csv_rows;
  std::vector<std::string> failures;
  std::vector<std::filesystem::path> outputs;
};

const std::vector<std::string>& reproduce_targets();

/// Column description of each target's CSV, for --help.
std::string reproduce_columns(const std::string& target);

/// Throws InvalidParameter for an unknown target.
ReproduceResult reproduce(const std::string& target, const ReproduceOptions& options = {});

}  // namespace gptnoise
