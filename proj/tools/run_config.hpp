#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hoform/numeric.hpp"

namespace cli {

/// Bad flags, bad configuration or a missing fixture: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string group = "level11.json";
  bool group_given = false;  // symbolic commands use the group's profile only when asked
  std::vector<int> weights{2, 4};
  int t_max = 4;
  int genus = 1;
  int cusps = 2;
  double tolerance = 1e-8;
  int qseries_N = 200;
  int quadrature_degree = 64;
  int parallelism = 0;
  std::filesystem::path report_dir = "hoform-reports";

  hoform::NumericOptions numeric() const;
  void validate() const;
};

/// Reads the JSON keys group, weights, t_max, g, m, tol, qn, degree, jobs, out.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// A fixture name resolves against the working directory, then against
/// $HOFORM_FIXTURES, then against the fixtures shipped with the sources.
std::filesystem::path resolve_fixture(const std::string& name);

}  // namespace cli
