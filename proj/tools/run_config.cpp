#include "run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "json.hpp"

namespace cli {

hoform::NumericOptions RunConfig::numeric() const {
  hoform::NumericOptions opt;
  opt.qn = qseries_N;
  opt.degree = quadrature_degree;
  opt.tol = tolerance;
  opt.jobs = parallelism;
  return opt;
}

void RunConfig::validate() const {
  if (t_max < 1 || t_max > 6) throw UsageError("t_max must lie in 1..6");
  if (!(tolerance > 0)) throw UsageError("tolerance must be positive");
  if (qseries_N < 50) throw UsageError("at least 50 q-series coefficients are required");
  if (quadrature_degree < 2) throw UsageError("quadrature degree must be at least 2");
  if (parallelism < 0) throw UsageError("parallelism must be >= 0");
  if (genus < 1) throw UsageError("genus must be >= 1");
  if (cusps < 2) throw UsageError("at least two cusps are required");
  if (weights.empty()) throw UsageError("no weights given");
  for (int k : weights) {
    if (k < 2 || k % 2) throw UsageError("weights must be even and >= 2");
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path.string() + " is not a JSON object");
  static const std::set<std::string> known{"group", "weights", "t_max", "g", "m", "tol", "qn", "degree", "jobs", "out"};
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.count(key)) throw UsageError("config " + path.string() + ": unknown key '" + key + "'");
      if (key == "group") {
        config.group = value.get<std::string>();
        config.group_given = true;
      }
      if (key == "weights") config.weights = value.get<std::vector<int>>();
      if (key == "t_max") config.t_max = value.get<int>();
      if (key == "g") config.genus = value.get<int>();
      if (key == "m") config.cusps = value.get<int>();
      if (key == "tol") config.tolerance = value.get<double>();
      if (key == "qn") config.qseries_N = value.get<int>();
      if (key == "degree") config.quadrature_degree = value.get<int>();
      if (key == "jobs") config.parallelism = value.get<int>();
      if (key == "out") config.report_dir = value.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
}

std::filesystem::path resolve_fixture(const std::string& name) {
  namespace fs = std::filesystem;
  std::vector<fs::path> candidates{fs::path(name)};
  if (const char* root = std::getenv("HOFORM_FIXTURES")) candidates.push_back(fs::path(root) / name);
#ifdef HOFORM_DEFAULT_FIXTURES
  candidates.push_back(fs::path(HOFORM_DEFAULT_FIXTURES) / name);
#endif
  for (const auto& p : candidates) {
    if (fs::is_regular_file(p)) return p;
  }
  throw UsageError("fixture '" + name + "' not found (set HOFORM_FIXTURES to the fixture directory)");
}

}  // namespace cli
