#pragma once

#include <string>
#include <vector>

#include "hoform/checks.hpp"
#include "hoform/constructor.hpp"
#include "json.hpp"

namespace cli {

using nlohmann::json;

struct LemmaRun {
  int t = 0, k = 0;
  std::vector<hoform::LemmaCheck> checks;
  bool passed() const;
};

struct SymbolicRun {
  hoform::GroupProfile profile;
  std::string fault = "none";
  std::vector<hoform::LevelReport> levels;
  std::vector<LemmaRun> lemmas;
  bool passed() const;
};

struct NumericRun {
  std::string group_label;
  std::string fixture;
  hoform::NumericOptions options;
  int max_word_length = 0;
  std::vector<int> weights;
  std::vector<hoform::SuiteResult> suites;
  bool passed() const;
};

json to_json(const SymbolicRun& run);
json to_json(const NumericRun& run);
json profile_json(const hoform::GroupProfile& p);
hoform::GroupProfile profile_from_json(const json& j);

/// Text views of saved reports; with full set every entry is listed,
/// otherwise only failures.
std::string symbolic_text(const json& report, bool full);
std::string numeric_text(const json& report, bool full);

json dimension_table(const hoform::GroupProfile& profile, int t_max, const std::vector<int>& weights);
/// Consolidates whichever reports exist (null when absent).
json consolidated(const json& symbolic, const json& numeric, const json& dimensions);
std::string consolidated_text(const json& report);

}  // namespace cli
