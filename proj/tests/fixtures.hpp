#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "hoform/group.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(HOFORM_FIXTURE_DIR) / name; }

inline const hoform::GroupData& level11() {
  static const hoform::GroupData G = hoform::load_group(fixture("level11.json"));
  return G;
}

inline const hoform::GroupData& level37() {
  static const hoform::GroupData G = hoform::load_group(fixture("level37.json"));
  return G;
}

/// Writes text to a fresh file under the temp directory and returns its path.
inline std::filesystem::path scratch_file(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "hoform_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace testing
