#pragma once

// Integer 2x2 matrices and congruence-group fixture data.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hoform/words.hpp"

namespace hoform {

struct Mat {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  /// Inverse of a determinant-one matrix.
  Mat inv() const { return {d, -b, -c, a}; }
  bool operator==(const Mat&) const = default;
};

Mat operator*(const Mat& x, const Mat& y);
std::string to_string(const Mat& m);

inline const Mat S_mat{0, -1, 1, 0};
inline const Mat T_mat{1, 1, 0, 1};

struct Cusp {
  std::string label;
  std::int64_t p = 1, q = 0;  // representative p/q, q = 0 for infinity
  std::int64_t width = 1;
  Mat scaling;
  Mat parabolic;
};

struct GroupData {
  std::string label;
  int level = 1;
  int genus = 0;
  std::vector<Cusp> cusps;
  std::vector<Mat> generators;
  std::map<int, std::vector<std::filesystem::path>> cusp_form_files;
  std::map<int, int> dim_cusp_forms;

  const Cusp& cusp(const std::string& label) const;
  bool contains(const Mat& m) const;  // membership in Gamma_0(level)
  GroupProfile profile() const;
};

/// Parses a hoform-group/1 file and checks its invariants; form file paths are
/// resolved against the file's directory.
GroupData load_group(const std::filesystem::path& path);

/// Convergents p_j/q_j of a/c, j = 0..n, with c > 0 after normalisation.
std::vector<std::pair<std::int64_t, std::int64_t>> convergents(std::int64_t a, std::int64_t c);

}  // namespace hoform
