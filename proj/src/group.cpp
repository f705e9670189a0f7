#include "hoform/group.hpp"

#include <fstream>
#include <numeric>

#include "hoform/error.hpp"
#include "json.hpp"

namespace hoform {

Mat operator*(const Mat& x, const Mat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string to_string(const Mat& m) {
  return "[" + std::to_string(m.a) + "," + std::to_string(m.b) + "," + std::to_string(m.c) + "," +
         std::to_string(m.d) + "]";
}

const Cusp& GroupData::cusp(const std::string& name) const {
  for (const auto& c : cusps) {
    if (c.label == name) return c;
  }
  throw Error(ErrorKind::invalid_arguments, "unknown cusp '" + name + "' in " + label);
}

bool GroupData::contains(const Mat& m) const { return m.det() == 1 && m.c % level == 0; }

GroupProfile GroupData::profile() const {
  std::map<int, int> dims;
  for (const auto& [k, d] : dim_cusp_forms) {
    if (k >= 4) dims[k] = d;
  }
  return GroupProfile(genus, static_cast<int>(cusps.size()), dims);
}

namespace {

Mat read_mat(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::corrupt_fixture, "matrix must be 4 integers");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(), j[3].get<std::int64_t>()};
}

}  // namespace

GroupData load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open group file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, path.string() + ": " + e.what());
  }
  GroupData g;
  try {
    if (j.at("format") != "hoform-group/1") throw Error(ErrorKind::parse_error, "unknown group format");
    g.label = j.at("label").get<std::string>();
    g.level = j.at("level").get<int>();
    g.genus = j.at("genus").get<int>();
    for (const auto& c : j.at("cusps")) {
      Cusp cu;
      cu.label = c.at("label").get<std::string>();
      cu.p = c.at("representative")[0].get<std::int64_t>();
      cu.q = c.at("representative")[1].get<std::int64_t>();
      cu.width = c.at("width").get<std::int64_t>();
      cu.scaling = read_mat(c.at("scaling"));
      cu.parabolic = read_mat(c.at("parabolic"));
      g.cusps.push_back(cu);
    }
    for (const auto& m : j.at("generators")) g.generators.push_back(read_mat(m));
    for (const auto& [k, files] : j.at("cusp_forms").items()) {
      for (const auto& f : files) g.cusp_form_files[std::stoi(k)].push_back(path.parent_path() / f.get<std::string>());
    }
    for (const auto& [k, d] : j.at("dim_cusp_forms").items()) g.dim_cusp_forms[std::stoi(k)] = d.get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, path.string() + ": " + e.what());
  }

  if (g.level < 1 || g.cusps.size() < 2) throw Error(ErrorKind::corrupt_fixture, "need a level and >= 2 cusps");
  for (const auto& m : g.generators) {
    if (!g.contains(m)) throw Error(ErrorKind::corrupt_fixture, "generator " + to_string(m) + " not in the group");
  }
  for (const auto& c : g.cusps) {
    if (c.scaling.det() != 1 || !g.contains(c.parabolic)) {
      throw Error(ErrorKind::corrupt_fixture, "bad scaling or parabolic at cusp " + c.label);
    }
    if (c.scaling.inv() * c.parabolic * c.scaling != Mat{1, c.width, 0, 1}) {
      throw Error(ErrorKind::corrupt_fixture, "scaling does not conjugate the parabolic to a translation at cusp " +
                                                  c.label);
    }
    if (c.scaling.a * c.q != c.scaling.c * c.p) {
      throw Error(ErrorKind::corrupt_fixture, "scaling matrix does not send infinity to cusp " + c.label);
    }
  }
  if (g.dim_cusp_forms.contains(2) && g.dim_cusp_forms.at(2) != g.genus) {
    throw Error(ErrorKind::corrupt_fixture, "dim S_2 differs from the genus");
  }
  return g;
}

std::vector<std::pair<std::int64_t, std::int64_t>> convergents(std::int64_t a, std::int64_t c) {
  if (c == 0) throw Error(ErrorKind::domain_error, "infinity has no convergents");
  if (c < 0) {
    a = -a;
    c = -c;
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // p_{-2}/q_{-2} and p_{-1}/q_{-1}
  std::int64_t num = a, den = c;
  while (den != 0) {
    std::int64_t quot = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --quot;  // floor
    std::int64_t rem = num - quot * den;
    std::int64_t p = quot * p1 + p0, q = quot * q1 + q0;
    out.emplace_back(p, q);
    p0 = p1;
    q0 = q1;
    p1 = p;
    q1 = q;
    num = den;
    den = rem;
  }
  return out;
}

}  // namespace hoform
