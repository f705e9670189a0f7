#include "hoform/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <omp.h>

#include "hoform/error.hpp"

namespace hoform {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

void require_upper(cplx z) {
  if (!(z.imag() > 0)) {
    std::ostringstream msg;
    msg << "point " << z << " is not in the upper half-plane";
    throw Error(ErrorKind::domain_error, msg.str());
  }
}

}  // namespace

QSeries QSeries::truncated(int n) const {
  if (n > N()) {
    throw Error(ErrorKind::invalid_arguments,
                label + " has " + std::to_string(N()) + " coefficients, " + std::to_string(n) + " requested");
  }
  QSeries out = *this;
  out.coeffs.resize(n);
  return out;
}

QSeries load_qseries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open q-series file " + path.string());
  QSeries f;
  int declared = -1;
  bool format_ok = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1), value = line.substr(colon + 1);
      key.erase(0, key.find_first_not_of(' '));
      value.erase(0, value.find_first_not_of(' '));
      std::istringstream v(value);
      if (key == "format") format_ok = value == "hoform-qseries/1";
      else if (key == "label") f.label = value;
      else if (key == "weight") v >> f.weight;
      else if (key == "level") v >> f.level;
      else if (key == "N") v >> declared;
      else if (key == "tail") v >> f.tail_C >> f.tail_e;
      else if (key == "constant") {
        double c0 = 0;
        v >> c0;
        f.constant_term = c0;
      }
      continue;
    }
    try {
      std::size_t used = 0;
      long long a = std::stoll(line, &used);
      if (line.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(line);
      f.coeffs.emplace_back(static_cast<double>(a), 0.0);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse_error, path.string() + ": bad coefficient line '" + line + "'");
    }
  }
  if (!format_ok) throw Error(ErrorKind::parse_error, path.string() + ": missing or unknown format tag");
  if (declared != f.N()) throw Error(ErrorKind::corrupt_fixture, path.string() + ": coefficient count mismatch");
  if (f.N() < 50) throw Error(ErrorKind::corrupt_fixture, path.string() + ": fewer than 50 coefficients");
  for (int n = 1; n <= f.N(); ++n) {
    if (std::abs(f.coeffs[n - 1]) > f.tail_C * std::pow(n, f.tail_e) * (1 + 1e-12)) {
      throw Error(ErrorKind::corrupt_fixture, path.string() + ": a_" + std::to_string(n) + " exceeds the tail bound");
    }
  }
  return f;
}

double tail_bound(double C, double e, int N, double y) {
  const double r = std::exp(-two_pi * y);
  if (r >= 1) return std::numeric_limits<double>::infinity();
  // Sum terms until the ratio of consecutive bounds (decreasing in n, with
  // limit r) drops below the threshold, then close with a geometric series.
  const double threshold = std::max(0.9, 0.5 * (1 + r));
  double sum = 0;
  for (long n = N + 1; n < N + 10000000L; ++n) {
    const double term = C * std::exp(e * std::log(static_cast<double>(n)) + n * std::log(r));
    const double ratio = r * std::pow((n + 1.0) / n, e);
    if (ratio < threshold) return sum + term / (1 - ratio);
    sum += term;
  }
  return std::numeric_limits<double>::infinity();
}

Estimate eval_series(const QSeries& f, cplx z) {
  require_upper(z);
  const cplx q = std::exp(cplx(0, two_pi) * z);
  cplx power = q, sum = f.constant_term;
  double magnitude = std::abs(f.constant_term);
  for (const auto& a : f.coeffs) {
    sum += a * power;
    magnitude += std::abs(a) * std::abs(power);
    power *= q;
  }
  const double rounding = 4 * std::numeric_limits<double>::epsilon() * (f.N() + 4) * magnitude;
  return {sum, tail_bound(f.tail_C, f.tail_e, f.N(), z.imag()) + rounding};
}

std::vector<Estimate> eval_series_batch_serial(const QSeries& f, std::span<const cplx> zs) {
  std::vector<Estimate> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(eval_series(f, z));
  return out;
}

std::vector<Estimate> eval_series_batch(const QSeries& f, std::span<const cplx> zs, int jobs) {
  std::vector<Estimate> out(zs.size());
  const long n = static_cast<long>(zs.size());
  bool bad = false;
#pragma omp parallel for schedule(static) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
  for (long i = 0; i < n; ++i) {
    if (!(zs[i].imag() > 0)) {
#pragma omp atomic write
      bad = true;
      continue;
    }
    out[i] = eval_series(f, zs[i]);
  }
  if (bad) throw Error(ErrorKind::domain_error, "batch contains a point outside the upper half-plane");
  return out;
}

cplx poly_eval(const Poly& p, cplx x) {
  cplx out = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) out = out * x + *it;
  return out;
}

Estimate series_moment(const QSeries& f, cplx u, const Poly& poly) {
  require_upper(u);
  if (!f.cuspidal()) throw Error(ErrorKind::divergent_integral, f.label + " has a constant term");
  const cplx q = std::exp(cplx(0, two_pi) * u);
  // Falling factorials j!/(j-l)! times u^{j-l}, reused for every n.
  const int d = static_cast<int>(poly.size()) - 1;
  std::vector<cplx> upow(d + 1, 1.0);
  for (int i = 1; i <= d; ++i) upow[i] = upow[i - 1] * u;
  std::vector<cplx> by_l(d + 1, 0.0);  // sum_j p_j (-1)^l j!/(j-l)! u^{j-l}
  std::vector<double> abs_l(d + 1, 0.0);
  double bound_poly = 0;
  for (int j = 0; j <= d; ++j) {
    double fall = 1;
    for (int l = 0; l <= j; ++l) {
      const double size = std::abs(poly[j]) * fall * std::pow(std::abs(u), j - l);
      by_l[l] += poly[j] * ((l % 2) ? -fall : fall) * upow[j - l];
      abs_l[l] += size;
      bound_poly += size / std::pow(two_pi, l + 1);
      fall *= (j - l);
    }
  }
  cplx power = q, sum = 0;
  double magnitude = 0;
  for (int n = 1; n <= f.N(); ++n) {
    const cplx alpha(0, two_pi * n);
    cplx inner = 0, alpha_pow = alpha;
    double inner_abs = 0;
    for (int l = 0; l <= d; ++l) {
      inner += by_l[l] / alpha_pow;
      inner_abs += abs_l[l] / std::abs(alpha_pow);
      alpha_pow *= alpha;
    }
    sum -= f.coeffs[n - 1] * power * inner;
    magnitude += std::abs(f.coeffs[n - 1]) * std::abs(power) * inner_abs;
    power *= q;
  }
  const double tail = bound_poly * tail_bound(f.tail_C, f.tail_e, f.N(), u.imag());
  // Relative error of each term grows at most linearly in n through the running power.
  const double rounding = 4 * std::numeric_limits<double>::epsilon() * (f.N() + d + 4) * magnitude;
  return {sum, tail + rounding};
}

}  // namespace hoform
