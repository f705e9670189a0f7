#pragma once

// Truncated q-expansions of cusp forms at infinity with explicit tail bounds.

#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace hoform {

using cplx = std::complex<double>;
using Poly = std::vector<cplx>;  // monomial coefficients p_0..p_d

/// A value with an absolute error bound.
struct Estimate {
  cplx value;
  double error = 0;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
  Estimate& operator-=(const Estimate& o) {
    value -= o.value;
    error += o.error;
    return *this;
  }
};

inline Estimate operator+(Estimate a, const Estimate& b) { return a += b; }
inline Estimate operator-(Estimate a, const Estimate& b) { return a -= b; }
inline Estimate operator*(cplx s, const Estimate& a) { return {s * a.value, std::abs(s) * a.error}; }
inline Estimate operator*(const Estimate& a, const Estimate& b) {
  return {a.value * b.value, std::abs(a.value) * b.error + std::abs(b.value) * a.error + a.error * b.error};
}
inline Estimate conj(const Estimate& a) { return {std::conj(a.value), a.error}; }

struct QSeries {
  std::string label;
  int weight = 2;
  int level = 1;
  std::vector<cplx> coeffs;  // coeffs[n-1] = a_n
  double tail_C = 1;         // |a_n| <= tail_C * n^tail_e
  double tail_e = 1;
  cplx constant_term = 0;  // nonzero for Eisenstein-type input

  bool cuspidal() const { return constant_term == cplx(0); }
  int N() const { return static_cast<int>(coeffs.size()); }
  QSeries truncated(int n) const;
};

QSeries load_qseries(const std::filesystem::path& path);

/// sum_{n>N} C n^e exp(-2 pi n y); infinite when the tail does not visibly contract.
double tail_bound(double C, double e, int N, double y);

/// f(z) for Im z > 0.
Estimate eval_series(const QSeries& f, cplx z);
std::vector<Estimate> eval_series_batch(const QSeries& f, std::span<const cplx> zs, int jobs = 0);
std::vector<Estimate> eval_series_batch_serial(const QSeries& f, std::span<const cplx> zs);

/// int_u^{i infinity} f(v) P(v) dv, termwise in closed form.
Estimate series_moment(const QSeries& f, cplx u, const Poly& poly);

cplx poly_eval(const Poly& p, cplx x);

}  // namespace hoform
