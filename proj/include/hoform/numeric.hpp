#pragma once

// Analytic continuation of q-expansions over Gamma_0(p), integrals along
// paths and to cusps, modular symbols and period polynomials.

#include <functional>
#include <string>
#include <vector>

#include "hoform/group.hpp"
#include "hoform/qseries.hpp"

namespace hoform {

struct NumericOptions {
  int qn = 200;       // coefficients used
  int degree = 64;    // Gauss-Legendre nodes per panel
  double tol = 1e-8;  // target absolute error
  int jobs = 0;       // OpenMP threads, 0 = runtime default
};

/// Coset representative of Gamma_0(p) in SL_2(Z): identity or S T^m.
struct Coset {
  bool identity = true;
  std::int64_t m = 0;
};

Coset coset_of(const Mat& g, std::int64_t level);

/// z = g u with u in the standard fundamental domain of SL_2(Z).
std::pair<Mat, cplx> reduce_to_fundamental(cplx z);
/// gamma z0 = g u with u in the fundamental domain, working from the exact matrix.
std::pair<Mat, cplx> reduce_orbit(const Mat& gamma, cplx z0);

cplx mobius(const Mat& g, cplx z);
cplx automorphy(const Mat& g, cplx z);  // c z + d

/// (P|_{2-k} g)(w) = P(g w) (c w + d)^{k-2}.
Poly slash_poly(const Poly& P, const Mat& g, int k);

/// A cusp form on Gamma_0(p), p prime, that is an eigenform of the Fricke
/// involution; the sign is measured at load.
class CuspForm {
 public:
  CuspForm(QSeries f, int level);

  const QSeries& series() const { return f_; }
  int weight() const { return f_.weight; }
  int level() const { return level_; }
  int fricke() const { return fricke_; }

  /// (f|_k h)(u) for a coset representative h.
  Estimate slash_eval(const Coset& h, cplx u) const;
  /// f(z) anywhere in the upper half-plane.
  Estimate eval(cplx z) const;
  std::vector<Estimate> eval_batch(const std::vector<cplx>& zs, int jobs = 0) const;
  std::vector<Estimate> eval_batch_serial(const std::vector<cplx>& zs) const;

  /// int_u^{i infinity} (f|h)(w) Q(w) dw.
  Estimate coset_moment(const Coset& h, cplx u, const Poly& Q) const;
  /// int_{a/c}^{i infinity} f(v) P(v) dv.
  Estimate cusp_to_infinity(std::int64_t a, std::int64_t c, const Poly& P) const;
  /// int_{g u}^{i infinity} f(v) P(v) dv.
  Estimate moment_at(const Mat& g, cplx u, const Poly& P) const;
  /// int_p^{i infinity} f(v) P(v) dv.
  Estimate moment_to_infinity(cplx p, const Poly& P) const;

 private:
  QSeries f_;
  int level_;
  int fricke_ = 1;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_rule(int degree);

using Evaluator = std::function<std::vector<Estimate>(const std::vector<cplx>&)>;

/// int_{z1}^{z2} h(z) P(z) dz for h given by a batch evaluator, refining
/// panels breadth-first until each meets its share of opt.tol.
Estimate adaptive_quadrature(const Evaluator& evaluate, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt,
                             int& panels);

/// int_{z1}^{z2} f(z) P(z) dz along the straight segment by adaptive
/// Gauss-Legendre quadrature, checked against the antiderivative route.
struct LineIntegral {
  Estimate quadrature;
  Estimate antiderivative;
  int panels = 0;
};
LineIntegral integrate_line(const CuspForm& f, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt);
/// Same, evaluating nodes one at a time.
LineIntegral integrate_line_serial(const CuspForm& f, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt);
/// For a bare q-series, valid where the expansion converges well on the segment.
LineIntegral integrate_line(const QSeries& f, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt);

struct CuspIntegral {
  Estimate value;
  Estimate alternate;  // independent route, same quantity
  std::string route;
};
/// int_z^{cusp} f for cusp "inf" or "0".
CuspIntegral integrate_to_cusp(const CuspForm& f, cplx z, const std::string& cusp);
/// int_z^{i infinity} of a bare q-series.
CuspIntegral integrate_to_cusp(const QSeries& f, cplx z);

/// <f, gamma> = int_{z0}^{gamma z0} f for weight 2.
Estimate modular_symbol(const CuspForm& f, const Mat& gamma, const GroupData& G, cplx z0 = cplx(0, 1));

/// psi(gamma)(X) = int_i^{gamma^{-1} i} f(z) (z - X)^{k-2} dz.
struct PeriodPolynomial {
  std::vector<Estimate> coeffs;  // coefficient of X^j
};
PeriodPolynomial period_polynomial(const CuspForm& f, const Mat& gamma, const GroupData& G);
/// (P|delta)(X) = P(delta X)(cX + d)^{k-2} applied to a period polynomial.
PeriodPolynomial slash_period(const PeriodPolynomial& P, const Mat& delta, int k);

/// Loads the fixture's weight-k forms truncated to opt.qn coefficients.
std::vector<CuspForm> load_forms(const GroupData& G, int k, const NumericOptions& opt);

/// Raises precision-error when the bound exceeds the tolerance.
void require_precision(const Estimate& e, double tol, const std::string& what);

}  // namespace hoform
