#include "hoform/numeric.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <omp.h>

#include "hoform/error.hpp"

namespace hoform {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, new_t = 1, r = n, new_r = mod(a, n);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorKind::domain_error, "no inverse modulo " + std::to_string(n));
  return mod(t, n);
}

Poly poly_mul(const Poly& x, const Poly& y) {
  if (x.empty() || y.empty()) return {};
  Poly out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

Poly poly_pow(const Poly& x, int e) {
  Poly out{1.0};
  for (int i = 0; i < e; ++i) out = poly_mul(out, x);
  return out;
}

/// Q(N x - m) as a polynomial in x.
Poly compose_affine(const Poly& Q, double scale, double shift) {
  Poly out{0.0};
  const Poly lin{cplx(shift), cplx(scale)};
  for (auto it = Q.rbegin(); it != Q.rend(); ++it) {
    out = poly_mul(out, lin);
    out[0] += *it;
  }
  return out;
}

std::string describe(cplx z) {
  std::ostringstream s;
  s << z;
  return s.str();
}

}  // namespace

Coset coset_of(const Mat& g, std::int64_t level) {
  if (mod(g.c, level) == 0) return {true, 0};
  return {false, mod(g.d * inverse_mod(g.c, level), level)};
}

cplx mobius(const Mat& g, cplx z) {
  return (static_cast<double>(g.a) * z + static_cast<double>(g.b)) /
         (static_cast<double>(g.c) * z + static_cast<double>(g.d));
}

cplx automorphy(const Mat& g, cplx z) { return static_cast<double>(g.c) * z + static_cast<double>(g.d); }

std::pair<Mat, cplx> reduce_orbit(const Mat& gamma, cplx z0) {
  if (!(z0.imag() > 0)) throw Error(ErrorKind::domain_error, "point " + describe(z0) + " is not in the upper half-plane");
  // The point is recomputed from the integer matrix at every step, so large
  // entries in gamma do not degrade the final u.
  Mat m = gamma;
  for (int iter = 0; iter < 10000; ++iter) {
    const auto n = static_cast<std::int64_t>(std::round(mobius(m, z0).real()));
    m = Mat{1, -n, 0, 1} * m;
    const cplx u = mobius(m, z0);
    if (std::norm(u) >= 1 - 1e-14) return {gamma * m.inv(), u};
    m = S_mat * m;
  }
  throw Error(ErrorKind::domain_error, "reduction of " + to_string(gamma) + " did not terminate");
}

std::pair<Mat, cplx> reduce_to_fundamental(cplx z) { return reduce_orbit(Mat{}, z); }

Poly slash_poly(const Poly& P, const Mat& g, int k) {
  if (static_cast<int>(P.size()) > k - 1) throw Error(ErrorKind::invalid_arguments, "polynomial degree exceeds k-2");
  const Poly num{cplx(static_cast<double>(g.b)), cplx(static_cast<double>(g.a))};
  const Poly den{cplx(static_cast<double>(g.d)), cplx(static_cast<double>(g.c))};
  Poly out(k - 1, 0.0);
  for (std::size_t j = 0; j < P.size(); ++j) {
    Poly term = poly_mul(poly_pow(num, static_cast<int>(j)), poly_pow(den, k - 2 - static_cast<int>(j)));
    for (std::size_t i = 0; i < term.size() && i < out.size(); ++i) out[i] += P[j] * term[i];
  }
  return out;
}

CuspForm::CuspForm(QSeries f, int level) : f_(std::move(f)), level_(level) {
  if (!is_prime(level)) throw Error(ErrorKind::unsupported, "numeric continuation needs a prime level");
  if (f_.level != level) throw Error(ErrorKind::corrupt_fixture, f_.label + " has a different level");
  // f |_k W_N = eps f; compare at sample points where f is not small.
  const double k = f_.weight;
  double best = 0;
  cplx eps = 0;
  for (double y : {1.2, 0.9, 1.5}) {
    const cplx z(0.05, y / std::sqrt(static_cast<double>(level)));
    const cplx fz = eval_series(f_, z).value;
    const cplx fw = eval_series(f_, -1.0 / (static_cast<double>(level) * z)).value;
    if (std::abs(fz) > best) {
      best = std::abs(fz);
      eps = std::pow(static_cast<double>(level), -k / 2) * std::pow(z, -k) * fw / fz;
    }
  }
  if (std::abs(eps - 1.0) < 1e-6) {
    fricke_ = 1;
  } else if (std::abs(eps + 1.0) < 1e-6) {
    fricke_ = -1;
  } else {
    throw Error(ErrorKind::corrupt_fixture, f_.label + " is not a Fricke eigenform (ratio " + describe(eps) + ")");
  }
}

Estimate CuspForm::slash_eval(const Coset& h, cplx u) const {
  if (h.identity) return eval_series(f_, u);
  const double N = level_;
  const cplx scale = static_cast<double>(fricke_) * std::pow(N, -f_.weight / 2.0);
  return scale * eval_series(f_, (u + static_cast<double>(h.m)) / N);
}

Estimate CuspForm::eval(cplx z) const {
  auto [g, u] = reduce_to_fundamental(z);
  const Coset h = coset_of(g, level_);
  const double reduced_y = h.identity ? u.imag() : u.imag() / level_;
  if (z.imag() >= reduced_y) return eval_series(f_, z);
  const cplx j = std::pow(automorphy(g, u), f_.weight);
  return j * slash_eval(h, u);
}

std::vector<Estimate> CuspForm::eval_batch_serial(const std::vector<cplx>& zs) const {
  std::vector<Estimate> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(eval(z));
  return out;
}

std::vector<Estimate> CuspForm::eval_batch(const std::vector<cplx>& zs, int jobs) const {
  std::vector<Estimate> out(zs.size());
  const long n = static_cast<long>(zs.size());
  std::string failure;
#pragma omp parallel for schedule(dynamic, 8) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = eval(zs[i]);
    } catch (const Error& e) {
#pragma omp critical
      failure = e.what();
    }
  }
  if (!failure.empty()) throw Error(ErrorKind::domain_error, failure);
  return out;
}

Estimate CuspForm::coset_moment(const Coset& h, cplx u, const Poly& Q) const {
  if (h.identity) return series_moment(f_, u, Q);
  const double N = level_;
  const cplx scale = static_cast<double>(fricke_) * std::pow(N, 1 - f_.weight / 2.0);
  return scale * series_moment(f_, (u + static_cast<double>(h.m)) / N, compose_affine(Q, N, -static_cast<double>(h.m)));
}

Estimate CuspForm::cusp_to_infinity(std::int64_t a, std::int64_t c, const Poly& P) const {
  Estimate total{0, 0};
  if (c == 0) return total;
  const cplx i(0, 1);
  std::int64_t p_prev = 1, q_prev = 0;
  for (const auto& [p, q] : convergents(a, c)) {
    Mat g{p_prev, p, q_prev, q};
    if (g.det() == -1) {
      g.a = -g.a;
      g.c = -g.c;
    }
    const Mat gs = g * S_mat;
    total += coset_moment(coset_of(g, level_), i, slash_poly(P, g, f_.weight));
    total -= coset_moment(coset_of(gs, level_), i, slash_poly(P, gs, f_.weight));
    p_prev = p;
    q_prev = q;
  }
  return total;
}

Estimate CuspForm::moment_at(const Mat& g, cplx u, const Poly& P) const {
  const Coset h = coset_of(g, level_);
  const double reduced_y = h.identity ? u.imag() : u.imag() / level_;
  const cplx p = mobius(g, u);
  if (p.imag() >= reduced_y) return series_moment(f_, p, P);
  return coset_moment(h, u, slash_poly(P, g, f_.weight)) + cusp_to_infinity(g.a, g.c, P);
}

Estimate CuspForm::moment_to_infinity(cplx p, const Poly& P) const {
  if (!(p.imag() > 0)) throw Error(ErrorKind::domain_error, "point " + describe(p) + " is not in the upper half-plane");
  if (p.imag() >= 1) return series_moment(f_, p, P);
  auto [g, u] = reduce_to_fundamental(p);
  return moment_at(g, u, P);
}

const GaussRule& gauss_rule(int degree) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(degree); it != cache.end()) return it->second;
  if (degree < 2) throw Error(ErrorKind::invalid_arguments, "quadrature degree must be >= 2");
  GaussRule rule;
  for (double x : boost::math::legendre_p_zeros<double>(degree)) {
    const double dp = boost::math::legendre_p_prime(degree, x);
    const double w = 2 / ((1 - x * x) * dp * dp);
    rule.x.push_back(x);
    rule.w.push_back(w);
    if (x != 0) {
      rule.x.push_back(-x);
      rule.w.push_back(w);
    }
  }
  return cache.emplace(degree, std::move(rule)).first->second;
}

// Every round evaluates all pending panels' nodes in one batch, so the thread
// schedule does not affect the result.
Estimate adaptive_quadrature(const Evaluator& evaluate, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt,
                             int& panels) {
  const GaussRule& rule = gauss_rule(opt.degree);
  const std::size_t n = rule.x.size();
  const double total_length = std::abs(z2 - z1);
  std::vector<std::pair<cplx, cplx>> pending{{z1, z2}};
  Estimate result{0, 0};
  panels = 0;
  constexpr std::size_t max_pending = 1024;
  for (int round = 0; !pending.empty(); ++round) {
    if (round >= 40 || pending.size() > max_pending) {
      throw Error(ErrorKind::precision_error, "quadrature cannot reach tolerance " + std::to_string(opt.tol) +
                                                  " from " + describe(z1) + " to " + describe(z2));
    }
    std::vector<cplx> nodes;
    nodes.reserve(pending.size() * 3 * n);
    for (const auto& [a, b] : pending) {
      const cplx mid = 0.5 * (a + b);
      for (const auto& [lo, hi] : {std::pair{a, b}, std::pair{a, mid}, std::pair{mid, b}}) {
        for (double x : rule.x) nodes.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * x);
      }
    }
    const auto values = evaluate(nodes);
    std::vector<std::pair<cplx, cplx>> next;
    for (std::size_t p = 0; p < pending.size(); ++p) {
      const auto [a, b] = pending[p];
      Estimate sums[3];
      for (int part = 0; part < 3; ++part) {
        const cplx h = part == 0 ? 0.5 * (b - a) : 0.25 * (b - a);
        Estimate s{0, 0};
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t idx = (p * 3 + part) * n + i;
          const cplx weight = h * rule.w[i] * poly_eval(P, nodes[idx]);
          s.value += weight * values[idx].value;
          s.error += std::abs(weight) * values[idx].error;
        }
        sums[part] = s;
      }
      const Estimate halves = sums[1] + sums[2];
      const double diff = std::abs(sums[0].value - halves.value);
      const double share = opt.tol * 0.1 * std::abs(b - a) / std::max(total_length, 1e-300);
      if (diff <= share) {
        result.value += halves.value;
        result.error += diff + halves.error;
        ++panels;
      } else {
        const cplx mid = 0.5 * (a + b);
        next.emplace_back(a, mid);
        next.emplace_back(mid, b);
      }
    }
    pending = std::move(next);
  }
  return result;
}

namespace {

LineIntegral line_integral(const std::function<Estimate(cplx)>& antiderivative, cplx z1, cplx z2, const Poly& P,
                           const NumericOptions& opt, const Evaluator& evaluate) {
  LineIntegral out;
  out.quadrature = adaptive_quadrature(evaluate, z1, z2, P, opt, out.panels);
  out.antiderivative = antiderivative(z1) - antiderivative(z2);
  require_precision(out.quadrature, opt.tol, "quadrature from " + describe(z1) + " to " + describe(z2));
  const double gap = std::abs(out.quadrature.value - out.antiderivative.value);
  if (gap > 10 * (out.quadrature.error + out.antiderivative.error) + opt.tol) {
    throw Error(ErrorKind::internal_consistency, "quadrature and antiderivative disagree by " + std::to_string(gap));
  }
  return out;
}

}  // namespace

LineIntegral integrate_line(const CuspForm& f, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt) {
  return line_integral([&](cplx z) { return f.moment_to_infinity(z, P); }, z1, z2, P, opt,
                       [&](const std::vector<cplx>& zs) { return f.eval_batch(zs, opt.jobs); });
}

LineIntegral integrate_line_serial(const CuspForm& f, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt) {
  return line_integral([&](cplx z) { return f.moment_to_infinity(z, P); }, z1, z2, P, opt,
                       [&](const std::vector<cplx>& zs) { return f.eval_batch_serial(zs); });
}

LineIntegral integrate_line(const QSeries& f, cplx z1, cplx z2, const Poly& P, const NumericOptions& opt) {
  return line_integral([&](cplx z) { return series_moment(f, z, P); }, z1, z2, P, opt,
                       [&](const std::vector<cplx>& zs) { return eval_series_batch(f, zs, opt.jobs); });
}

CuspIntegral integrate_to_cusp(const QSeries& f, cplx z) {
  if (!f.cuspidal()) throw Error(ErrorKind::divergent_integral, f.label + " is not cuspidal");
  CuspIntegral out;
  out.value = series_moment(f, z, Poly{1.0});
  out.alternate = out.value;
  out.route = "antiderivative at z";
  return out;
}

CuspIntegral integrate_to_cusp(const CuspForm& f, cplx z, const std::string& cusp) {
  if (!f.series().cuspidal()) throw Error(ErrorKind::divergent_integral, f.series().label + " is not cuspidal");
  const Poly one{1.0};
  CuspIntegral out;
  if (cusp == "inf") {
    out.value = f.moment_to_infinity(z, one);
    out.alternate = series_moment(f.series(), z, one);
    out.route = "antiderivative at z; direct series";
    return out;
  }
  if (cusp != "0") throw Error(ErrorKind::invalid_arguments, "unknown cusp '" + cusp + "'");
  // int_z^0 = int_z^inf - int_0^inf.
  out.value = f.moment_to_infinity(z, one) - f.cusp_to_infinity(0, 1, one);
  if (f.weight() == 2) {
    const double N = f.level();
    out.alternate = static_cast<double>(f.fricke()) * f.moment_to_infinity(-1.0 / (N * z), one);
    out.route = "via infinity and the symbol int_0^inf; Fricke transport of the cusp to infinity";
  } else {
    out.alternate = out.value;
    out.route = "via infinity and the symbol int_0^inf";
  }
  return out;
}

Estimate modular_symbol(const CuspForm& f, const Mat& gamma, const GroupData& G, cplx z0) {
  if (!G.contains(gamma)) throw Error(ErrorKind::not_in_group, to_string(gamma) + " is not in " + G.label);
  if (f.weight() != 2) throw Error(ErrorKind::unsupported_weight, "modular symbols are taken in weight 2");
  const Poly one{1.0};
  const auto [g, u] = reduce_orbit(gamma, z0);
  return f.moment_to_infinity(z0, one) - f.moment_at(g, u, one);
}

PeriodPolynomial period_polynomial(const CuspForm& f, const Mat& gamma, const GroupData& G) {
  if (!G.contains(gamma)) throw Error(ErrorKind::not_in_group, to_string(gamma) + " is not in " + G.label);
  const int k = f.weight();
  const cplx i(0, 1);
  const auto [g, u] = reduce_orbit(gamma.inv(), i);
  PeriodPolynomial out;
  double binom = 1;
  for (int j = 0; j <= k - 2; ++j) {
    Poly mono(k - 1 - j, 0.0);
    mono.back() = 1;  // z^{k-2-j}
    Estimate e = f.moment_to_infinity(i, mono) - f.moment_at(g, u, mono);
    out.coeffs.push_back(((j % 2) ? -binom : binom) * e);
    binom = binom * (k - 2 - j) / (j + 1);
  }
  return out;
}

PeriodPolynomial slash_period(const PeriodPolynomial& P, const Mat& delta, int k) {
  Poly values, errors;
  for (const auto& c : P.coeffs) {
    values.push_back(c.value);
    errors.push_back(c.error);
  }
  const Mat absolute{std::abs(delta.a), std::abs(delta.b), std::abs(delta.c), std::abs(delta.d)};
  const Poly v = slash_poly(values, delta, k), e = slash_poly(errors, absolute, k);
  PeriodPolynomial out;
  for (std::size_t j = 0; j < v.size(); ++j) out.coeffs.push_back({v[j], std::abs(e[j])});
  return out;
}

std::vector<CuspForm> load_forms(const GroupData& G, int k, const NumericOptions& opt) {
  auto it = G.cusp_form_files.find(k);
  if (it == G.cusp_form_files.end()) {
    throw Error(ErrorKind::unsupported_weight, G.label + " fixture has no weight-" + std::to_string(k) + " forms");
  }
  std::vector<CuspForm> out;
  for (const auto& path : it->second) {
    QSeries q = load_qseries(path);
    if (q.weight != k) throw Error(ErrorKind::corrupt_fixture, path.string() + " has the wrong weight");
    out.emplace_back(q.truncated(opt.qn), G.level);
  }
  return out;
}

void require_precision(const Estimate& e, double tol, const std::string& what) {
  if (!(e.error <= tol)) {
    throw Error(ErrorKind::precision_error,
                what + ": error bound " + std::to_string(e.error) + " exceeds tolerance " + std::to_string(tol));
  }
}

}  // namespace hoform
