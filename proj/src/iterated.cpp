#include "hoform/iterated.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hoform/error.hpp"

namespace hoform {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

Word slice(const Word& w, std::size_t from, std::size_t to) { return Word(w.begin() + from, w.begin() + to); }

}  // namespace

IteratedContext::IteratedContext(const GroupData& G, const NumericOptions& opt)
    : G_(G), opt_(opt), forms_(load_forms(G, 2, opt)) {}

const CuspForm& IteratedContext::form(int letter) const {
  if (letter < 1 || letter > genus()) throw Error(ErrorKind::invalid_letter, "no form f" + std::to_string(letter));
  return forms_[letter - 1];
}

void IteratedContext::check_word(const Word& w) const {
  if (static_cast<int>(w.size()) > max_iterated_depth) {
    throw Error(ErrorKind::depth_limit, "iterated integrals are limited to depth " + std::to_string(max_iterated_depth));
  }
  for (int letter : w) {
    if (letter < 1 || letter > genus()) {
      throw Error(ErrorKind::invalid_letter, "letter " + std::to_string(letter) + " is not a cusp form index");
    }
  }
}

const IteratedContext::Nested& IteratedContext::nested(const Word& w) const {
  std::lock_guard lock(mutex_);
  if (auto it = nested_.find(w); it != nested_.end()) return it->second;
  const QSeries& f = form(w.front()).series();
  Nested out;
  if (w.size() == 1) {
    out.coeffs = f.coeffs;
    out.C = f.tail_C;
    out.e = f.tail_e;
  } else {
    const Nested& inner = nested(slice(w, 1, w.size()));
    const int N = f.N();
    std::vector<cplx> integrated(N);
    for (int n = 1; n <= N; ++n) integrated[n - 1] = -inner.coeffs[n - 1] / cplx(0, two_pi * n);
    out.coeffs.assign(N, 0.0);
    for (int n = 2; n <= N; ++n) {
      for (int m = 1; m < n; ++m) out.coeffs[n - 1] += f.coeffs[m - 1] * integrated[n - m - 1];
    }
    // |sum_{m<n} a_m b_{n-m}| <= n * C_a n^{e_a} * C_b n^{max(e_b,0)}.
    const double Cb = inner.C / two_pi, eb = inner.e - 1;
    out.C = f.tail_C * Cb;
    out.e = f.tail_e + std::max(eb, 0.0) + 1;
  }
  return nested_.emplace(w, std::move(out)).first->second;
}

Estimate IteratedContext::I_infinity(const Word& w, cplx z) const {
  if (w.empty()) return {1, 0};
  if (!(z.imag() > 0)) throw Error(ErrorKind::domain_error, "iterated integral needs Im z > 0");
  const Nested& s = nested(w);
  const cplx q = std::exp(cplx(0, two_pi) * z);
  cplx power = q, sum = 0;
  double magnitude = 0;
  for (std::size_t n = 1; n <= s.coeffs.size(); ++n) {
    const cplx term = -s.coeffs[n - 1] / cplx(0, two_pi * n) * power;
    sum += term;
    magnitude += std::abs(term);
    power *= q;
  }
  const double tail = tail_bound(s.C / two_pi, s.e - 1, static_cast<int>(s.coeffs.size()), z.imag());
  return {sum, tail + 1e-15 * magnitude * static_cast<double>(s.coeffs.size())};
}

Estimate IteratedContext::I(const Word& w, const std::string& cusp, cplx z) const {
  check_word(w);
  if (cusp == "inf") return I_infinity(w, z);
  if (cusp != "0") throw Error(ErrorKind::invalid_arguments, "unknown cusp '" + cusp + "'");
  // t -> -1/(N t) carries the integrals toward 0 to integrals toward infinity.
  const double N = G_.level;
  const cplx image = -1.0 / (N * z);
  if (image.imag() >= z.imag()) return cplx(fricke_sign(w)) * I_infinity(w, image);
  // Otherwise run from z to the fixed point i/sqrt(N) first.
  const cplx y(0, 1 / std::sqrt(N));
  Estimate total{0, 0};
  for (std::size_t k = 0; k <= w.size(); ++k) {
    const Word rest = slice(w, k, w.size());
    total += segment(slice(w, 0, k), z, y) * (cplx(fricke_sign(rest)) * I_infinity(rest, y));
  }
  return total;
}

double IteratedContext::fricke_sign(const Word& w) const {
  double sign = 1;
  for (int letter : w) sign *= form(letter).fricke();
  return sign;
}

Estimate IteratedContext::segment(const Word& w, cplx z, cplx y) const {
  // z -> infinity followed by infinity -> y.
  Estimate total{0, 0};
  for (std::size_t j = 0; j <= w.size(); ++j) {
    Word back = slice(w, j, w.size());
    std::reverse(back.begin(), back.end());
    const double sign = (back.size() % 2) ? -1 : 1;
    total += I_infinity(slice(w, 0, j), z) * (cplx(sign) * I_infinity(back, y));
  }
  return total;
}

Estimate IteratedContext::F(const Word& w, const std::string& cusp, cplx z) const {
  check_word(w);
  if (w.empty()) throw Error(ErrorKind::invalid_arguments, "F needs a nonempty word");
  return form(w.front()).eval(z) * I(slice(w, 1, w.size()), cusp, z);
}

Estimate IteratedContext::cusp_integral(const Word& w, const std::string& b, const std::string& a) const {
  check_word(w);
  if (w.empty()) return {1, 0};
  if (a == b) return {0, 0};
  // Split the path b -> a at i/sqrt(N); the b-side integrals run backwards.
  const cplx y(0, 1 / std::sqrt(static_cast<double>(G_.level)));
  Estimate total{0, 0};
  for (std::size_t k = 0; k <= w.size(); ++k) {
    Word head = slice(w, 0, k);
    std::reverse(head.begin(), head.end());
    const double sign = (k % 2) ? -1 : 1;
    total += cplx(sign) * (I(head, b, y) * I(slice(w, k, w.size()), a, y));
  }
  return total;
}

Estimate IteratedContext::I_quadrature(const Word& w, cplx z) const {
  check_word(w);
  if (w.empty()) return {1, 0};
  const cplx top = z + cplx(0, 5);
  const Word rest = slice(w, 1, w.size());
  const CuspForm& f = form(w.front());
  Evaluator integrand = [&](const std::vector<cplx>& zs) {
    auto values = f.eval_batch(zs, opt_.jobs);
    for (std::size_t i = 0; i < zs.size(); ++i) values[i] = values[i] * I_infinity(rest, zs[i]);
    return values;
  };
  int panels = 0;
  return adaptive_quadrature(integrand, z, top, Poly{1.0}, opt_, panels) + I_infinity(w, top);
}

Estimate IteratedContext::S(const Word& w, const std::string& cusp, cplx z) const {
  check_word(w);
  std::map<std::size_t, Estimate> suffix;  // S of w[from..]
  suffix[w.size()] = {1, 0};
  for (std::size_t from = w.size(); from-- > 0;) {
    Estimate total{0, 0};
    for (std::size_t r = from + 1; r <= w.size(); ++r) total += conj(I(slice(w, from, r), cusp, z)) * suffix[r];
    suffix[from] = total;
  }
  return suffix[0];
}

Estimate IteratedContext::S_compositions(const Word& w, const std::string& cusp, cplx z) const {
  check_word(w);
  if (w.empty()) return {1, 0};
  Estimate total{0, 0};
  const std::size_t cuts = w.size() - 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cuts); ++mask) {
    Estimate term{1, 0};
    std::size_t start = 0;
    for (std::size_t i = 0; i <= cuts; ++i) {
      if (i == cuts || (mask >> i) & 1) {
        term = term * conj(I(slice(w, start, i + 1), cusp, z));
        start = i + 1;
      }
    }
    total += term;
  }
  return total;
}

IdentityCheck check_path_lemma(const IteratedContext& ctx, const Word& w, const std::string& a, const std::string& b,
                               cplx z) {
  IdentityCheck out;
  out.name = "path-lemma " + format_word(w) + " " + a + "/" + b;
  out.lhs = ctx.I(w, a, z) - ctx.I(w, b, z);
  Estimate cross{0, 0};
  for (std::size_t r = 1; r < w.size(); ++r) {
    cross += ctx.I(slice(w, 0, r), b, z) * ctx.cusp_integral(slice(w, r, w.size()), b, a);
  }
  const Estimate whole = ctx.cusp_integral(w, b, a);
  out.rhs = whole - cross;
  out.residual = std::abs(out.lhs.value - out.rhs.value);
  out.bound = out.lhs.error + out.rhs.error;
  if (w.size() > 1) {
    out.corrected_name = "path composition with +";
    out.corrected_residual = std::abs(out.lhs.value - (whole + cross).value);
  }
  return out;
}

IdentityCheck check_Sab(const IteratedContext& ctx, const Word& w, const std::string& a, const std::string& b,
                        cplx z) {
  IdentityCheck out;
  out.name = "S-difference " + format_word(w) + " " + a + "/" + b;
  const std::size_t t = w.size();
  out.lhs = ctx.S(w, a, z) - ctx.S(w, b, z);
  out.rhs = {0, 0};
  for (std::size_t r = 1; r <= t; ++r) {
    out.rhs += conj(ctx.cusp_integral(slice(w, 0, r), b, a)) * ctx.S(slice(w, r, t), a, z);
  }
  out.residual = std::abs(out.lhs.value - out.rhs.value);
  out.bound = out.lhs.error + out.rhs.error;
  if (t > 1) {
    // S^a - S^b = S^b * conj(I^b) * (conj(J) - 1) * S^a as word series.
    Estimate corrected{0, 0};
    for (std::size_t p1 = 0; p1 <= t; ++p1) {
      for (std::size_t p2 = p1; p2 <= t; ++p2) {
        for (std::size_t p3 = p2 + 1; p3 <= t; ++p3) {
          corrected += ctx.S(slice(w, 0, p1), b, z) * conj(ctx.I(slice(w, p1, p2), b, z)) *
                       conj(ctx.cusp_integral(slice(w, p2, p3), b, a)) * ctx.S(slice(w, p3, t), a, z);
        }
      }
    }
    out.corrected_name = "series identity S^b conj(I^b) (conj(J)-1) S^a";
    out.corrected_residual = std::abs(out.lhs.value - corrected.value);
  }
  return out;
}

}  // namespace hoform
