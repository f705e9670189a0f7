#include "hoform/checks.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>

#include "hoform/error.hpp"

namespace hoform {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::precision_error: return "precision-error";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

double SuiteResult::max_residual() const {
  double m = 0;
  for (const auto& c : checks) {
    if (c.status != CheckStatus::skipped) m = std::max(m, c.residual);
  }
  return m;
}

std::vector<std::pair<std::string, double>> SuiteResult::max_by_kind() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::skipped) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == c.kind; });
    if (it == out.end()) {
      out.emplace_back(c.kind, c.residual);
    } else {
      it->second = std::max(it->second, c.residual);
    }
  }
  return out;
}

bool SuiteResult::passed() const { return count(CheckStatus::fail) == 0 && count(CheckStatus::precision_error) == 0; }

std::size_t SuiteResult::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const auto& c) { return c.status == s; }));
}

std::string ShuffleFactor::label() const {
  const std::string f = "f" + std::to_string(letter);
  return with_primitive ? f + "*int(" + f + ")" : f;
}

namespace {

struct Measured {
  double residual;
  double bound;
};

std::string fmt_z(cplx z) {
  char buf[64];
  if (z.real() == 0) {
    std::snprintf(buf, sizeof buf, "%gi", z.imag());
  } else {
    std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  }
  return buf;
}

Measured gap(const Estimate& x, const Estimate& y) { return {std::abs(x.value - y.value), x.error + y.error}; }

CheckResult run(const std::string& kind, const std::string& instance, double tol,
                const std::function<Measured()>& body) {
  CheckResult out;
  out.kind = kind;
  out.name = kind + " " + instance;
  out.tolerance = tol;
  try {
    const Measured m = body();
    out.residual = m.residual;
    out.bound = m.bound;
    if (m.bound > tol) {
      out.status = CheckStatus::precision_error;
      out.note = "error bound exceeds tolerance";
    } else {
      out.status = m.residual <= tol ? CheckStatus::pass : CheckStatus::fail;
    }
  } catch (const Error& e) {
    out.status = e.kind() == ErrorKind::precision_error ? CheckStatus::precision_error : CheckStatus::fail;
    out.note = e.what();
  }
  return out;
}

Mat random_word(std::mt19937& rng, const std::vector<Mat>& gens) {
  std::uniform_int_distribution<int> length(1, 3), pick(0, static_cast<int>(gens.size()) - 1), flip(0, 1);
  Mat m{1, 0, 0, 1};
  for (int n = length(rng); n > 0; --n) {
    const Mat& g = gens[pick(rng)];
    m = m * (flip(rng) ? g.inv() : g);
  }
  return m;
}

std::vector<Word> words_of_length(int length, int genus) {
  std::vector<Word> out{{}};
  for (int i = 0; i < length; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (int j = 1; j <= genus; ++j) {
        Word x = w;
        x.push_back(j);
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

SuiteResult symbol_suite(const GroupData& G, const NumericOptions& opt, int random_pairs, std::uint32_t seed) {
  SuiteResult out{"modular-symbols", {}};
  const auto forms = load_forms(G, 2, opt);
  const double tol = opt.tol;
  const cplx i(0, 1), two_i(0, 2);
  const Mat id{1, 0, 0, 1};
  for (const auto& f : forms) {
    const std::string& tag = f.series().label;
    out.checks.push_back(run("identity", tag, tol, [&] {
      const Estimate s = modular_symbol(f, id, G);
      return Measured{std::abs(s.value), s.error};
    }));
    for (const auto& c : G.cusps) {
      out.checks.push_back(run("parabolic", tag + " " + c.label + " " + to_string(c.parabolic), tol, [&] {
        const Estimate s = modular_symbol(f, c.parabolic, G);
        return Measured{std::abs(s.value), s.error};
      }));
    }
    for (const auto& g : G.generators) {
      const std::string gs = " " + to_string(g);
      out.checks.push_back(run("inversion", tag + gs, tol, [&] {
        const Estimate s = modular_symbol(f, g, G) + modular_symbol(f, g.inv(), G);
        return Measured{std::abs(s.value), s.error};
      }));
      out.checks.push_back(run("base-point", tag + gs, tol, [&] {
        return gap(modular_symbol(f, g, G, i), modular_symbol(f, g, G, two_i));
      }));
      out.checks.push_back(run("quadrature", tag + gs, tol, [&] {
        const LineIntegral line = integrate_line(f, i, mobius(g, i), Poly{1.0}, opt);
        return gap(line.quadrature, modular_symbol(f, g, G, i));
      }));
    }
    std::mt19937 rng(seed);
    for (int n = 0; n < random_pairs; ++n) {
      const Mat g = random_word(rng, G.generators), d = random_word(rng, G.generators);
      out.checks.push_back(run("additivity", tag + " " + to_string(g) + " " + to_string(d), tol, [&] {
        return gap(modular_symbol(f, g * d, G), modular_symbol(f, g, G) + modular_symbol(f, d, G));
      }));
    }
  }
  return out;
}

SuiteResult iterated_suite(const IteratedContext& ctx, int max_length) {
  SuiteResult out{"iterated-integrals", {}};
  const std::vector<cplx> zs{{0, 1}, {0, 2}, {0.3, 0.8}};
  const std::vector<std::string> cusps{"inf", "0"};
  max_length = std::min(max_length, 3);
  for (int len = 1; len <= max_length; ++len) {
    const double tol = len >= 3 ? 100 * ctx.options().tol : ctx.options().tol;
    for (const Word& w : words_of_length(len, ctx.genus())) {
      const std::string ws = format_word(w);
      for (cplx z : zs) {
        const std::string at = " z=" + fmt_z(z);
        out.checks.push_back(run("quadrature-route", ws + at, tol, [&] {
          return gap(ctx.I(w, "inf", z), ctx.I_quadrature(w, z));
        }));
        for (const auto& a : cusps) {
          out.checks.push_back(run("S-compositions", ws + " " + a + at, tol, [&] {
            return gap(ctx.S(w, a, z), ctx.S_compositions(w, a, z));
          }));
        }
        for (const auto& a : cusps) {
          for (const auto& b : cusps) {
            const std::string pair = " " + a + "/" + b;
            IdentityCheck path, sab;
            out.checks.push_back(run("path-lemma", ws + pair + at, tol, [&] {
              path = check_path_lemma(ctx, w, a, b, z);
              return Measured{path.residual, path.bound};
            }));
            if (!path.corrected_name.empty()) {
              out.checks.push_back(run("path-composition", ws + pair + at, tol, [&] {
                return Measured{path.corrected_residual, path.bound};
              }));
            }
            out.checks.push_back(run("S-difference", ws + pair + at, tol, [&] {
              sab = check_Sab(ctx, w, a, b, z);
              return Measured{sab.residual, sab.bound};
            }));
            if (!sab.corrected_name.empty()) {
              out.checks.push_back(run("S-series", ws + pair + at, tol, [&] {
                return Measured{sab.corrected_residual, sab.bound};
              }));
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

Estimate eval_factor(const IteratedContext& ctx, const ShuffleFactor& F, cplx w) {
  const CuspForm& f = ctx.form(F.letter);
  const Estimate value = f.eval(w);
  if (!F.with_primitive) return value;
  const Poly one{1.0};
  return value * (f.moment_to_infinity(cplx(0, 1), one) - f.moment_to_infinity(w, one));
}

/// (H|_k (g_1-1)...(g_n-1))(z) by expanding over subsets.
template <class H>
Estimate slash_chain(const H& h, int k, const std::vector<Mat>& gammas, cplx z) {
  const std::size_t n = gammas.size();
  Estimate total{0, 0};
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Mat m{1, 0, 0, 1};
    int chosen = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) {
        m = m * gammas[i];
        ++chosen;
      }
    }
    const double sign = (static_cast<int>(n) - chosen) % 2 ? -1 : 1;
    total += sign * std::pow(automorphy(m, z), -k) * h(mobius(m, z));
  }
  return total;
}

}  // namespace

CheckResult check_shuffle_numeric(const IteratedContext& ctx, const ShuffleFactor& F, const ShuffleFactor& G,
                                  const std::vector<Mat>& gammas, const std::vector<cplx>& zs, double tol) {
  const int s = F.order(), t = G.order();
  std::string name = F.label() + " . " + G.label();
  for (const auto& g : gammas) name += " " + to_string(g);
  return run("shuffle", name, tol, [&] {
    if (static_cast<int>(gammas.size()) != s + t - 2) {
      throw Error(ErrorKind::invalid_arguments, "shuffle check needs order(F)+order(G)-2 matrices");
    }
    const auto shuffles = enumerate_shuffles(s - 1, s + t - 1);
    Measured worst{0, 0};
    for (cplx z : zs) {
      const Estimate lhs = slash_chain(
          [&](cplx w) { return eval_factor(ctx, F, w) * eval_factor(ctx, G, w); }, 4, gammas, z);
      Estimate rhs{0, 0};
      for (const auto& sh : shuffles) {
        std::vector<Mat> left, right;
        for (int p : sh.phi) left.push_back(gammas[p - 1]);
        for (int p : sh.psi) right.push_back(gammas[p - 1]);
        rhs += slash_chain([&](cplx w) { return eval_factor(ctx, F, w); }, 2, left, z) *
               slash_chain([&](cplx w) { return eval_factor(ctx, G, w); }, 2, right, z);
      }
      const Measured m = gap(lhs, rhs);
      worst.residual = std::max(worst.residual, m.residual);
      worst.bound = std::max(worst.bound, m.bound);
    }
    return worst;
  });
}

SuiteResult shuffle_suite(const IteratedContext& ctx) {
  SuiteResult out{"shuffle-products", {}};
  const double tol = 100 * ctx.options().tol;
  const std::vector<cplx> zs{{0, 1}, {0.2, 1.1}};
  const auto& gens = ctx.group().generators;
  const int letters = std::min(ctx.genus(), 2);
  for (int a = 1; a <= letters; ++a) {
    for (int b = 1; b <= letters; ++b) {
      for (bool pa : {false, true}) {
        for (bool pb : {false, true}) {
          const ShuffleFactor F{a, pa}, G{b, pb};
          const int n = F.order() + G.order() - 2;
          std::vector<std::vector<Mat>> tuples;
          if (n == 0) tuples.push_back({});
          if (n == 1) {
            for (const auto& g : gens) tuples.push_back({g});
          }
          if (n == 2) {
            for (const auto& g : gens) {
              for (const auto& d : gens) tuples.push_back({g, d});
            }
          }
          CheckResult worst;
          bool first = true;
          for (const auto& tuple : tuples) {
            CheckResult r = check_shuffle_numeric(ctx, F, G, tuple, zs, tol);
            const bool r_bad = r.status != CheckStatus::pass, w_bad = worst.status != CheckStatus::pass;
            if (first || (r_bad && !w_bad) || (r_bad == w_bad && r.residual > worst.residual)) worst = std::move(r);
            first = false;
          }
          worst.name = "shuffle " + F.label() + " . " + G.label() + " over " + std::to_string(tuples.size()) +
                       " generator tuple" + (tuples.size() == 1 ? "" : "s");
          out.checks.push_back(std::move(worst));
        }
      }
    }
  }
  return out;
}

SuiteResult cocycle_suite(const GroupData& G, const NumericOptions& opt, const std::vector<int>& weights) {
  SuiteResult out{"period-cocycle", {}};
  const double tol = opt.tol;
  for (int k : weights) {
    if (!G.cusp_form_files.count(k)) {
      CheckResult skip;
      skip.kind = "cocycle";
      skip.name = "cocycle weight " + std::to_string(k);
      skip.status = CheckStatus::skipped;
      skip.note = G.label + " fixture has no weight-" + std::to_string(k) + " cusp forms";
      out.checks.push_back(std::move(skip));
      continue;
    }
    for (const auto& f : load_forms(G, k, opt)) {
      const std::string tag = f.series().label + " k=" + std::to_string(k) + " ";
      for (const auto& g : G.generators) {
        for (const auto& d : G.generators) {
          out.checks.push_back(run("cocycle", tag + to_string(g) + " " + to_string(d), tol, [&] {
            const auto whole = period_polynomial(f, g * d, G);
            const auto left = slash_period(period_polynomial(f, g, G), d, k);
            const auto right = period_polynomial(f, d, G);
            Measured m{0, 0};
            for (std::size_t j = 0; j < whole.coeffs.size(); ++j) {
              const Estimate r = whole.coeffs[j] - left.coeffs[j] - right.coeffs[j];
              m.residual = std::max(m.residual, std::abs(r.value));
              m.bound = std::max(m.bound, r.error);
            }
            return m;
          }));
        }
        if (k == 2) {
          out.checks.push_back(run("cocycle-symbol", tag + to_string(g), tol, [&] {
            return gap(period_polynomial(f, g, G).coeffs.at(0), modular_symbol(f, g.inv(), G, cplx(0, 2)));
          }));
        }
      }
    }
  }
  return out;
}

}  // namespace hoform
