#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "hoform/checks.hpp"
#include "hoform/error.hpp"

using namespace hoform;
using testing::level11;
using testing::level37;

namespace {

const std::vector<cplx> points{{0, 1}, {0, 2}, {0.3, 0.8}};

const IteratedContext& ctx11() {
  static const IteratedContext ctx(level11(), NumericOptions{});
  return ctx;
}

const IteratedContext& ctx37() {
  static const IteratedContext ctx(level37(), NumericOptions{});
  return ctx;
}

}  // namespace

TEST_CASE("iterated integrals: basic values") {
  const auto& ctx = ctx11();
  for (cplx z : points) {
    CHECK(std::abs(ctx.F({1}, "inf", z).value - ctx.form(1).eval(z).value) < 1e-15);
    CHECK(ctx.I({}, "0", z).value == cplx(1));
    const Estimate one = ctx.I({1}, "inf", z);
    CHECK(std::abs(one.value - integrate_to_cusp(ctx.form(1), z, "inf").value.value) < 1e-14);
    const Estimate zero = ctx.I({1}, "0", z);
    CHECK(std::abs(zero.value - integrate_to_cusp(ctx.form(1), z, "0").value.value) < 1e-12);
  }
  const cplx high(0.1, 6);
  CHECK(std::abs(ctx.F({1, 1}, "inf", high).value) <= std::exp(-2 * std::numbers::pi * 6));
  CHECK_THROWS_AS(ctx.I({1, 1, 1, 1, 1}, "inf", points[0]), Error);
  CHECK_THROWS_AS(ctx.I({2}, "inf", points[0]), Error);
  CHECK_THROWS_AS(ctx.I({1}, "1/2", points[0]), Error);
}

TEST_CASE("iterated integrals: quadrature route") {
  for (const auto* ctx : {&ctx11(), &ctx37()}) {
    for (const Word& w : {Word{1}, Word{1, 1}, Word{1, 2, 1}}) {
      if (w.size() > 1 && ctx->genus() == 1 && w[1] == 2) continue;
      for (cplx z : points) {
        const Estimate a = ctx->I(w, "inf", z), b = ctx->I_quadrature(w, z);
        CHECK(std::abs(a.value - b.value) < 1e-8);
      }
    }
  }
}

TEST_CASE("iterated integrals: shuffle relation") {
  // int f_a int f_b = I_ab + I_ba for iterated integrals from the same endpoint.
  const auto& ctx = ctx37();
  for (cplx z : points) {
    for (const std::string cusp : {"inf", "0"}) {
      const cplx lhs = ctx.I({1}, cusp, z).value * ctx.I({2}, cusp, z).value;
      const cplx rhs = ctx.I({1, 2}, cusp, z).value + ctx.I({2, 1}, cusp, z).value;
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("cusp-to-cusp integrals") {
  const auto& ctx = ctx11();
  const Estimate J = ctx.cusp_integral({1}, "0", "inf");
  const Estimate direct = integrate_to_cusp(ctx.form(1), cplx(0, 1), "0").value;
  // int_0^inf f = int_i^inf f - int_i^0 f.
  CHECK(std::abs(J.value - (ctx.I({1}, "inf", cplx(0, 1)).value - direct.value)) < 1e-12);
  CHECK(std::abs(J.value) > 1e-2);
  CHECK(ctx.cusp_integral({1, 1}, "inf", "inf").value == cplx(0));
  // Reversal: J^{ab}_w = (-1)^t J^{ba}_{rev w}.
  const Estimate fwd = ctx37().cusp_integral({1, 2}, "0", "inf"), back = ctx37().cusp_integral({2, 1}, "inf", "0");
  CHECK(std::abs(fwd.value - back.value) < 1e-12);
}

TEST_CASE("S-functions") {
  const auto& ctx = ctx37();
  for (cplx z : points) {
    for (const std::string cusp : {"inf", "0"}) {
      CHECK(ctx.S({}, cusp, z).value == cplx(1));
      CHECK(std::abs(ctx.S({2}, cusp, z).value - std::conj(ctx.I({2}, cusp, z).value)) < 1e-15);
      for (const Word& w : {Word{1, 2}, Word{2, 1, 1}}) {
        CHECK(std::abs(ctx.S(w, cusp, z).value - ctx.S_compositions(w, cusp, z).value) < 1e-9);
      }
    }
  }
}

TEST_CASE("path splitting identities") {
  const auto& ctx = ctx11();
  for (cplx z : {points[0], points[1], points[2], cplx(0.1, 5)}) {
    const IdentityCheck one = check_path_lemma(ctx, {1}, "inf", "0", z);
    CHECK(one.residual <= 1e-10);
    CHECK(one.corrected_name.empty());
    const IdentityCheck same = check_path_lemma(ctx, {1, 1}, "0", "0", z);
    CHECK(same.residual == 0);
    for (const Word& w : {Word{1, 1}, Word{1, 1, 1}}) {
      const IdentityCheck c = check_path_lemma(ctx, w, "inf", "0", z);
      CHECK(c.corrected_residual <= 1e-10);
      // The displayed sign flips the cross terms: the gap is exactly twice them.
      cplx cross = 0;
      for (std::size_t r = 1; r < w.size(); ++r) {
        cross += ctx.I(Word(w.begin(), w.begin() + r), "0", z).value *
                 ctx.cusp_integral(Word(w.begin() + r, w.end()), "0", "inf").value;
      }
      CHECK(std::abs(c.residual - 2 * std::abs(cross)) <= 1e-10);
    }
  }
}

TEST_CASE("S-difference identities") {
  const auto& ctx = ctx11();
  for (cplx z : points) {
    CHECK(check_Sab(ctx, {1}, "inf", "0", z).residual <= 1e-10);
    CHECK(check_Sab(ctx, {1}, "0", "inf", z).residual <= 1e-10);
    for (const Word& w : {Word{1, 1}, Word{1, 1, 1}}) {
      CHECK(check_Sab(ctx, w, "0", "0", z).residual == 0);
      CHECK(check_Sab(ctx, w, "inf", "0", z).corrected_residual <= 1e-10);
      CHECK(check_Sab(ctx, w, "0", "inf", z).corrected_residual <= 1e-10);
    }
    for (const Word& w : {Word{1, 2}, Word{2, 2, 1}}) {
      CHECK(check_Sab(ctx37(), w, "inf", "0", z).corrected_residual <= 1e-10);
    }
  }
}

TEST_CASE("shuffle products of concrete functions") {
  const auto& ctx = ctx11();
  const auto& gens = level11().generators;
  const std::vector<cplx> zs{{0, 1}};
  const ShuffleFactor f{1, false}, fI{1, true};
  const CheckResult trivial = check_shuffle_numeric(ctx, f, f, {}, zs, 1e-8);
  CHECK(trivial.residual == 0);
  CHECK(trivial.status == CheckStatus::pass);
  for (const auto& g : gens) CHECK(check_shuffle_numeric(ctx, fI, f, {g}, zs, 1e-7).status == CheckStatus::pass);
  CHECK(check_shuffle_numeric(ctx, fI, fI, {gens[1], gens[2]}, zs, 1e-6).status == CheckStatus::pass);
  const CheckResult wrong_count = check_shuffle_numeric(ctx, fI, fI, {gens[1]}, zs, 1e-6);
  CHECK(wrong_count.status == CheckStatus::fail);
  CHECK(wrong_count.note.find("invalid-arguments") != std::string::npos);
}

TEST_CASE("check suites on the fixtures") {
  NumericOptions opt;
  CHECK(symbol_suite(level11(), opt).passed());
  CHECK(symbol_suite(level37(), opt, 8).passed());
  CHECK(cocycle_suite(level11(), opt, {2, 4}).passed());
  const SuiteResult c37 = cocycle_suite(level37(), opt, {2, 4});
  CHECK(c37.passed());
  CHECK(c37.count(CheckStatus::skipped) == 1);
  CHECK(shuffle_suite(ctx11()).passed());
  const SuiteResult it = iterated_suite(ctx11(), 1);
  CHECK(it.passed());
  NumericOptions strict;
  strict.tol = 1e-15;
  strict.qn = 50;
  const SuiteResult tight = symbol_suite(level11(), strict, 4);
  CHECK(tight.count(CheckStatus::precision_error) > 0);
  CHECK(!tight.passed());
}
