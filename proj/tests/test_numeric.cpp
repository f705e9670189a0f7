#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "fixtures.hpp"
#include "hoform/error.hpp"
#include "hoform/numeric.hpp"

using namespace hoform;
using testing::fixture;
using testing::level11;
using testing::level37;

namespace {

constexpr double two_pi = 2 * std::numbers::pi;
const cplx I1(0, 1);

QSeries single_term(double a1 = 1) {
  QSeries f;
  f.label = "single";
  f.weight = 2;
  f.level = 11;
  f.coeffs.assign(60, 0.0);
  f.coeffs[0] = a1;
  f.tail_C = std::abs(a1);
  f.tail_e = 0;
  return f;
}

std::string qexp_text(const std::string& body, int n = 50) {
  std::ostringstream out;
  out << "# format: hoform-qseries/1\n# label: t\n# weight: 2\n# level: 11\n# N: " << n << "\n# tail: 2 1\n" << body;
  return out.str();
}

std::string ones(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += "1\n";
  return s;
}

CuspForm form11() { return load_forms(level11(), 2, NumericOptions{}).at(0); }

}  // namespace

TEST_CASE("group fixtures") {
  const auto& G = level11();
  CHECK(G.level == 11);
  CHECK(G.genus == 1);
  CHECK(G.cusps.size() == 2);
  CHECK(G.cusp("inf").width == 1);
  CHECK(G.cusp("0").width == 11);
  for (const auto& g : G.generators) CHECK(G.contains(g));
  CHECK(level37().genus == 2);
  CHECK(level37().cusps.size() == 2);
}

TEST_CASE("malformed group fixture") {
  CHECK_THROWS_AS(load_group(testing::scratch_file("broken.json", "{ not json")), Error);
  try {
    load_group(testing::scratch_file("broken.json", "{ not json"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse_error);
  }
  std::ifstream in(fixture("level11.json"));
  auto j = nlohmann::json::parse(in);
  j["generators"][1] = {-2, -1, 7, 3};
  const auto path = testing::scratch_file("bad.json", j.dump());
  for (const char* name : {"11a.qexp", "11a_sq.qexp"}) {
    std::filesystem::copy_file(fixture(name), path.parent_path() / name,
                               std::filesystem::copy_options::overwrite_existing);
  }
  try {
    load_group(path);
    FAIL("corrupt fixture accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::corrupt_fixture);
  }
  j = nlohmann::json::parse(std::ifstream(fixture("level11.json")));
  j["cusps"][1]["parabolic"] = {1, 2, 0, 1};
  try {
    load_group(testing::scratch_file("bad.json", j.dump()));
    FAIL("corrupt fixture accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::corrupt_fixture);
  }
}

TEST_CASE("q-series files") {
  const QSeries f = load_qseries(fixture("11a.qexp"));
  CHECK(f.weight == 2);
  CHECK(f.N() == 400);
  CHECK(f.coeffs[1].real() == -2);
  CHECK(load_qseries(testing::scratch_file("ok.qexp", qexp_text(ones(50)))).N() == 50);
  auto kind_of = [](const std::string& text) {
    try {
      load_qseries(testing::scratch_file("bad.qexp", text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::internal_consistency;
  };
  CHECK(kind_of(qexp_text(ones(49) + "x\n")) == ErrorKind::parse_error);
  CHECK(kind_of(qexp_text(ones(49))) == ErrorKind::corrupt_fixture);
  CHECK(kind_of(qexp_text(ones(49), 49)) == ErrorKind::corrupt_fixture);
  CHECK(kind_of(qexp_text(ones(49) + "1000\n")) == ErrorKind::corrupt_fixture);
  CHECK(kind_of("# label: t\n" + ones(50)) == ErrorKind::parse_error);
}

TEST_CASE("series evaluation") {
  const QSeries f = single_term();
  const Estimate v = eval_series(f, I1);
  CHECK(std::abs(v.value - std::exp(-two_pi)) < 1e-15);
  CHECK(v.error < 1e-15);
  const QSeries g = load_qseries(fixture("11a.qexp"));
  const Estimate far = eval_series(g, cplx(0.3, 10));
  CHECK(std::abs(far.value) <= 2 * std::exp(-two_pi * 10));
  CHECK_THROWS_AS(eval_series(g, cplx(0.5, 0)), Error);
  CHECK(tail_bound(2, 1, 400, 0.001) > 0);
  CHECK(std::isfinite(tail_bound(2, 1, 400, 0.001)));
}

TEST_CASE("fundamental domain reduction") {
  for (cplx z : {cplx(0.3, 0.01), cplx(-4.2, 0.2), cplx(0.01, 0.001)}) {
    auto [g, u] = reduce_to_fundamental(z);
    CHECK(g.det() == 1);
    CHECK(std::abs(u.real()) <= 0.5 + 1e-12);
    CHECK(std::norm(u) >= 1 - 1e-12);
    CHECK(std::abs(mobius(g, u) - z) < 1e-9 * std::abs(z));
  }
  const Mat big{-1097, -294, 5735, 1537};
  auto [g, u] = reduce_orbit(big, I1);
  CHECK(std::norm(u) >= 1 - 1e-12);
  CHECK(std::abs(u.real()) <= 0.5 + 1e-12);
  // g u and big i are the same point: g^{-1} big fixes i up to the reduction step.
  const Mat rest = g.inv() * big;
  CHECK(std::abs(mobius(rest, I1) - u) < 1e-12);
}

TEST_CASE("cusp forms on Gamma0(p)") {
  const CuspForm f = form11();
  CHECK(f.fricke() == -1);
  CHECK(load_forms(level11(), 4, NumericOptions{}).at(0).fricke() == 1);
  // Invariance under the group.
  const cplx z(0.13, 0.4);
  for (const auto& g : level11().generators) {
    const Estimate a = f.eval(mobius(g, z));
    const Estimate b = f.eval(z);
    CHECK(std::abs(a.value - std::pow(automorphy(g, z), 2) * b.value) < 1e-10);
  }
  CHECK_THROWS_AS(load_forms(level37(), 4, NumericOptions{}), Error);
}

TEST_CASE("batch evaluation matches serial") {
  const CuspForm f = form11();
  std::vector<cplx> zs;
  for (int i = 0; i < 200; ++i) zs.emplace_back(0.01 * i - 1, 0.02 + 0.005 * i);
  const auto par = f.eval_batch(zs, 4), ser = f.eval_batch_serial(zs);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    CHECK(par[i].value == ser[i].value);
    CHECK(par[i].error == ser[i].error);
  }
}

TEST_CASE("line integrals") {
  const NumericOptions opt;
  const QSeries single = single_term();
  const cplx z(0.2, 0.7);
  const LineIntegral period = integrate_line(single, z, z + 1.0, Poly{1.0}, opt);
  CHECK(std::abs(period.quadrature.value) < 1e-12);
  const LineIntegral closed = integrate_line(single, I1, cplx(0, 2), Poly{1.0}, opt);
  const cplx exact = (std::exp(-2 * two_pi) - std::exp(-two_pi)) / cplx(0, two_pi);
  CHECK(std::abs(closed.quadrature.value - exact) < 1e-14);
  const CuspForm f = form11();
  const LineIntegral dual = integrate_line(f, I1, cplx(0.3, 0.05), Poly{1.0}, opt);
  CHECK(std::abs(dual.quadrature.value - dual.antiderivative.value) < 1e-10);
  const LineIntegral ser = integrate_line_serial(f, I1, cplx(0.3, 0.05), Poly{1.0}, opt);
  CHECK(std::abs(ser.quadrature.value - dual.quadrature.value) < 1e-15);
  NumericOptions strict = opt;
  strict.tol = 1e-30;
  CHECK_THROWS_AS(integrate_line(f, I1, cplx(0.3, 0.05), Poly{1.0}, strict), Error);
}

TEST_CASE("integrals to cusps") {
  const QSeries single = single_term(3);
  const cplx z(0.1, 0.9);
  const CuspIntegral inf = integrate_to_cusp(single, z);
  CHECK(std::abs(inf.value.value - (-3.0 * std::exp(cplx(0, two_pi) * z) / cplx(0, two_pi))) < 1e-15);
  QSeries eis = single_term();
  eis.constant_term = 1;
  CHECK_THROWS_AS(integrate_to_cusp(eis, z), Error);
  const CuspForm f = form11();
  const CuspIntegral zero = integrate_to_cusp(f, I1, "0");
  CHECK(std::abs(zero.value.value - zero.alternate.value) < 1e-9);
  CHECK(std::abs(zero.value.value) > 1e-3);
}

TEST_CASE("modular symbols") {
  const auto& G = level11();
  const CuspForm f = form11();
  CHECK(std::abs(modular_symbol(f, Mat{}, G).value) == 0);
  CHECK(std::abs(modular_symbol(f, T_mat, G).value) < 1e-12);
  CHECK_THROWS_AS(modular_symbol(f, Mat{2, 1, 1, 1}, G), Error);
  CHECK_THROWS_AS(modular_symbol(f, Mat{1, 0, 3, 1}, G), Error);
  for (const auto& g : G.generators) {
    const Estimate a = modular_symbol(f, g, G, I1), b = modular_symbol(f, g, G, cplx(0, 2));
    CHECK(std::abs(a.value - b.value) < 1e-10);
  }
  const Mat g{-1097, -294, 5735, 1537}, d{7698, 5425, -20239, -14263};
  const auto forms = load_forms(level37(), 2, NumericOptions{});
  for (const auto& h : forms) {
    const Estimate sum = modular_symbol(h, g, level37()) + modular_symbol(h, d, level37());
    CHECK(std::abs(modular_symbol(h, g * d, level37()).value - sum.value) < 1e-9);
  }
}

TEST_CASE("period polynomials") {
  const auto& G = level11();
  const CuspForm f = form11();
  for (const auto& c : period_polynomial(f, Mat{}, G).coeffs) CHECK(std::abs(c.value) < 1e-14);
  for (const auto& g : G.generators) {
    const auto p = period_polynomial(f, g, G);
    REQUIRE(p.coeffs.size() == 1);
    CHECK(std::abs(p.coeffs[0].value - modular_symbol(f, g.inv(), G).value) < 1e-12);
  }
  const CuspForm h = load_forms(G, 4, NumericOptions{}).at(0);
  const Mat a = G.generators[1], b = G.generators[2];
  const auto whole = period_polynomial(h, a * b, G);
  const auto left = slash_period(period_polynomial(h, a, G), b, 4);
  const auto right = period_polynomial(h, b, G);
  REQUIRE(whole.coeffs.size() == 3);
  for (int j = 0; j < 3; ++j) CHECK(std::abs((whole.coeffs[j] - left.coeffs[j] - right.coeffs[j]).value) < 1e-10);
}
