#include "doctest.h"
#include "hoform/error.hpp"
#include "hoform/tensor.hpp"

#include <random>

using namespace hoform;

namespace {

const BaseForm f1 = BaseForm::cusp(2, 1);
const BaseForm fa = BaseForm::eisenstein(2, 1);

}  // namespace

TEST_CASE("pure tensors") {
  auto t = pure_tensor({1, -1}, fa, 1);
  CHECK(t.slots() == 2);
  CHECK(t.size() == 1);
  auto e = pure_tensor({}, f1, 1);
  CHECK(e.slots() == 0);
  CHECK(e.coefficient({{}, f1, 0}) == 1);
  CHECK_THROWS_AS(pure_tensor({2}, f1, 1), Error);
}

TEST_CASE("combinations") {
  auto t = pure_tensor({1}, f1, 1);
  std::vector<Scalar> s{1, -1};
  std::vector<SymbolTensor> ts{t, t};
  CHECK(tensor_combine(s, ts).is_zero());
  std::vector<Scalar> s2{2, 3};
  CHECK(tensor_combine(s2, ts).coefficient({{{1}}, f1, 0}) == 5);
  std::vector<SymbolTensor> bad{t, pure_tensor({1, 1}, f1, 1)};
  CHECK_THROWS_AS(tensor_combine(s, bad), Error);
  Scalar third(1, 3);
  auto u = third * t;
  u += (Scalar(2, 3) * t);
  CHECK(u == t);
}

TEST_CASE("membership in A") {
  auto p = GroupProfile::torsion_free(1, 2);
  CHECK(tensor_in_A(pure_tensor({-1, 1}, fa, 1), 3, 2, p));
  CHECK_FALSE(tensor_in_A(pure_tensor({1, -1}, fa, 1), 3, 2, p));
  CHECK(tensor_in_A(SymbolTensor(2), 3, 2, p));
  SymbolTensor sq(2);
  sq.add({{{-1, -1}, {}}, f1, 0}, 1);
  CHECK_THROWS_AS(tensor_in_A(sq, 3, 2, p), Error);
}

TEST_CASE("A is closed under addition") {
  auto p = GroupProfile::torsion_free(1, 2);
  auto J = enumerate_J(4, 2, p);
  std::vector<SymbolTensor> in_a;
  for (const auto& e : J) {
    if (exclusion_reason(e, 2) != ExclusionReason::none) in_a.push_back(pure_tensor(e.word, e.base, 1));
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, in_a.size() - 1);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = Scalar(coeff(rng)) * in_a[pick(rng)] + Scalar(coeff(rng)) * in_a[pick(rng)];
    auto b = Scalar(coeff(rng)) * in_a[pick(rng)];
    CHECK(tensor_in_A(a + b, 4, 2, p));
  }
}

TEST_CASE("rank") {
  auto a = pure_tensor({1}, f1, 1);
  auto b = pure_tensor({-1}, f1, 1);
  std::vector<SymbolTensor> two{a, b};
  CHECK(tensor_rank(two) == 2);
  std::vector<SymbolTensor> prop{a, Scalar(2) * a};
  CHECK(tensor_rank(prop) == 1);
  CHECK(tensor_rank(std::vector<SymbolTensor>{}) == 0);
  auto c = a + b;
  std::vector<SymbolTensor> dep{a, b, c};
  CHECK(tensor_rank(dep) == 2);
  std::vector<SymbolTensor> perm{c, Scalar(-7) * b, a};
  CHECK(tensor_rank(perm) == 2);
}

TEST_CASE("parabolic substitution") {
  CHECK(substitute_parabolic(pure_tensor({1, -1}, fa, 1), 1).is_zero());
  CHECK(substitute_parabolic(SymbolTensor(2), 2).is_zero());
  CHECK_THROWS_AS(substitute_parabolic(SymbolTensor(2), 3), Error);
  auto p = GroupProfile::torsion_free(2, 2);
  for (const auto& e : enumerate_J(3, 2, p)) {
    for (int s = 1; s <= 2; ++s) CHECK(substitute_parabolic(pure_tensor(e.word, e.base, 2), s).is_zero());
  }
}

TEST_CASE("canonical text") {
  auto t = pure_tensor({1, -1}, fa, 1) - Scalar(1, 2) * pure_tensor({1, 1}, fa, 1);
  CHECK(t.to_string() == "1 * [1|-1] * e2.1\n-1/2 * [1|1] * e2.1");
  CHECK(SymbolTensor(3).to_string() == "0");
}
