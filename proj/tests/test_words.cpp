#include "doctest.h"
#include "hoform/error.hpp"
#include "hoform/words.hpp"

#include <algorithm>
#include <set>

using namespace hoform;

namespace {

GroupProfile g1() { return GroupProfile::torsion_free(1, 2); }

bool contains(const std::vector<IndexEntry>& v, const IndexEntry& e) {
  return std::any_of(v.begin(), v.end(), [&](const IndexEntry& x) { return x.word == e.word && x.base == e.base; });
}

}  // namespace

TEST_CASE("shuffles of type (1,3)") {
  auto s = enumerate_shuffles(1, 3);
  REQUIRE(s.size() == 2);
  CHECK(s[0].phi == std::vector<int>{1});
  CHECK(s[0].psi == std::vector<int>{2});
  CHECK(s[1].phi == std::vector<int>{2});
  CHECK(s[1].psi == std::vector<int>{1});
  CHECK(is_identity_shuffle(s[0]));
  CHECK_FALSE(is_identity_shuffle(s[1]));
}

TEST_CASE("shuffle edge types") {
  auto s = enumerate_shuffles(0, 2);
  REQUIRE(s.size() == 1);
  CHECK(s[0].phi.empty());
  CHECK(s[0].psi == std::vector<int>{1});
  CHECK(is_identity_shuffle(s[0]));
  CHECK(enumerate_shuffles(2, 5).size() == 6);
  CHECK_THROWS_AS(enumerate_shuffles(3, 3), Error);
  CHECK_THROWS_AS(enumerate_shuffles(-1, 3), Error);
}

TEST_CASE("shuffle counts match binomials and are valid") {
  for (int t = 1; t <= 8; ++t) {
    for (int r = 0; r < t; ++r) {
      auto all = enumerate_shuffles(r, t);
      CHECK(all.size() == binomial(t - 1, r));
      int identities = 0;
      std::set<std::vector<int>> seen;
      for (const auto& s : all) {
        std::vector<int> image = s.phi;
        image.insert(image.end(), s.psi.begin(), s.psi.end());
        std::sort(image.begin(), image.end());
        for (int i = 0; i < t - 1; ++i) CHECK(image[i] == i + 1);
        CHECK(std::is_sorted(s.phi.begin(), s.phi.end()));
        CHECK(std::is_sorted(s.psi.begin(), s.psi.end()));
        seen.insert(s.phi);
        identities += is_identity_shuffle(s);
      }
      CHECK(seen.size() == all.size());
      CHECK(identities == 1);
    }
  }
}

TEST_CASE("J and I for g=1, k=2") {
  auto p = g1();
  CHECK(enumerate_J(2, 2, p).size() == 4);
  CHECK(enumerate_J(3, 2, p).size() == 8);
  auto j1 = enumerate_J(1, 2, p);
  REQUIRE(j1.size() == 2);
  CHECK(j1[0].word.empty());

  auto i2 = enumerate_I(2, 2, p);
  CHECK(i2.size() == 3);
  CHECK_FALSE(contains(i2, {{-1}, BaseForm::cusp(2, 1)}));

  auto i3 = enumerate_I(3, 2, p);
  CHECK(i3.size() == 4);
  CHECK_FALSE(contains(i3, {{-1, 1}, BaseForm::cusp(2, 1)}));
  CHECK_FALSE(contains(i3, {{-1, 1}, BaseForm::eisenstein(2, 1)}));
  CHECK_FALSE(contains(i3, {{1, -1}, BaseForm::cusp(2, 1)}));
  CHECK_FALSE(contains(i3, {{-1, -1}, BaseForm::cusp(2, 1)}));
}

TEST_CASE("higher weight has no tail exclusion") {
  auto p = g1();
  const int d = p.dim_modular_forms(4);
  CHECK(enumerate_I(2, 4, p).size() == static_cast<std::size_t>(2 * d));
  CHECK_THROWS_AS(enumerate_J(2, 3, p), Error);
  CHECK_THROWS_AS(enumerate_J(0, 2, p), Error);
}

TEST_CASE("exclusion reasons") {
  CHECK(exclusion_reason({{-1, 1}, BaseForm::eisenstein(2, 1)}, 2) == ExclusionReason::adjacent_pattern);
  CHECK(exclusion_reason({{-1}, BaseForm::cusp(2, 1)}, 2) == ExclusionReason::f1_tail);
  CHECK(exclusion_reason({{1}, BaseForm::cusp(2, 1)}, 2) == ExclusionReason::none);
  CHECK(to_string(ExclusionReason::f1_tail) == "f1-tail");
}

TEST_CASE("I is J minus excluded entries") {
  for (int g : {1, 2}) {
    auto p = GroupProfile::torsion_free(g, 3);
    for (int k : {2, 4}) {
      for (int t = 1; t <= 4; ++t) {
        auto J = enumerate_J(t, k, p);
        auto I = enumerate_I(t, k, p);
        std::size_t expected = p.basis(k).size();
        for (int i = 1; i < t; ++i) expected *= 2 * g;
        CHECK(J.size() == expected);
        for (const auto& e : J) {
          CHECK(contains(I, e) == (exclusion_reason(e, k) == ExclusionReason::none));
        }
        for (const auto& e : I) CHECK(contains(J, e));
      }
    }
  }
}

TEST_CASE("profiles and labels") {
  auto p = GroupProfile::torsion_free(1, 2);
  CHECK(p.dim_cusp_forms(2) == 1);
  CHECK(p.dim_modular_forms(2) == 2);
  CHECK(p.dim_cusp_forms(4) == 2);
  CHECK(p.dim_modular_forms(4) == 4);
  auto b = p.basis(2);
  REQUIRE(b.size() == 2);
  CHECK(b[0].label() == "f1");
  CHECK(b[1].label() == "e2.1");
  for (const auto& x : p.basis(4)) CHECK(parse_base_form(x.label()) == x);
  CHECK(parse_base_form("1") == BaseForm::constant_one());
  CHECK_FALSE(parse_base_form("q3").has_value());
  CHECK_THROWS_AS(GroupProfile(1, 1, {}), Error);
  CHECK_THROWS_AS(validate_word({2}, 1), Error);
  CHECK(format_word({1, -1}) == "[1,-1]");
}
