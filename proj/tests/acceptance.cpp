// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fixtures.hpp"
#include "hoform/checks.hpp"
#include "hoform/constructor.hpp"
#include "hoform/error.hpp"

using namespace hoform;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome shuffle_counts() {
  int types = 0;
  for (int t = 1; t <= 8; ++t) {
    for (int r = 0; r < t; ++r) {
      const auto s = enumerate_shuffles(r, t);
      int identities = 0;
      for (const auto& x : s) identities += is_identity_shuffle(x);
      if (s.size() != binomial(t - 1, r) || identities != 1) {
        return {false, fmt("type (%d,%d): %zu shuffles, %d identities", r, t, s.size(), identities)};
      }
      ++types;
    }
  }
  return {true, fmt("%d shuffle types, counts binomial(t-1,r), one identity each", types)};
}

Outcome product_soundness() {
  const GroupProfile profile = GroupProfile::torsion_free(1, 2);
  Constructor c(profile);
  std::vector<Form> positive, flat;
  for (int k : {2, 4}) {
    for (const auto& b : profile.basis(k)) positive.push_back(leaf_basis(b));
  }
  for (int t = 2; t <= 3; ++t) {
    for (int k : {2, 4}) {
      for (const auto& e : enumerate_J(t, k, profile)) {
        positive.push_back(c.construct_Zprime(e)->form);
        if (in_I(e, profile)) positive.push_back(c.construct_Z(e)->form);
      }
    }
  }
  flat.push_back(leaf_basis(BaseForm::constant_one()));
  for (const auto& x : positive) {
    if (x->weight() != 2 || x->order() > 3) continue;
    try {
      flat.push_back(primitive(x));
    } catch (const Error&) {
      // Eisenstein bases have no primitive.
    }
  }
  std::size_t checked = 0;
  auto compare = [&](const Form& p) {
    ++checked;
    return fe_chain(p) == fe_chain_bruteforce(p);
  };
  for (const auto& y : flat) {
    for (const auto* side : {&positive, &flat}) {
      for (const auto& x : *side) {
        if (x->order() + y->order() - 1 > 4) continue;
        if (!compare(product(x, y)) || !compare(product(y, x))) {
          return {false, "mismatch for " + serialize(product(x, y))};
        }
      }
    }
  }
  return {true, fmt("%zu products of total order <= 4 (g=1) match the brute-force expansion", checked)};
}

struct Grid {
  std::string label;
  GroupProfile profile;
};

std::vector<Grid> grids() {
  return {{"g=1", GroupProfile::torsion_free(1, 2)}, {"g=2", testing::level37().profile()}};
}

Outcome construction(bool rank_only) {
  std::size_t entries = 0, failures = 0, levels = 0, rank_failures = 0;
  std::string where;
  for (const auto& grid : grids()) {
    Constructor c(grid.profile);
    for (int k : {2, 4}) {
      for (int t = 1; t <= 4; ++t) {
        const LevelReport r = verify_level(c, t, k);
        ++levels;
        for (const auto& e : r.checks) {
          ++entries;
          if (!e.passed) {
            ++failures;
            if (where.empty()) where = grid.label + " " + e.entry.label();
          }
        }
        if (!r.rank_ok) {
          ++rank_failures;
          if (where.empty()) where = fmt("%s t=%d k=%d rank %zu of %zu", grid.label.c_str(), t, k, r.rank, r.I_size);
        }
      }
    }
  }
  if (rank_only) {
    return {rank_failures == 0, rank_failures ? where : fmt("rank equals |I| on all %zu (g,k,t) levels", levels)};
  }
  return {failures == 0, failures ? fmt("%zu of %zu entries fail, first ", failures, entries) + where
                                  : fmt("%zu Z/Z' constructions over %zu levels", entries, levels)};
}

Outcome parabolic() {
  Constructor c(GroupProfile::torsion_free(1, 2));
  std::size_t n = 0, hits = 0;
  for (int k : {2, 4}) {
    for (int t : {3, 4}) {
      for (const auto& l : check_parabolic_lemma(c, t, k)) {
        ++n;
        hits += !l.expected.is_zero();
        if (!l.passed) return {false, "mismatch at " + l.entry.label()};
      }
    }
  }
  return {true, fmt("%zu chains (%zu with kappa times the tail tensor, rest zero)", n, hits)};
}

Outcome suite_outcome(const SuiteResult& s) {
  std::string detail = fmt("%zu checks, max residual %.2e", s.checks.size(), s.max_residual());
  if (s.count(CheckStatus::fail)) detail += fmt(", %zu fail", s.count(CheckStatus::fail));
  if (s.count(CheckStatus::precision_error)) detail += fmt(", %zu precision-error", s.count(CheckStatus::precision_error));
  if (s.count(CheckStatus::skipped)) detail += fmt(", %zu skipped", s.count(CheckStatus::skipped));
  return {s.passed(), detail};
}

Outcome symbols() { return suite_outcome(symbol_suite(testing::level11(), NumericOptions{})); }

const IteratedContext& ctx11() {
  static const IteratedContext ctx(testing::level11(), NumericOptions{});
  return ctx;
}

Outcome identities() {
  const SuiteResult all = iterated_suite(ctx11(), 3);
  SuiteResult printed{"identities", {}};
  double corrected = 0;
  for (const auto& c : all.checks) {
    if (c.kind == "path-lemma" || c.kind == "S-difference") printed.checks.push_back(c);
    if (c.kind == "path-composition" || c.kind == "S-series") corrected = std::max(corrected, c.residual);
  }
  Outcome o = suite_outcome(printed);
  std::size_t short_fail = 0;
  for (const auto& c : printed.checks) {
    if (c.status == CheckStatus::fail && c.tolerance < 1e-7) ++short_fail;
  }
  o.detail += fmt(" (%zu failures at length <= 2); with path-composition signs max residual %.2e", short_fail, corrected);
  return o;
}

Outcome shuffles_numeric() { return suite_outcome(shuffle_suite(ctx11())); }

Outcome cocycle() { return suite_outcome(cocycle_suite(testing::level11(), NumericOptions{}, {2, 4})); }

Outcome dimensions() {
  std::string rows;
  for (const auto& grid : grids()) {
    for (int k : {2, 4}) {
      for (int t = 1; t <= 4; ++t) {
        const auto d = dimension_ZM(t, k, grid.profile);
        if (d.implemented != d.enumerated) {
          return {false, fmt("%s k=%d t=%d: formula %zu, enumeration %zu", grid.label.c_str(), k, t, d.implemented,
                             d.enumerated)};
        }
        if (t == 2 && k == 2) {
          rows += fmt("%s t=2 k=2: %zu (closed form through j=t: %zu); ", grid.label.c_str(), d.implemented,
                      d.closed_form);
        }
      }
    }
  }
  return {true, rows + "counts match enumeration for t <= 4"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 1, shuffle_counts},
      {2, 60, product_soundness},
      {3, 600, [] { return construction(false); }},
      {4, 600, [] { return construction(true); }},
      {5, 600, parabolic},
      {6, 300, symbols},
      {7, 600, identities},
      {8, 600, shuffles_numeric},
      {9, 600, cocycle},
      {10, 600, dimensions},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.seconds) {
      o.passed = false;
      o.detail += fmt(" (took %.1fs, limit %.0fs)", elapsed, c.seconds);
    }
    failed += !o.passed;
    std::printf("criterion %d: %s  %s [%.2fs]\n", c.id, o.passed ? "PASS" : "FAIL", o.detail.c_str(), elapsed);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
