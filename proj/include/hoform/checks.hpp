#pragma once

// Numeric verification suites: modular-symbol properties, iterated-integral
// identities, the product rule for iterated slashes, and the period cocycle.

#include <cstdint>
#include <string>
#include <vector>

#include "hoform/iterated.hpp"
#include "hoform/numeric.hpp"

namespace hoform {

enum class CheckStatus { pass, fail, precision_error, skipped };
std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string kind;  // e.g. "additivity", "path-lemma"
  std::string name;  // kind followed by the instance
  double residual = 0;
  double bound = 0;  // propagated error of the compared quantities
  double tolerance = 0;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  double max_residual() const;
  /// Largest residual per kind, in order of first appearance.
  std::vector<std::pair<std::string, double>> max_by_kind() const;
  bool passed() const;  // no fail and no precision-error
  std::size_t count(CheckStatus s) const;
};

/// Additivity on seeded random generator words, inversion, parabolic and
/// identity vanishing, base points i and 2i, and segment quadrature.
SuiteResult symbol_suite(const GroupData& G, const NumericOptions& opt, int random_pairs = 24,
                         std::uint32_t seed = 11);

/// Path splitting and S-difference identities for all words of length
/// <= max_length, plus the quadrature route and the composition expansion.
/// Length 3 is checked at 100 times the tolerance.
SuiteResult iterated_suite(const IteratedContext& ctx, int max_length);

/// A concrete order-1 or order-2 weight-2 function: f_j, or f_j times int_i^z f_j.
struct ShuffleFactor {
  int letter = 1;
  bool with_primitive = false;

  int order() const { return with_primitive ? 2 : 1; }
  std::string label() const;
};

/// Max residual of the shuffle product rule for F G over the given matrices
/// (exactly order(F) + order(G) - 2 of them) at each sample point.
CheckResult check_shuffle_numeric(const IteratedContext& ctx, const ShuffleFactor& F, const ShuffleFactor& G,
                                  const std::vector<Mat>& gammas, const std::vector<cplx>& zs, double tol);

/// Factor pairs with orders <= 2 over generator tuples, at 100 times the tolerance.
SuiteResult shuffle_suite(const IteratedContext& ctx);

/// psi(g d) - psi(g)|d - psi(d) on all generator pairs for each weight the
/// fixture carries; in weight 2 also psi(g) against the symbol of g^{-1}.
SuiteResult cocycle_suite(const GroupData& G, const NumericOptions& opt, const std::vector<int>& weights);

}  // namespace hoform
