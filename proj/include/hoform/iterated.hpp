#pragma once

// Iterated Eichler integrals toward the cusps infinity and 0, the F- and
// S-functions built from them, and the identities they satisfy.

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hoform/numeric.hpp"
#include "hoform/words.hpp"

namespace hoform {

inline constexpr int max_iterated_depth = 4;

/// Weight-2 forms f_1..f_g of one group with cached nested q-expansions.
class IteratedContext {
 public:
  IteratedContext(const GroupData& G, const NumericOptions& opt);

  const GroupData& group() const { return G_; }
  const NumericOptions& options() const { return opt_; }
  const CuspForm& form(int letter) const;
  int genus() const { return static_cast<int>(forms_.size()); }

  /// int_z^{cusp} F^{cusp}_w(t) dt: the nested integral with f_{w_1} outermost.
  /// Cusp is "inf" or "0"; the empty word gives 1.
  Estimate I(const Word& w, const std::string& cusp, cplx z) const;
  /// F^{cusp}_w(z) = f_{w_1}(z) times the nested integral of the rest.
  Estimate F(const Word& w, const std::string& cusp, cplx z) const;
  /// int_b^a F^a_w(t) dt between the two cusps.
  Estimate cusp_integral(const Word& w, const std::string& b, const std::string& a) const;
  /// I(w, "inf", z) by quadrature of the outer integral up to z + 5i.
  Estimate I_quadrature(const Word& w, cplx z) const;

  /// S-function by its recursion, and by summing over compositions of w.
  Estimate S(const Word& w, const std::string& cusp, cplx z) const;
  Estimate S_compositions(const Word& w, const std::string& cusp, cplx z) const;

 private:
  struct Nested {
    std::vector<cplx> coeffs;  // of q^n, n >= 1
    double C, e;               // |coeff_n| <= C n^e
  };
  const Nested& nested(const Word& w) const;
  Estimate I_infinity(const Word& w, cplx z) const;
  /// Iterated integral along the path from z to y.
  Estimate segment(const Word& w, cplx z, cplx y) const;
  double fricke_sign(const Word& w) const;
  void check_word(const Word& w) const;

  const GroupData& G_;
  NumericOptions opt_;
  std::vector<CuspForm> forms_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<Word, Nested> nested_;
};

struct IdentityCheck {
  std::string name;
  Estimate lhs, rhs;
  double residual = 0;
  double bound = 0;  // propagated error of both sides
  /// The same identity with the sign fixed by Chen's path composition; empty
  /// name when the printed form needs no correction.
  std::string corrected_name;
  double corrected_residual = 0;
};

/// int_z^a F^a_w - int_z^b F^b_w against the printed path-splitting display.
IdentityCheck check_path_lemma(const IteratedContext& ctx, const Word& w, const std::string& a, const std::string& b,
                               cplx z);
/// S^a_w - S^b_w against the printed cusp-difference display.
IdentityCheck check_Sab(const IteratedContext& ctx, const Word& w, const std::string& a, const std::string& b, cplx z);

}  // namespace hoform
