#pragma once

// Words over signed letters, shuffles, and the index sets J_{t,k} / I_{t,k}
// that label basis elements of higher-order modular forms.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hoform {

/// A letter is a nonzero integer with |letter| <= g.  Positive letters stand
/// for the symbol <f_j, gamma>, negative letters for its conjugate.
using Word = std::vector<int>;

void validate_word(const Word& word, int genus);
std::string format_word(const Word& word);

/// A basis modular form label.  Cuspidal weight-2 forms f_1..f_g double as
/// the alphabet of the words.
struct BaseForm {
  enum class Kind { cuspidal, eisenstein, one };

  Kind kind = Kind::one;
  int weight = 0;
  int index = 0;  // cuspidal: j in 1..dim S_k; eisenstein: cusp number (1-based)

  static BaseForm cusp(int weight, int j) { return {Kind::cuspidal, weight, j}; }
  static BaseForm eisenstein(int weight, int cusp_number) { return {Kind::eisenstein, weight, cusp_number}; }
  static BaseForm constant_one() { return {Kind::one, 0, 0}; }

  bool is_cuspidal() const { return kind == Kind::cuspidal; }
  bool is_one() const { return kind == Kind::one; }
  /// True for the weight-2 cusp form f_j attached to letter +-j.
  bool is_letter_form() const { return kind == Kind::cuspidal && weight == 2; }

  std::string label() const;

  auto operator<=>(const BaseForm&) const = default;
};

/// Inverse of BaseForm::label.
std::optional<BaseForm> parse_base_form(const std::string& label);

struct Shuffle {
  int r = 0;
  int t = 0;
  std::vector<int> phi;  // images of 1..r, 1-based, strictly increasing
  std::vector<int> psi;  // images of r+1..t-1, 1-based, strictly increasing

  bool operator==(const Shuffle&) const = default;
};

/// All shuffles of type (r,t), ordered lexicographically by the image of phi.
std::vector<Shuffle> enumerate_shuffles(int r, int t);
bool is_identity_shuffle(const Shuffle& s);

/// Genus, cusp count and the fixed bases of M_k for each available weight.
class GroupProfile {
 public:
  /// cusp_dims maps weight k >= 4 to dim S_k; dim S_2 is always the genus.
  GroupProfile(int genus, int cusps, std::map<int, int> cusp_dims);

  /// Torsion-free profile: dim S_k = (k-1)(g-1) + (k/2-1) m for k >= 4.
  static GroupProfile torsion_free(int genus, int cusps, int max_weight = 12);

  int genus() const { return genus_; }
  int cusps() const { return cusps_; }
  bool has_weight(int k) const { return cusp_dims_.contains(k); }
  std::vector<int> weights() const;
  int dim_cusp_forms(int k) const;
  int dim_modular_forms(int k) const;

  /// Cuspidal labels first, then Eisenstein labels (m-1 of them for k = 2).
  std::vector<BaseForm> basis(int k) const;
  bool in_basis(const BaseForm& b) const;

 private:
  int genus_;
  int cusps_;
  std::map<int, int> cusp_dims_;
};

struct IndexEntry {
  Word word;
  BaseForm base;

  int order() const { return static_cast<int>(word.size()) + 1; }
  int weight() const { return base.weight; }
  std::string label() const;

  auto operator<=>(const IndexEntry&) const = default;
};

enum class ExclusionReason { none, adjacent_pattern, f1_tail };
std::string_view to_string(ExclusionReason reason);

std::vector<IndexEntry> enumerate_J(int t, int k, const GroupProfile& profile);
std::vector<IndexEntry> enumerate_I(int t, int k, const GroupProfile& profile);
ExclusionReason exclusion_reason(const IndexEntry& entry, int k);
bool in_J(const IndexEntry& entry, const GroupProfile& profile);
bool in_I(const IndexEntry& entry, const GroupProfile& profile);

std::size_t binomial(int n, int r);

}  // namespace hoform
