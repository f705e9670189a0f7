#pragma once

// Exact linear combinations of per-slot modular-symbol monomials with basis
// form coefficients.  Every functional equation in the construction is stated,
// compared and rank-tested in this normal form.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hoform/words.hpp"

namespace hoform {

using Scalar = mpq_class;

/// Sorted multiset of signed letters occupying one slot.  Degree 1 in every
/// standard tensor; other degrees only appear in the literal transcription of
/// the exceptional cuspidal leaf.
using SlotMonomial = std::vector<int>;

struct TermKey {
  std::vector<SlotMonomial> slots;
  BaseForm base;
  int kappa = 0;

  auto operator<=>(const TermKey&) const = default;
};

class SymbolTensor {
 public:
  using Terms = std::map<TermKey, Scalar>;

  explicit SymbolTensor(int slots = 0) : slots_(slots) {}

  int slots() const { return slots_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff to the term; zero results are erased.
  void add(TermKey key, const Scalar& coeff);
  Scalar coefficient(const TermKey& key) const;

  /// True iff every slot monomial has degree exactly 1.
  bool all_degree_one() const;

  SymbolTensor& operator+=(const SymbolTensor& other);
  SymbolTensor& operator-=(const SymbolTensor& other);
  SymbolTensor& operator*=(const Scalar& s);

  bool operator==(const SymbolTensor& other) const = default;

  /// Canonical text: one term per line, `coeff * [s1|s2] * base (* kappa^n)`,
  /// in sorted key order.  The zero tensor prints as `0`.
  std::string to_string() const;

 private:
  int slots_;
  Terms terms_;
};

SymbolTensor operator+(SymbolTensor a, const SymbolTensor& b);
SymbolTensor operator-(SymbolTensor a, const SymbolTensor& b);
SymbolTensor operator*(const Scalar& s, SymbolTensor a);

/// Single term with coefficient 1; letters validated against the genus.
SymbolTensor pure_tensor(const Word& word, const BaseForm& base, int genus);

SymbolTensor tensor_combine(std::span<const Scalar> scalars, std::span<const SymbolTensor> tensors);

/// Word read off a tensor key whose slots all have degree 1.
Word key_word(const TermKey& key);

/// Membership in A_{t,k}: every term's (word, base) lies in J_{t,k} \ I_{t,k}.
bool tensor_in_A(const SymbolTensor& tensor, int t, int k, const GroupProfile& profile);

/// Exact rank over Q of the tensors as vectors in the (slots, base, kappa) basis.
std::size_t tensor_rank(std::span<const SymbolTensor> tensors);

/// Evaluates the given slot at a parabolic element: terms with a cuspidal
/// symbol there vanish, others lose the slot.  Slot is 1-based.
SymbolTensor substitute_parabolic(const SymbolTensor& tensor, int slot);

std::string format_monomial(const SlotMonomial& m);

}  // namespace hoform
