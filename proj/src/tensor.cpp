#include "hoform/tensor.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "hoform/error.hpp"

namespace hoform {

void SymbolTensor::add(TermKey key, const Scalar& coeff) {
  if (coeff == 0) return;
  if (static_cast<int>(key.slots.size()) != slots_) {
    throw Error(ErrorKind::shape_error, "term with " + std::to_string(key.slots.size()) +
                                            " slots added to a " + std::to_string(slots_) + "-slot tensor");
  }
  for (auto& m : key.slots) std::sort(m.begin(), m.end());
  auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar SymbolTensor::coefficient(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar(0) : it->second;
}

bool SymbolTensor::all_degree_one() const {
  for (const auto& [key, c] : terms_) {
    for (const auto& m : key.slots) {
      if (m.size() != 1) return false;
    }
  }
  return true;
}

SymbolTensor& SymbolTensor::operator+=(const SymbolTensor& other) {
  if (other.slots_ != slots_) throw Error(ErrorKind::shape_error, "slot mismatch in tensor sum");
  for (const auto& [key, c] : other.terms_) add(key, c);
  return *this;
}

SymbolTensor& SymbolTensor::operator-=(const SymbolTensor& other) {
  if (other.slots_ != slots_) throw Error(ErrorKind::shape_error, "slot mismatch in tensor difference");
  for (const auto& [key, c] : other.terms_) add(key, -c);
  return *this;
}

SymbolTensor& SymbolTensor::operator*=(const Scalar& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

SymbolTensor operator+(SymbolTensor a, const SymbolTensor& b) { return a += b; }
SymbolTensor operator-(SymbolTensor a, const SymbolTensor& b) { return a -= b; }
SymbolTensor operator*(const Scalar& s, SymbolTensor a) { return a *= s; }

std::string format_monomial(const SlotMonomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(m[i]);
  }
  return out;
}

std::string SymbolTensor::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) out << '\n';
    first = false;
    out << c.get_str() << " * [";
    for (std::size_t i = 0; i < key.slots.size(); ++i) {
      if (i) out << '|';
      out << format_monomial(key.slots[i]);
    }
    out << "] * " << key.base.label();
    if (key.kappa > 0) out << " * kappa^" << key.kappa;
  }
  return out.str();
}

SymbolTensor pure_tensor(const Word& word, const BaseForm& base, int genus) {
  validate_word(word, genus);
  SymbolTensor out(static_cast<int>(word.size()));
  TermKey key;
  for (int letter : word) key.slots.push_back({letter});
  key.base = base;
  out.add(std::move(key), 1);
  return out;
}

SymbolTensor tensor_combine(std::span<const Scalar> scalars, std::span<const SymbolTensor> tensors) {
  if (scalars.size() != tensors.size()) {
    throw Error(ErrorKind::invalid_arguments, "scalar/tensor count mismatch");
  }
  if (tensors.empty()) return SymbolTensor(0);
  SymbolTensor out(tensors.front().slots());
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (tensors[i].slots() != out.slots()) throw Error(ErrorKind::shape_error, "slot mismatch in combination");
    for (const auto& [key, c] : tensors[i].terms()) out.add(key, scalars[i] * c);
  }
  return out;
}

Word key_word(const TermKey& key) {
  Word w;
  w.reserve(key.slots.size());
  for (const auto& m : key.slots) {
    if (m.size() != 1) throw Error(ErrorKind::not_pure, "slot monomial of degree " + std::to_string(m.size()));
    w.push_back(m.front());
  }
  return w;
}

bool tensor_in_A(const SymbolTensor& tensor, int t, int k, const GroupProfile& profile) {
  if (tensor.slots() != t - 1) throw Error(ErrorKind::shape_error, "tensor slot count differs from t-1");
  for (const auto& [key, c] : tensor.terms()) {
    IndexEntry e{key_word(key), key.base};
    if (key.kappa != 0 || e.base.weight != k || !in_J(e, profile)) return false;
    if (exclusion_reason(e, k) == ExclusionReason::none) return false;
  }
  return true;
}

std::size_t tensor_rank(std::span<const SymbolTensor> tensors) {
  // Incremental sparse row echelon form keyed by leading column.
  std::map<TermKey, int> column;
  using Row = std::map<int, Scalar>;
  std::map<int, Row> pivots;  // leading column -> normalised row
  for (const auto& t : tensors) {
    Row row;
    for (const auto& [key, c] : t.terms()) {
      auto [it, inserted] = column.try_emplace(key, static_cast<int>(column.size()));
      row[it->second] = c;
    }
    while (!row.empty()) {
      auto lead = row.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) {
        const Scalar inv = 1 / lead->second;
        for (auto& [col, v] : row) v *= inv;
        pivots.emplace(lead->first, std::move(row));
        break;
      }
      const Scalar factor = lead->second;
      for (const auto& [col, v] : p->second) {
        auto& slot = row[col];
        slot -= factor * v;
        if (slot == 0) row.erase(col);
      }
    }
  }
  return pivots.size();
}

SymbolTensor substitute_parabolic(const SymbolTensor& tensor, int slot) {
  if (slot < 1 || slot > tensor.slots()) {
    throw Error(ErrorKind::shape_error, "slot " + std::to_string(slot) + " outside 1.." + std::to_string(tensor.slots()));
  }
  SymbolTensor out(tensor.slots() - 1);
  for (const auto& [key, c] : tensor.terms()) {
    // Every letter names a cuspidal weight-2 form, whose symbol vanishes on parabolics.
    if (!key.slots[slot - 1].empty()) continue;
    TermKey reduced = key;
    reduced.slots.erase(reduced.slots.begin() + (slot - 1));
    out.add(std::move(reduced), c);
  }
  return out;
}

}  // namespace hoform
