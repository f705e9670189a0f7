#include "hoform/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "hoform/error.hpp"

namespace hoform {

void validate_word(const Word& word, int genus) {
  for (int letter : word) {
    if (letter == 0 || std::abs(letter) > genus) {
      throw Error(ErrorKind::invalid_letter,
                  "letter " + std::to_string(letter) + " outside +-1..+-" + std::to_string(genus));
    }
  }
}

std::string format_word(const Word& word) {
  std::string out = "[";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(word[i]);
  }
  return out + "]";
}

std::string BaseForm::label() const {
  switch (kind) {
    case Kind::one: return "1";
    case Kind::cuspidal:
      if (weight == 2) return "f" + std::to_string(index);
      return "s" + std::to_string(weight) + "." + std::to_string(index);
    case Kind::eisenstein: return "e" + std::to_string(weight) + "." + std::to_string(index);
  }
  return "?";
}

std::optional<BaseForm> parse_base_form(const std::string& label) {
  if (label == "1") return BaseForm::constant_one();
  if (label.size() < 2) return std::nullopt;
  auto parse_int = [](const std::string& s) -> std::optional<int> {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) return std::nullopt;
    return std::stoi(s);
  };
  const char head = label[0];
  const std::string rest = label.substr(1);
  if (head == 'f') {
    auto j = parse_int(rest);
    if (!j || *j < 1) return std::nullopt;
    return BaseForm::cusp(2, *j);
  }
  if (head == 's' || head == 'e') {
    auto dot = rest.find('.');
    if (dot == std::string::npos) return std::nullopt;
    auto k = parse_int(rest.substr(0, dot));
    auto j = parse_int(rest.substr(dot + 1));
    if (!k || !j || *j < 1) return std::nullopt;
    return head == 's' ? BaseForm::cusp(*k, *j) : BaseForm::eisenstein(*k, *j);
  }
  return std::nullopt;
}

std::vector<Shuffle> enumerate_shuffles(int r, int t) {
  if (r < 0 || r >= t) {
    throw Error(ErrorKind::invalid_arguments,
                "shuffle type (" + std::to_string(r) + "," + std::to_string(t) + ") needs 0 <= r < t");
  }
  const int n = t - 1;
  std::vector<Shuffle> out;
  // Walk r-subsets of {1..n} in lexicographic order.
  std::vector<int> phi(r);
  std::iota(phi.begin(), phi.end(), 1);
  while (true) {
    Shuffle s{r, t, phi, {}};
    for (int slot = 1, p = 0; slot <= n; ++slot) {
      if (p < r && phi[p] == slot) {
        ++p;
      } else {
        s.psi.push_back(slot);
      }
    }
    out.push_back(std::move(s));
    int i = r - 1;
    while (i >= 0 && phi[i] == n - r + i + 1) --i;
    if (i < 0) break;
    ++phi[i];
    for (int j = i + 1; j < r; ++j) phi[j] = phi[j - 1] + 1;
  }
  return out;
}

bool is_identity_shuffle(const Shuffle& s) {
  for (int i = 0; i < s.r; ++i) {
    if (s.phi[i] != i + 1) return false;
  }
  for (std::size_t i = 0; i < s.psi.size(); ++i) {
    if (s.psi[i] != s.r + 1 + static_cast<int>(i)) return false;
  }
  return true;
}

GroupProfile::GroupProfile(int genus, int cusps, std::map<int, int> cusp_dims)
    : genus_(genus), cusps_(cusps), cusp_dims_(std::move(cusp_dims)) {
  if (genus < 1) throw Error(ErrorKind::invalid_arguments, "genus must be >= 1");
  if (cusps < 2) throw Error(ErrorKind::invalid_arguments, "profile needs m >= 2 inequivalent cusps");
  cusp_dims_[2] = genus;
  for (const auto& [k, d] : cusp_dims_) {
    if (k < 2 || k % 2 != 0 || d < 0) {
      throw Error(ErrorKind::invalid_arguments, "bad weight/dimension pair " + std::to_string(k));
    }
  }
}

GroupProfile GroupProfile::torsion_free(int genus, int cusps, int max_weight) {
  std::map<int, int> dims;
  for (int k = 4; k <= max_weight; k += 2) {
    dims[k] = (k - 1) * (genus - 1) + (k / 2 - 1) * cusps;
  }
  return GroupProfile(genus, cusps, std::move(dims));
}

std::vector<int> GroupProfile::weights() const {
  std::vector<int> out;
  for (const auto& [k, d] : cusp_dims_) out.push_back(k);
  return out;
}

int GroupProfile::dim_cusp_forms(int k) const {
  auto it = cusp_dims_.find(k);
  if (it == cusp_dims_.end()) throw Error(ErrorKind::unsupported_weight, "weight " + std::to_string(k));
  return it->second;
}

int GroupProfile::dim_modular_forms(int k) const {
  return dim_cusp_forms(k) + (k == 2 ? cusps_ - 1 : cusps_);
}

std::vector<BaseForm> GroupProfile::basis(int k) const {
  const int d = dim_cusp_forms(k);
  std::vector<BaseForm> out;
  for (int j = 1; j <= d; ++j) out.push_back(BaseForm::cusp(k, j));
  const int eis = k == 2 ? cusps_ - 1 : cusps_;
  for (int c = 1; c <= eis; ++c) out.push_back(BaseForm::eisenstein(k, c));
  return out;
}

bool GroupProfile::in_basis(const BaseForm& b) const {
  if (b.is_one() || !has_weight(b.weight)) return false;
  if (b.is_cuspidal()) return b.index >= 1 && b.index <= dim_cusp_forms(b.weight);
  const int eis = b.weight == 2 ? cusps_ - 1 : cusps_;
  return b.index >= 1 && b.index <= eis;
}

std::string IndexEntry::label() const { return "(" + format_word(word) + ";" + base.label() + ")"; }

std::string_view to_string(ExclusionReason reason) {
  switch (reason) {
    case ExclusionReason::none: return "none";
    case ExclusionReason::adjacent_pattern: return "adjacent-pattern";
    case ExclusionReason::f1_tail: return "f1-tail";
  }
  return "?";
}

namespace {

void append_words(int length, int genus, Word& prefix, std::vector<Word>& out) {
  if (static_cast<int>(prefix.size()) == length) {
    out.push_back(prefix);
    return;
  }
  // Letters ordered 1..g then -1..-g.
  for (int sign : {1, -1}) {
    for (int j = 1; j <= genus; ++j) {
      prefix.push_back(sign * j);
      append_words(length, genus, prefix, out);
      prefix.pop_back();
    }
  }
}

}  // namespace

std::vector<IndexEntry> enumerate_J(int t, int k, const GroupProfile& profile) {
  if (t < 1) throw Error(ErrorKind::invalid_arguments, "order t must be >= 1");
  if (!profile.has_weight(k)) throw Error(ErrorKind::unsupported_weight, "weight " + std::to_string(k));
  std::vector<Word> words;
  Word scratch;
  append_words(t - 1, profile.genus(), scratch, words);
  const auto bases = profile.basis(k);
  std::vector<IndexEntry> out;
  out.reserve(words.size() * bases.size());
  for (const auto& w : words) {
    for (const auto& b : bases) out.push_back({w, b});
  }
  return out;
}

ExclusionReason exclusion_reason(const IndexEntry& entry, int k) {
  const auto& w = entry.word;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    if (w[j] == -1 && w[j + 1] == 1) return ExclusionReason::adjacent_pattern;
  }
  if (k == 2 && !w.empty() && w.back() == -1 && entry.base == BaseForm::cusp(2, 1)) {
    return ExclusionReason::f1_tail;
  }
  return ExclusionReason::none;
}

std::vector<IndexEntry> enumerate_I(int t, int k, const GroupProfile& profile) {
  auto all = enumerate_J(t, k, profile);
  std::vector<IndexEntry> out;
  for (auto& e : all) {
    if (exclusion_reason(e, k) == ExclusionReason::none) out.push_back(std::move(e));
  }
  return out;
}

bool in_J(const IndexEntry& entry, const GroupProfile& profile) {
  for (int letter : entry.word) {
    if (letter == 0 || std::abs(letter) > profile.genus()) return false;
  }
  return profile.in_basis(entry.base);
}

bool in_I(const IndexEntry& entry, const GroupProfile& profile) {
  return in_J(entry, profile) && exclusion_reason(entry, entry.weight()) == ExclusionReason::none;
}

std::size_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::size_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::size_t>(n - r + i) / static_cast<std::size_t>(i);
  return out;
}

}  // namespace hoform
