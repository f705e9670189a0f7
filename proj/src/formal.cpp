#include "hoform/formal.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <unordered_map>

#include "hoform/error.hpp"

namespace hoform {

namespace {

BaseForm multiply_bases(const BaseForm& x, const BaseForm& y) {
  if (x.is_one()) return y;
  if (y.is_one()) return x;
  throw Error(ErrorKind::unsupported_product, "product of two non-constant forms " + x.label() + " * " + y.label());
}

Exactness join(Exactness a, Exactness b) {
  return (a == Exactness::modulo_A || b == Exactness::modulo_A) ? Exactness::modulo_A : Exactness::exact;
}

// Interleaves the slot monomials of two equations along every shuffle.
SymbolTensor shuffle_equations(const SymbolTensor& left, const SymbolTensor& right) {
  const int n = left.slots() + right.slots();
  SymbolTensor out(n);
  for (const auto& s : enumerate_shuffles(left.slots(), n + 1)) {
    for (const auto& [lk, lc] : left.terms()) {
      for (const auto& [rk, rc] : right.terms()) {
        TermKey key;
        key.slots.resize(n);
        for (int a = 0; a < left.slots(); ++a) key.slots[s.phi[a] - 1] = lk.slots[a];
        for (int b = 0; b < right.slots(); ++b) key.slots[s.psi[b] - 1] = rk.slots[b];
        key.base = multiply_bases(lk.base, rk.base);
        key.kappa = lk.kappa + rk.kappa;
        out.add(std::move(key), lc * rc);
      }
    }
  }
  return out;
}

SymbolTensor primitive_equation(const SymbolTensor& inner) {
  SymbolTensor out(inner.slots() + 1);
  for (const auto& [key, c] : inner.terms()) {
    if (!key.base.is_letter_form()) {
      throw Error(ErrorKind::not_integrable, "primitive of a form with base " + key.base.label());
    }
    TermKey extended = key;
    extended.slots.push_back({key.base.index});
    extended.base = BaseForm::constant_one();
    out.add(std::move(extended), c);
  }
  return out;
}

SymbolTensor exceptional_leaf_equation(const Word& word, const BaseForm& f, ExceptionalReading reading) {
  const int n = static_cast<int>(word.size());
  SymbolTensor out(n);
  TermKey main;
  for (int letter : word) main.slots.push_back({letter});
  main.base = f;
  out.add(main, 1);

  TermKey correction;
  correction.base = BaseForm::cusp(2, 1);
  if (reading == ExceptionalReading::literal) {
    for (int s = 0; s + 1 < n; ++s) correction.slots.push_back({word[s]});
    correction.slots.push_back({});
    correction.slots.front().push_back(word.front());
  } else {
    for (int s = 0; s + 1 < n; ++s) correction.slots.push_back({word[s]});
    correction.slots.push_back({-1});
  }
  out.add(std::move(correction), -1);
  return out;
}

void require_negative(const Word& word) {
  for (int letter : word) {
    if (letter >= 0) throw Error(ErrorKind::invalid_leaf, "leaf words must be all-negative, got " + format_word(word));
  }
}

}  // namespace

Form leaf_basis(const BaseForm& b) {
  SymbolTensor fe(0);
  fe.add({{}, b, 0}, 1);
  return std::make_shared<const FormalForm>(1, b.weight, LeafBasis{b}, std::move(fe), Exactness::exact);
}

Form leaf_zprime(const Word& word, const BaseForm& base, int genus) {
  require_negative(word);
  auto fe = pure_tensor(word, base, genus);
  return std::make_shared<const FormalForm>(static_cast<int>(word.size()) + 1, base.weight, LeafZprime{word, base},
                                            std::move(fe), Exactness::exact);
}

Form leaf_z(const Word& word, const BaseForm& f, int genus, ExceptionalReading reading) {
  require_negative(word);
  validate_word(word, genus);
  if (!f.is_cuspidal()) throw Error(ErrorKind::invalid_leaf, "Z-leaf needs a cuspidal base, got " + f.label());
  const bool weight_two = f.weight == 2;
  const int last = word.empty() ? 0 : -word.back();
  if (weight_two && last == 1 && f.index == 1) {
    throw Error(ErrorKind::leaf_not_constructible, "no Z-leaf for " + format_word(word) + " with base f1");
  }
  const bool exceptional = weight_two && last != 0 && f.index == last;
  SymbolTensor fe = exceptional ? exceptional_leaf_equation(word, f, reading) : pure_tensor(word, f, genus);
  return std::make_shared<const FormalForm>(static_cast<int>(word.size()) + 1, f.weight,
                                            LeafZ{word, f, reading, exceptional}, std::move(fe), Exactness::exact);
}

Form product(const Form& f, const Form& g) {
  if (f->weight() > 0 && g->weight() > 0) {
    throw Error(ErrorKind::unsupported_product, "both factors have positive weight");
  }
  auto fe = shuffle_equations(f->fe(), g->fe());
  return std::make_shared<const FormalForm>(f->order() + g->order() - 1, f->weight() + g->weight(), ProductNode{f, g},
                                            std::move(fe), join(f->exactness(), g->exactness()));
}

Form primitive(const Form& f) {
  if (f->weight() != 2) {
    throw Error(ErrorKind::not_integrable, "primitive needs weight 2, got " + std::to_string(f->weight()));
  }
  auto fe = primitive_equation(f->fe());
  return std::make_shared<const FormalForm>(f->order() + 1, 0, PrimitiveNode{f}, std::move(fe), f->exactness());
}

Form lincomb(std::vector<Scalar> scalars, std::vector<Form> forms) {
  if (forms.empty() || scalars.size() != forms.size()) {
    throw Error(ErrorKind::invalid_arguments, "linear combination needs matching nonempty inputs");
  }
  const int order = forms.front()->order();
  const int weight = forms.front()->weight();
  SymbolTensor fe(order - 1);
  Exactness ex = Exactness::exact;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i]->order() != order || forms[i]->weight() != weight) {
      throw Error(ErrorKind::shape_error, "linear combination of forms with different order or weight");
    }
    for (const auto& [key, c] : forms[i]->fe().terms()) fe.add(key, scalars[i] * c);
    ex = join(ex, forms[i]->exactness());
  }
  return std::make_shared<const FormalForm>(order, weight, LinCombNode{std::move(scalars), std::move(forms)},
                                            std::move(fe), ex);
}

namespace {

using Memo = std::unordered_map<const FormalForm*, SymbolTensor>;
using ProductRule = std::function<SymbolTensor(const SymbolTensor&, const SymbolTensor&)>;

SymbolTensor recompute(const Form& f, Memo& memo, const ProductRule& rule, int genus) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  SymbolTensor fe = std::visit(
      [&](const auto& node) -> SymbolTensor {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafBasis>) {
          SymbolTensor out(0);
          out.add({{}, node.base, 0}, 1);
          return out;
        } else if constexpr (std::is_same_v<T, LeafZprime>) {
          return pure_tensor(node.word, node.base, genus);
        } else if constexpr (std::is_same_v<T, LeafZ>) {
          return node.exceptional ? exceptional_leaf_equation(node.word, node.base, node.reading)
                                  : pure_tensor(node.word, node.base, genus);
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          return rule(recompute(node.left, memo, rule, genus), recompute(node.right, memo, rule, genus));
        } else if constexpr (std::is_same_v<T, PrimitiveNode>) {
          return primitive_equation(recompute(node.inner, memo, rule, genus));
        } else {
          SymbolTensor out(f->order() - 1);
          for (std::size_t i = 0; i < node.forms.size(); ++i) {
            const auto part = recompute(node.forms[i], memo, rule, genus);
            for (const auto& [key, c] : part.terms()) out.add(key, node.scalars[i] * c);
          }
          return out;
        }
      },
      f->tree());
  if (fe != f->fe()) {
    throw Error(ErrorKind::internal_consistency, "cached equation disagrees with tree at " + serialize(f));
  }
  memo.emplace(f.get(), fe);
  return fe;
}

// Every letter in a tree is bounded by this; recomputation re-validates words.
int max_letter(const Form& f) {
  int out = 1;
  for (const auto& [key, c] : f->fe().terms()) {
    for (const auto& m : key.slots) {
      for (int l : m) out = std::max(out, std::abs(l));
    }
  }
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafZprime> || std::is_same_v<T, LeafZ>) {
          for (int l : node.word) out = std::max(out, std::abs(l));
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          out = std::max({out, max_letter(node.left), max_letter(node.right)});
        } else if constexpr (std::is_same_v<T, PrimitiveNode>) {
          out = std::max(out, max_letter(node.inner));
        } else if constexpr (std::is_same_v<T, LinCombNode>) {
          for (const auto& g : node.forms) out = std::max(out, max_letter(g));
        }
      },
      f->tree());
  return out;
}

// Leibniz expansion: each chain slot goes to the left factor, the right factor,
// or both; a factor receiving more slots than its order allows is killed, and
// a factor receiving fewer is only reachable if the other is over-full.
SymbolTensor distribute_bruteforce(const SymbolTensor& left, const SymbolTensor& right) {
  const int n = left.slots() + right.slots();
  SymbolTensor out(n);
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<int> who(n);
    int c = code, to_left = 0, to_right = 0;
    for (int i = 0; i < n; ++i) {
      who[i] = c % 3;
      c /= 3;
      if (who[i] != 1) ++to_left;   // 0: left, 1: right, 2: both
      if (who[i] != 0) ++to_right;
    }
    if (to_left != left.slots() || to_right != right.slots()) continue;
    for (const auto& [lk, lc] : left.terms()) {
      for (const auto& [rk, rc] : right.terms()) {
        TermKey key;
        key.slots.resize(n);
        int li = 0, ri = 0;
        for (int i = 0; i < n; ++i) {
          if (who[i] != 1) {
            const auto& m = lk.slots[li++];
            key.slots[i].insert(key.slots[i].end(), m.begin(), m.end());
          }
          if (who[i] != 0) {
            const auto& m = rk.slots[ri++];
            key.slots[i].insert(key.slots[i].end(), m.begin(), m.end());
          }
        }
        key.base = multiply_bases(lk.base, rk.base);
        key.kappa = lk.kappa + rk.kappa;
        out.add(std::move(key), lc * rc);
      }
    }
  }
  return out;
}

}  // namespace

SymbolTensor fe_chain(const Form& f) {
  Memo memo;
  return recompute(f, memo, shuffle_equations, max_letter(f));
}

SymbolTensor fe_chain_bruteforce(const Form& f) {
  Memo memo;
  return recompute(f, memo, distribute_bruteforce, max_letter(f));
}

namespace {

SymbolTensor parabolic(const Form& f, Memo& memo) {
  if (f->order() < 3) {
    throw Error(ErrorKind::shape_error, "parabolic chain needs order >= 3, got " + std::to_string(f->order()));
  }
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  const int out_slots = f->order() - 3;
  SymbolTensor result = std::visit(
      [&](const auto& node) -> SymbolTensor {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafBasis>) {
          throw Error(ErrorKind::internal_consistency, "basis leaf of order >= 3");
        } else if constexpr (std::is_same_v<T, LeafZprime>) {
          // All-negative leaves never start with (-1, 1).
          return SymbolTensor(out_slots);
        } else if constexpr (std::is_same_v<T, LeafZ>) {
          throw Error(ErrorKind::unsupported, "parabolic chain is defined on Z'-constructions only");
        } else if constexpr (std::is_same_v<T, PrimitiveNode>) {
          const auto& inner = node.inner;
          SymbolTensor out(out_slots);
          if (inner->order() == 2) {
            // int_i^{pi i} F for an order-2 F: kappa times its (-1; f_1) coefficient.
            TermKey probe{{{-1}}, BaseForm::cusp(2, 1), 0};
            out.add({{}, BaseForm::constant_one(), 1}, inner->fe().coefficient(probe));
            return out;
          }
          const auto chain = parabolic(inner, memo);
          for (const auto& [key, c] : chain.terms()) {
            if (!key.base.is_letter_form()) {
              throw Error(ErrorKind::not_integrable, "primitive of a form with base " + key.base.label());
            }
            TermKey extended = key;
            extended.slots.push_back({key.base.index});
            extended.base = BaseForm::constant_one();
            out.add(std::move(extended), c);
          }
          return out;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          // pi and the next generic slot must both fall on one factor.
          SymbolTensor out(out_slots);
          const int n = f->order() - 1;
          auto absorb = [&](const Form& hit, const Form& other, bool hit_is_left) {
            if (hit->order() < 3) return;
            const auto chain = parabolic(hit, memo);
            const int left_slots = (hit_is_left ? hit : other)->order() - 1;
            for (const auto& s : enumerate_shuffles(left_slots, n + 1)) {
              const auto& hit_slots = hit_is_left ? s.phi : s.psi;
              const auto& other_slots = hit_is_left ? s.psi : s.phi;
              if (hit_slots[0] != 1 || hit_slots[1] != 2) continue;
              for (const auto& [hk, hc] : chain.terms()) {
                for (const auto& [ok, oc] : other->fe().terms()) {
                  TermKey key;
                  key.slots.resize(out_slots);
                  for (std::size_t a = 2; a < hit_slots.size(); ++a) key.slots[hit_slots[a] - 3] = hk.slots[a - 2];
                  for (std::size_t b = 0; b < other_slots.size(); ++b) key.slots[other_slots[b] - 3] = ok.slots[b];
                  key.base = multiply_bases(hk.base, ok.base);
                  key.kappa = hk.kappa + ok.kappa;
                  out.add(std::move(key), hc * oc);
                }
              }
            }
          };
          absorb(node.left, node.right, true);
          absorb(node.right, node.left, false);
          return out;
        } else {
          SymbolTensor out(out_slots);
          for (std::size_t i = 0; i < node.forms.size(); ++i) {
            const auto part = parabolic(node.forms[i], memo);
            for (const auto& [key, c] : part.terms()) out.add(key, node.scalars[i] * c);
          }
          return out;
        }
      },
      f->tree());
  memo.emplace(f.get(), result);
  return result;
}

}  // namespace

SymbolTensor parabolic_chain(const Form& f) {
  Memo memo;
  return parabolic(f, memo);
}

std::string serialize(const Form& f) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LeafBasis>) {
          return "(leaf " + node.base.label() + ")";
        } else if constexpr (std::is_same_v<T, LeafZprime>) {
          return "(zp " + format_word(node.word) + " " + node.base.label() + ")";
        } else if constexpr (std::is_same_v<T, LeafZ>) {
          std::string tag;
          if (node.exceptional) tag = node.reading == ExceptionalReading::literal ? " literal" : " tail";
          return "(z " + format_word(node.word) + " " + node.base.label() + tag + ")";
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          return "(prod " + serialize(node.left) + " " + serialize(node.right) + ")";
        } else if constexpr (std::is_same_v<T, PrimitiveNode>) {
          return "(prim " + serialize(node.inner) + ")";
        } else {
          std::string out = "(lin";
          for (std::size_t i = 0; i < node.forms.size(); ++i) {
            out += " (" + node.scalars[i].get_str() + " " + serialize(node.forms[i]) + ")";
          }
          return out + ")";
        }
      },
      f->tree());
}

}  // namespace hoform
