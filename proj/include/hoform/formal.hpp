#pragma once

// Expression trees for higher-order forms.  Each node caches the full-chain
// functional equation F|(g_1-1)...(g_{t-1}-1) as a SymbolTensor; leaves are
// axiomatised Poincare-series constructions and carry their equation as data.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hoform/tensor.hpp"
#include "hoform/words.hpp"

namespace hoform {

enum class Exactness { exact, modulo_A };

/// How the second term of the exceptional cuspidal leaf (base f_j equal to the
/// form named by the last letter, j != 1, weight 2) is read.
enum class ExceptionalReading {
  /// As printed: the correction reuses slot 1's symbol (a degree-2 monomial in
  /// slot 1) and leaves the last slot empty.
  literal,
  /// Correction carries conj<f_1, gamma_{t-1}> in the last slot, so the extra
  /// term is the pure tensor (i_1..i_{t-2}, -1; f_1).
  tail_slot,
};

class FormalForm;

struct LeafBasis {
  BaseForm base;
};
struct LeafZprime {
  Word word;
  BaseForm base;
};
struct LeafZ {
  Word word;
  BaseForm base;
  ExceptionalReading reading;
  bool exceptional;
};
struct ProductNode {
  std::shared_ptr<const FormalForm> left, right;
};
struct PrimitiveNode {
  std::shared_ptr<const FormalForm> inner;
};
struct LinCombNode {
  std::vector<Scalar> scalars;
  std::vector<std::shared_ptr<const FormalForm>> forms;
};

using FormTree = std::variant<LeafBasis, LeafZprime, LeafZ, ProductNode, PrimitiveNode, LinCombNode>;
using Form = std::shared_ptr<const FormalForm>;

class FormalForm {
 public:
  FormalForm(int order, int weight, FormTree tree, SymbolTensor fe, Exactness exactness)
      : order_(order), weight_(weight), tree_(std::move(tree)), fe_(std::move(fe)), exactness_(exactness) {}

  int order() const { return order_; }
  int weight() const { return weight_; }
  const FormTree& tree() const { return tree_; }
  /// Cached full-chain functional equation (order-1 slots).
  const SymbolTensor& fe() const { return fe_; }
  Exactness exactness() const { return exactness_; }

 private:
  int order_;
  int weight_;
  FormTree tree_;
  SymbolTensor fe_;
  Exactness exactness_;
};

Form leaf_basis(const BaseForm& b);
/// Z'-leaf: every letter negative; equation is the pure tensor.
Form leaf_zprime(const Word& word, const BaseForm& base, int genus);
/// Z-leaf with cuspidal base: the two-case equation.  Throws
/// leaf-not-constructible for base f_1 with last letter -1 in weight 2.
Form leaf_z(const Word& word, const BaseForm& f, int genus,
            ExceptionalReading reading = ExceptionalReading::literal);
/// Shuffle product; at most one factor may carry non-constant bases.
Form product(const Form& f, const Form& g);
/// z -> int_i^z F(w) dw for F of weight 2 with cuspidal weight-2 bases.
Form primitive(const Form& f);
Form lincomb(std::vector<Scalar> scalars, std::vector<Form> forms);

/// Recomputes the equation from the tree and checks it against every cache.
SymbolTensor fe_chain(const Form& f);

/// Distributes the chain over products by brute force (assigning each slot to
/// left, right or both factors), without the shuffle enumerator.  Test oracle.
SymbolTensor fe_chain_bruteforce(const Form& f);

/// F|(pi_{a_m}-1)(g_3-1)...(g_{t-1}-1) for trees built from Z'-leaves, basis
/// leaves, primitives, products and combinations.  Output has order-3 slots
/// and kappa power 1, kappa = int_i^{pi i} Z'_{-1;f_1}.
SymbolTensor parabolic_chain(const Form& f);

/// Canonical prefix text, e.g. `(prod (leaf f1) (prim (zp [-1] f1)))`.
std::string serialize(const Form& f);

}  // namespace hoform
