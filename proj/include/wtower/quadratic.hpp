#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wtower/abelian.hpp"
#include "wtower/context.hpp"
#include "wtower/trees.hpp"

namespace wtower {

// Hermitian form lambda: A x A -> M with respect to an involution * on M.
// table[i][j] = lambda(a_i, a_j) in generator coordinates of M.
struct HermitianForm {
  Group A;
  Group M;
  AbelianHom involution;
  std::vector<std::vector<SparseVec>> table;

  SparseVec operator()(const SparseVec& x, const SparseVec& y) const;
  // Throws InvalidArgument on shape errors, a non-involutive *, a table that
  // is not hermitian, or values that do not vanish on relations of A.
  void validate() const;
  bool symmetric() const;
  bool trivial_involution() const;
};
using FormPtr = std::shared_ptr<const HermitianForm>;

// Validates and freezes a form.
FormPtr make_form(HermitianForm f);

// Element of M_e. Abelian model: `m` over the generators of M_e, `a` unused.
// Extension model: the pair (m, a), m over M_ee and a over A.
struct QElement {
  SparseVec m;
  SparseVec a;
};

enum class Model { abelian, extension };

// (M_e, M_ee, h, p). The extension model is M_ee x_lambda A with
// (m,a) + (m',a') = (m + m' - lambda(a,a'), a + a').
class QuadraticGroup {
 public:
  static QuadraticGroup abelian(Group me, AbelianHom h, AbelianHom p);
  static QuadraticGroup extension(FormPtr form);

  Model model() const { return model_; }
  const Group& mee() const { return mee_; }
  const Group& me() const { return me_; }  // abelian model only
  const FormPtr& form() const { return form_; }  // extension model only
  const AbelianHom& h_hom() const { return h_; }  // abelian model only
  const AbelianHom& p_hom() const { return p_; }  // abelian model only

  QElement zero() const { return {}; }
  QElement add(const QElement& x, const QElement& y) const;
  QElement neg(const QElement& x) const;
  QElement sub(const QElement& x, const QElement& y) const { return add(x, neg(y)); }
  QElement scale(const Integer& n, const QElement& x) const;
  bool equal(const QElement& x, const QElement& y) const;

  SparseVec h(const QElement& x) const;
  QElement p(const SparseVec& y) const;
  SparseVec star(const SparseVec& y) const;  // hp - id
  QElement dagger(const QElement& x) const;  // ph - id

  std::vector<QElement> generators() const;
  std::vector<std::string> generator_names() const;
  std::string format(const QElement& x) const;

 private:
  Model model_ = Model::abelian;
  Group mee_, me_;
  AbelianHom h_, p_;
  FormPtr form_;
};

// mu: A -> M_e refining lambda. mu_gens[k] = mu(a_k); mu of other elements
// follows from the refinement law unless `direct` is set.
struct QuadraticForm {
  FormPtr lambda;
  QuadraticGroup target;
  std::vector<QElement> mu_gens;
  std::function<QElement(const SparseVec&)> direct;

  QElement mu(const SparseVec& a) const;
};

struct AxiomCheck {
  std::string identity;
  int cases = 0;
  int failures = 0;
  std::string witness;  // first failing case
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool ok() const;
  const AxiomCheck* find(const std::string& identity) const;
  std::string json() const;
};

// *∘* = id, †∘† = id, *∘h = h, hph = 2h, php = p + p∘*, p∘* = †∘p, im p
// central, h additive; on generators and generator pairs.
AxiomReport check_axioms(const QuadraticGroup& q);
// The group axioms plus: refinement law, h∘mu = lambda diagonal,
// mu(-a) = mu(a)^†, mu vanishing on relations of A, mu(na) = n mu(a) +
// C(n,2) p lambda(a,a), and mu(na) = n^2 mu(a) when † is trivial.
AxiomReport check_axioms(const QuadraticForm& f);

// True if † is the identity on generators.
bool is_commutative(const QuadraticGroup& q);

// M_ee x_lambda A with p(m) = (m,0), h(m,a) = m + m^* + lambda(a,a),
// mu(a) = (0,a).
QuadraticForm universal_refinement(const FormPtr& form);

// beta_e(m,a) = p'(beta_ee(m)) + mu'(alpha(a)) on the universal refinement of
// `form`. Throws NotAMorphism unless beta_ee commutes with the involutions and
// lambda'(alpha x, alpha y) = beta_ee lambda(x, y) on generators.
struct InducedMorphism {
  QuadraticForm source;
  QuadraticForm target;
  AbelianHom alpha, beta_ee;

  QElement operator()(const QElement& x) const;
  // Abelian targets: the images of the generators span M'_e.
  bool surjective() const;
  // Homomorphism on generator pairs; h'∘beta_e = beta_ee∘h; beta_e∘p =
  // p'∘beta_ee; beta_e∘mu = mu'∘alpha; determined by (m,0) and (0,a).
  AxiomReport check() const;
};
InducedMorphism induced_morphism(const FormPtr& form, const AbelianHom& alpha,
                                 const AbelianHom& beta_ee, const QuadraticForm& target);

// Presented abelian M^c_e: the generators of M, then "mu(<key>)" per generator of A;
// relators from M, m^* - m, the twisted relations of A, and 2mu(a) - lambda(a,a).
struct CommutativeRefinement {
  QuadraticForm form;
  bool p_injective = false;
};
CommutativeRefinement universal_commutative(const FormPtr& form);
// Requires a trivial involution and a symmetric table; throws
// InvalidArgument otherwise, and WellDefinedness if p is not injective.
CommutativeRefinement universal_symmetric(const FormPtr& form);

// Abelian presentation of M_ee x_lambda A for symmetric lambda: the relators
// of M and, for each relation sum a'_i of A, sum mu(a'_i) + sum_{i<j}
// lambda(a'_i, a'_j). Generators as in universal_commutative.
Group extension_presentation(const FormPtr& form);

// Compares extension_presentation with the extension model: the map
// m -> (m,0), mu(a_k) -> (0,a_k) is checked to be well defined and to fit
// between 0 -> M -> . -> A -> 0 on both sides, with those rows exact.
struct ModelComparison {
  bool well_defined = false;
  bool rows_exact = false;
  bool inverse_agrees = false;
  bool isomorphic() const { return well_defined && rows_exact && inverse_agrees; }
  Structure structure;
};
ModelComparison compare_models(const FormPtr& form);

// A symmetric invariant pairing on a quasi-Lie algebra, already composed with
// alpha: pair(X, Y) = lambda(alpha X, alpha Y) for rooted trees X, Y.
struct PairingTarget {
  Group M;
  std::function<SparseVec(const RootedTree&, const RootedTree&)> pair;
};
// Psi: T_n(m) -> M with Psi(<X,Y>) = pair(X,Y), evaluated on every edge
// splitting. Throws NotInvariant if two splittings disagree.
AbelianHom psi_factorization(Context& ctx, int n, int m, const PairingTarget& target);
// All (sign, X, Y) with sign <X,Y> = t, one per edge.
struct EdgeSplit {
  int sign;
  RootedTree x, y;
};
std::vector<EdgeSplit> edge_splits(const UnrootedTree& t);

// (T_{2n})^c_e -> T^inf_{2n}, t -> t, q(J) -> J^inf.
struct BridgeResult {
  int n = 0;  // rooted order; the tree order is 2n
  int m = 1;
  Structure universal;
  Structure twisted;
  AbelianHom map;
  bool isomorphic = false;
  bool h_compatible = false;
  bool p_compatible = false;
  bool p_injective = false;
  AxiomReport axioms;  // quadratic group axioms of T^inf
  bool ok() const {
    return isomorphic && h_compatible && p_compatible && p_injective && axioms.ok();
  }
  std::string json() const;
};
BridgeResult bridge_T_infinity(Context& ctx, int n, int m);

// {"A": presentation, "M": presentation, "involution": [...], "lambda": [[...]]}
// with presentation {"generators": [names] | "rank": r, "relations": [[...]]}.
// Dense vectors throughout; involution[j] is the image of generator j
// (identity when omitted). Throws Error(Schema).
FormPtr parse_form_json(const std::string& text);

// Structure, h, p and mu tables.
std::string refinement_json(const std::string& kind, const QuadraticForm& f,
                            const AxiomReport& axioms);

}  // namespace wtower
