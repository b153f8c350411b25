#include "wtower/quadratic.hpp"

#include <json.hpp>

#include "wtower/lie.hpp"
#include "wtower/treegroups.hpp"

namespace wtower {

using json = nlohmann::ordered_json;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

Integer choose2(const Integer& n) { return exact_div(n * (n - 1), 2); }

std::string format_vec(const Group& g, const SparseVec& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& t : v.terms()) {
    Integer c = t.coeff;
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    Integer a = c.abs();
    if (!a.is_one()) out += a.to_string() + "*";
    out += g->generator(t.index);
  }
  return out;
}

json integer_json(const Integer& x) {
  if (auto v = x.to_int64()) return *v;
  return x.to_string();
}

json matrix_json(const IntMatrix& mat) {
  json rows = json::array();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < mat.cols(); ++c) row.push_back(integer_json(mat.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json structure_json(const Structure& s) {
  json t = json::array();
  for (const auto& d : s.torsion) t.push_back(integer_json(d));
  return json{{"structure", s.to_string()}, {"free_rank", s.free_rank}, {"torsion", t}};
}

// The word sum mu(a'_i) + sum_{i<j} lambda(a'_i, a'_j) for the relation r of A,
// read as |c_k| copies of sign(c_k) a_k in the order of k, with
// mu(-a) = -mu(a) + lambda(a,a). M generators keep their indices; mu(a_k)
// sits at offset + k.
SparseVec twisted_relator(const HermitianForm& f, const SparseVec& r, std::size_t offset) {
  SparseVec out;
  const auto& terms = r.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto k = terms[i].index;
    const Integer& c = terms[i].coeff;
    Integer n = c.abs();
    out += SparseVec::unit(offset + k, c);
    Integer diag = choose2(n);
    if (c.sign() < 0) diag += n;
    out.add_scaled(f.table[k][k], diag);
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      out.add_scaled(f.table[k][terms[j].index], c * terms[j].coeff);
  }
  return out;
}

// mu(sum c_k a_k) by the refinement law, in a presentation where mu(a_k)
// sits at offset + k.
SparseVec quadratic_word(const HermitianForm& f, const SparseVec& a, std::size_t offset) {
  SparseVec out;
  const auto& terms = a.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto k = terms[i].index;
    const Integer& c = terms[i].coeff;
    out += SparseVec::unit(offset + k, c);
    out.add_scaled(f.table[k][k], choose2(c));
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      out.add_scaled(f.table[k][terms[j].index], c * terms[j].coeff);
  }
  return out;
}

std::vector<SparseVec> units(const Group& g) {
  std::vector<SparseVec> out;
  for (std::size_t i = 0; i < g->num_generators(); ++i) out.push_back(SparseVec::unit(i));
  return out;
}

class Checker {
 public:
  explicit Checker(AxiomReport& r) : report_(r) {}
  void operator()(const std::string& identity, bool ok, const std::function<std::string()>& what) {
    AxiomCheck* c = nullptr;
    for (auto& x : report_.checks)
      if (x.identity == identity) c = &x;
    if (!c) {
      report_.checks.push_back({identity, 0, 0, {}});
      c = &report_.checks.back();
    }
    ++c->cases;
    if (!ok) {
      if (c->failures == 0) c->witness = what();
      ++c->failures;
    }
  }

 private:
  AxiomReport& report_;
};

std::string mee_key(const Group& g, std::size_t i) { return g->generator(i); }

}  // namespace

// ---------------------------------------------------------------- forms

SparseVec HermitianForm::operator()(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& s : x.terms())
    for (const auto& t : y.terms()) out.add_scaled(table[s.index][t.index], s.coeff * t.coeff);
  return out;
}

void HermitianForm::validate() const {
  require(A && M, "form needs groups A and M");
  const auto n = A->num_generators();
  require(table.size() == n, "lambda table needs one row per generator of A");
  for (const auto& row : table) {
    require(row.size() == n, "lambda table must be square");
    for (const auto& v : row)
      for (const auto& t : v.terms())
        require(t.index < M->num_generators(), "lambda value outside M");
  }
  require(involution.source() && same_group(involution.source(), M) &&
              same_group(involution.target(), M),
          "involution must be an endomorphism of M");
  require(compose(involution, involution).equals(AbelianHom::identity(involution.source())),
          "involution does not square to the identity");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      require(M->equal(table[j][i], involution.apply(table[i][j])),
              "lambda is not hermitian at (" + A->generator(i) + ", " + A->generator(j) + ")");
  for (const auto& r : A->relations())
    for (std::size_t j = 0; j < n; ++j)
      require(M->is_zero((*this)(r, SparseVec::unit(j))),
              "lambda does not vanish on a relation of A against " + A->generator(j));
}

bool HermitianForm::symmetric() const {
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!M->equal(table[i][j], table[j][i])) return false;
  return true;
}

bool HermitianForm::trivial_involution() const {
  return involution.equals(AbelianHom::identity(M));
}

FormPtr make_form(HermitianForm f) {
  f.validate();
  return std::make_shared<const HermitianForm>(std::move(f));
}

// ---------------------------------------------------------------- groups

QuadraticGroup QuadraticGroup::abelian(Group me, AbelianHom h, AbelianHom p) {
  require(same_group(h.source(), me) && same_group(p.target(), me) &&
              same_group(h.target(), p.source()),
          "quadratic group needs h: M_e -> M_ee and p: M_ee -> M_e");
  QuadraticGroup q;
  q.model_ = Model::abelian;
  q.me_ = std::move(me);
  q.mee_ = h.target();
  q.h_ = std::move(h);
  q.p_ = std::move(p);
  return q;
}

QuadraticGroup QuadraticGroup::extension(FormPtr form) {
  QuadraticGroup q;
  q.model_ = Model::extension;
  q.mee_ = form->M;
  q.form_ = std::move(form);
  return q;
}

QElement QuadraticGroup::add(const QElement& x, const QElement& y) const {
  if (model_ == Model::abelian) return {x.m + y.m, {}};
  return {x.m + y.m - (*form_)(x.a, y.a), x.a + y.a};
}

QElement QuadraticGroup::neg(const QElement& x) const {
  if (model_ == Model::abelian) return {-x.m, {}};
  return {-x.m - (*form_)(x.a, x.a), -x.a};
}

QElement QuadraticGroup::scale(const Integer& n, const QElement& x) const {
  if (model_ == Model::abelian) return {n * x.m, {}};
  return {n * x.m - choose2(n) * (*form_)(x.a, x.a), n * x.a};
}

bool QuadraticGroup::equal(const QElement& x, const QElement& y) const {
  if (model_ == Model::abelian) return me_->equal(x.m, y.m);
  return mee_->equal(x.m, y.m) && form_->A->equal(x.a, y.a);
}

SparseVec QuadraticGroup::h(const QElement& x) const {
  if (model_ == Model::abelian) return h_.apply(x.m);
  return x.m + form_->involution.apply(x.m) + (*form_)(x.a, x.a);
}

QElement QuadraticGroup::p(const SparseVec& y) const {
  if (model_ == Model::abelian) return {p_.apply(y), {}};
  return {y, {}};
}

SparseVec QuadraticGroup::star(const SparseVec& y) const { return h(p(y)) - y; }

QElement QuadraticGroup::dagger(const QElement& x) const { return add(p(h(x)), neg(x)); }

std::vector<QElement> QuadraticGroup::generators() const {
  std::vector<QElement> out;
  if (model_ == Model::abelian) {
    for (auto& u : units(me_)) out.push_back({u, {}});
    return out;
  }
  for (auto& u : units(mee_)) out.push_back({u, {}});
  for (auto& u : units(form_->A)) out.push_back({{}, u});
  return out;
}

std::vector<std::string> QuadraticGroup::generator_names() const {
  if (model_ == Model::abelian) return me_->generators();
  std::vector<std::string> out;
  for (const auto& k : mee_->generators()) out.push_back("(" + k + ",0)");
  for (const auto& k : form_->A->generators()) out.push_back("(0," + k + ")");
  return out;
}

std::string QuadraticGroup::format(const QElement& x) const {
  if (model_ == Model::abelian) return format_vec(me_, x.m);
  return "(" + format_vec(mee_, x.m) + ", " + format_vec(form_->A, x.a) + ")";
}

QElement QuadraticForm::mu(const SparseVec& a) const {
  if (direct) return direct(a);
  const auto& q = target;
  QElement out;
  SparseVec central;
  const auto& terms = a.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto k = terms[i].index;
    const Integer& c = terms[i].coeff;
    out = q.add(out, q.scale(c, mu_gens[k]));
    central.add_scaled(lambda->table[k][k], choose2(c));
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      central.add_scaled(lambda->table[k][terms[j].index], c * terms[j].coeff);
  }
  return q.add(out, q.p(central));
}

// ---------------------------------------------------------------- axioms

bool AxiomReport::ok() const {
  for (const auto& c : checks)
    if (c.failures) return false;
  return true;
}

const AxiomCheck* AxiomReport::find(const std::string& identity) const {
  for (const auto& c : checks)
    if (c.identity == identity) return &c;
  return nullptr;
}

std::string AxiomReport::json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j{{"identity", c.identity}, {"cases", c.cases}, {"failures", c.failures}};
    if (c.failures) j["witness"] = c.witness;
    arr.push_back(std::move(j));
  }
  return nlohmann::ordered_json{{"ok", ok()}, {"checks", arr}}.dump();
}

bool is_commutative(const QuadraticGroup& q) {
  for (const auto& x : q.generators())
    if (!q.equal(q.dagger(x), x)) return false;
  return true;
}

AxiomReport check_axioms(const QuadraticGroup& q) {
  AxiomReport report;
  Checker check(report);
  const auto& mee = q.mee();
  const auto gens = q.generators();
  const auto names = q.generator_names();
  const auto ee = units(mee);

  for (std::size_t i = 0; i < ee.size(); ++i) {
    const auto& y = ee[i];
    auto at = [&] { return "at " + mee_key(mee, i); };
    check("star_involution", mee->equal(q.star(q.star(y)), y), at);
    if (q.model() == Model::extension)
      check("star_is_hp_minus_id", mee->equal(q.star(y), q.form()->involution.apply(y)), at);
    check("php", q.equal(q.p(q.h(q.p(y))), q.add(q.p(y), q.p(q.star(y)))), at);
    check("p_star_dagger_p", q.equal(q.p(q.star(y)), q.dagger(q.p(y))), at);
    for (std::size_t j = 0; j < gens.size(); ++j)
      check("p_central", q.equal(q.add(q.p(y), gens[j]), q.add(gens[j], q.p(y))),
            [&] { return "p(" + mee_key(mee, i) + ") against " + names[j]; });
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& x = gens[i];
    auto at = [&] { return "at " + names[i]; };
    check("dagger_involution", q.equal(q.dagger(q.dagger(x)), x), at);
    check("star_h", mee->equal(q.star(q.h(x)), q.h(x)), at);
    check("hph_2h", mee->equal(q.h(q.p(q.h(x))), Integer(2) * q.h(x)), at);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto& y = gens[j];
      auto pair = [&] { return "at " + names[i] + ", " + names[j]; };
      check("h_additive", mee->equal(q.h(q.add(x, y)), q.h(x) + q.h(y)), pair);
      check("dagger_antihomomorphism",
            q.equal(q.dagger(q.add(x, y)), q.add(q.dagger(y), q.dagger(x))), pair);
    }
  }
  return report;
}

AxiomReport check_axioms(const QuadraticForm& f) {
  AxiomReport report = check_axioms(f.target);
  Checker check(report);
  const auto& q = f.target;
  const auto& lam = *f.lambda;
  const auto& A = lam.A;
  const auto& mee = q.mee();
  const auto n = A->num_generators();

  // generators, pairwise sums and negatives
  std::vector<SparseVec> sample = units(A);
  for (std::size_t i = 0; i < n; ++i) {
    sample.push_back(-SparseVec::unit(i));
    for (std::size_t j = i + 1; j < n; ++j)
      sample.push_back(SparseVec::unit(i) + SparseVec::unit(j));
  }
  auto show = [&](const SparseVec& a) { return format_vec(A, a); };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      check("lambda_hermitian",
            mee->equal(lam.table[j][i], q.star(lam.table[i][j])),
            [&] { return "at " + A->generator(i) + ", " + A->generator(j); });

  for (const auto& a : sample) {
    const auto mu_a = f.mu(a);
    check("h_mu", mee->equal(q.h(mu_a), lam(a, a)), [&] { return "at " + show(a); });
    check("mu_hermitian", q.equal(f.mu(-a), q.dagger(mu_a)), [&] { return "at " + show(a); });
    for (const auto& b : sample)
      check("refinement", q.equal(f.mu(a + b), q.add(q.add(mu_a, f.mu(b)), q.p(lam(a, b)))),
            [&] { return "at " + show(a) + ", " + show(b); });
  }
  for (const auto& r : A->relations()) {
    check("mu_relations", q.equal(f.mu(r), q.zero()), [&] { return "at " + show(r); });
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = SparseVec::unit(i);
      check("mu_relations", q.equal(f.mu(a + r), f.mu(a)),
            [&] { return "at " + show(a) + " + " + show(r); });
    }
  }
  const bool commutative = is_commutative(q);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = SparseVec::unit(i);
    const auto mu_a = f.mu(a);
    for (int k = -3; k <= 3; ++k) {
      const Integer c(k);
      const auto lhs = f.mu(c * a);
      auto at = [&] { return "at " + std::to_string(k) + "*" + A->generator(i); };
      check("mu_multiple",
            q.equal(lhs, q.add(q.scale(c, mu_a), q.p(choose2(c) * lam(a, a)))), at);
      if (commutative) check("mu_square", q.equal(lhs, q.scale(c * c, mu_a)), at);
    }
  }
  return report;
}

// ---------------------------------------------------------------- universal

QuadraticForm universal_refinement(const FormPtr& form) {
  QuadraticForm f;
  f.lambda = form;
  f.target = QuadraticGroup::extension(form);
  for (auto& u : units(form->A)) f.mu_gens.push_back({{}, u});
  f.direct = [](const SparseVec& a) { return QElement{{}, a}; };
  return f;
}

QElement InducedMorphism::operator()(const QElement& x) const {
  const auto& q = target.target;
  return q.add(q.p(beta_ee.apply(x.m)), target.mu(alpha.apply(x.a)));
}

bool InducedMorphism::surjective() const {
  const auto& q = target.target;
  require(q.model() == Model::abelian, "surjectivity needs an abelian target");
  std::vector<SparseVec> images;
  for (const auto& g : source.target.generators()) images.push_back((*this)(g).m);
  for (auto& u : units(q.me()))
    if (!in_subgroup(q.me(), images, u)) return false;
  return true;
}

AxiomReport InducedMorphism::check() const {
  AxiomReport report;
  Checker check(report);
  const auto& s = source.target;
  const auto& t = target.target;
  const auto gens = s.generators();
  const auto names = s.generator_names();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& x = gens[i];
    auto at = [&] { return "at " + names[i]; };
    check("h_square", t.mee()->equal(t.h((*this)(x)), beta_ee.apply(s.h(x))), at);
    check("determined_by_parts",
          t.equal((*this)(x), t.add((*this)(QElement{x.m, {}}), (*this)(QElement{{}, x.a}))), at);
    for (std::size_t j = 0; j < gens.size(); ++j)
      check("homomorphism",
            t.equal((*this)(s.add(x, gens[j])), t.add((*this)(x), (*this)(gens[j]))),
            [&] { return "at " + names[i] + ", " + names[j]; });
  }
  for (auto& y : units(s.mee()))
    check("p_square", t.equal((*this)(s.p(y)), t.p(beta_ee.apply(y))),
          [&] { return "at " + format_vec(s.mee(), y); });
  for (auto& a : units(source.lambda->A))
    check("mu_square", t.equal((*this)(source.mu(a)), target.mu(alpha.apply(a))),
          [&] { return "at " + format_vec(source.lambda->A, a); });
  return report;
}

InducedMorphism induced_morphism(const FormPtr& form, const AbelianHom& alpha,
                                 const AbelianHom& beta_ee, const QuadraticForm& target) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::NotAMorphism, msg); };
  const auto& lam2 = *target.lambda;
  if (!same_group(alpha.source(), form->A) || !same_group(alpha.target(), lam2.A))
    fail("alpha must map A to A'");
  if (!same_group(beta_ee.source(), form->M) || !same_group(beta_ee.target(), target.target.mee()))
    fail("beta_ee must map M_ee to M'_ee");
  for (auto& y : units(form->M))
    if (!lam2.M->equal(beta_ee.apply(form->involution.apply(y)),
                       target.target.star(beta_ee.apply(y))))
      fail("beta_ee does not commute with the involutions at " + format_vec(form->M, y));
  const auto n = form->A->num_generators();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!lam2.M->equal(lam2(alpha.image(i), alpha.image(j)), beta_ee.apply(form->table[i][j])))
        fail("lambda' (alpha x, alpha y) != beta_ee lambda(x, y) at " + form->A->generator(i) +
             ", " + form->A->generator(j));
  return {universal_refinement(form), target, alpha, beta_ee};
}

namespace {

std::vector<std::string> presentation_keys(const HermitianForm& f) {
  std::vector<std::string> keys = f.M->generators();
  for (const auto& k : f.A->generators()) keys.push_back("mu(" + k + ")");
  return keys;
}

}  // namespace

CommutativeRefinement universal_commutative(const FormPtr& form) {
  const auto& f = *form;
  const auto nm = f.M->num_generators();
  const auto na = f.A->num_generators();
  std::vector<SparseVec> rels = f.M->relations();
  for (std::size_t i = 0; i < nm; ++i) {
    SparseVec r = f.involution.image(i) - SparseVec::unit(i);
    if (!r.empty()) rels.push_back(std::move(r));
  }
  for (const auto& r : f.A->relations()) rels.push_back(twisted_relator(f, r, nm));
  for (std::size_t k = 0; k < na; ++k) rels.push_back(SparseVec::unit(nm + k, 2) - f.table[k][k]);
  Group me = FpAbelianGroup::make(presentation_keys(f), std::move(rels));

  std::vector<SparseVec> h_images, p_images;
  for (std::size_t i = 0; i < nm; ++i) {
    h_images.push_back(SparseVec::unit(i) + f.involution.image(i));
    p_images.push_back(SparseVec::unit(i));
  }
  for (std::size_t k = 0; k < na; ++k) h_images.push_back(f.table[k][k]);
  AbelianHom h(me, f.M, std::move(h_images));
  AbelianHom p(f.M, me, std::move(p_images));

  CommutativeRefinement out;
  out.form.lambda = form;
  out.form.target = QuadraticGroup::abelian(me, h, p);
  for (std::size_t k = 0; k < na; ++k) out.form.mu_gens.push_back({SparseVec::unit(nm + k), {}});
  out.p_injective = is_injective(p);
  return out;
}

CommutativeRefinement universal_symmetric(const FormPtr& form) {
  require(form->trivial_involution(), "symmetric refinement needs a trivial involution");
  require(form->symmetric(), "symmetric refinement needs a symmetric form");
  auto out = universal_commutative(form);
  if (!out.p_injective)
    throw Error(ErrorCode::WellDefinedness, "p is not injective for a symmetric form");
  return out;
}

Group extension_presentation(const FormPtr& form) {
  const auto& f = *form;
  require(f.symmetric(), "the extension is abelian only for symmetric forms");
  std::vector<SparseVec> rels = f.M->relations();
  for (const auto& r : f.A->relations()) rels.push_back(twisted_relator(f, r, f.M->num_generators()));
  return FpAbelianGroup::make(presentation_keys(f), std::move(rels));
}

ModelComparison compare_models(const FormPtr& form) {
  const auto& f = *form;
  const auto nm = f.M->num_generators();
  const auto na = f.A->num_generators();
  ModelComparison out;
  Group P = extension_presentation(form);
  out.structure = P->structure();
  const auto E = QuadraticGroup::extension(form);

  auto psi = [&](const SparseVec& x) {
    QElement acc;
    for (const auto& t : x.terms()) {
      QElement g = t.index < nm ? QElement{SparseVec::unit(t.index), {}}
                                : QElement{{}, SparseVec::unit(t.index - nm)};
      acc = E.add(acc, E.scale(t.coeff, g));
    }
    return acc;
  };
  auto phi = [&](const QElement& x) { return x.m + quadratic_word(f, x.a, nm); };

  out.well_defined = true;
  for (const auto& r : P->relations())
    if (!E.equal(psi(r), E.zero())) out.well_defined = false;

  std::vector<SparseVec> iota_images, pi_images;
  for (std::size_t i = 0; i < nm; ++i) {
    iota_images.push_back(SparseVec::unit(i));
    pi_images.push_back({});
  }
  for (std::size_t k = 0; k < na; ++k) pi_images.push_back(SparseVec::unit(k));
  try {
    AbelianHom iota(f.M, P, iota_images);
    AbelianHom pi(P, f.A, pi_images);
    out.rows_exact = is_injective(iota) && exact_at(iota, pi) && is_surjective(pi);
  } catch (const Error&) {
    out.rows_exact = false;
  }

  bool inverse = true;
  for (auto& u : units(P))
    if (!P->equal(phi(psi(u)), u)) inverse = false;
  const auto gens = E.generators();
  for (const auto& x : gens) {
    if (!E.equal(psi(phi(x)), x)) inverse = false;
    for (const auto& y : gens) {
      if (!P->equal(phi(E.add(x, y)), phi(x) + phi(y))) inverse = false;
      if (!E.equal(psi(phi(E.add(x, y))), E.add(x, y))) inverse = false;
    }
  }
  out.inverse_agrees = inverse;
  return out;
}

// ---------------------------------------------------------------- Psi

namespace {

void walk_splits(int sign, const RootedTree& x, const RootedTree& y, std::vector<EdgeSplit>& out) {
  out.push_back({sign, x, y});
  if (y.is_leaf()) return;
  require(!y.is_quad(), "edge splits need trivalent trees");
  // <X,(B1,B2)> = <(X,B1),B2> = -<(X,B2),B1>
  walk_splits(sign, rooted_product(x, y.left()), y.right(), out);
  walk_splits(-sign, rooted_product(x, y.right()), y.left(), out);
}

}  // namespace

std::vector<EdgeSplit> edge_splits(const UnrootedTree& t) {
  std::vector<EdgeSplit> out;
  walk_splits(1, RootedTree::leaf(t.label), t.tree, out);
  return out;
}

AbelianHom psi_factorization(Context& ctx, int n, int m, const PairingTarget& target) {
  auto T = t_group(ctx, n, m);
  std::vector<SparseVec> images;
  for (const auto& t : T->trees) {
    auto splits = edge_splits(t);
    SparseVec value = splits[0].sign * target.pair(splits[0].x, splits[0].y);
    for (std::size_t s = 1; s < splits.size(); ++s) {
      SparseVec other = splits[s].sign * target.pair(splits[s].x, splits[s].y);
      if (!target.M->equal(value, other))
        throw Error(ErrorCode::NotInvariant,
                    "pairing depends on the edge at " + t.encode() + ": split (" +
                        splits[s].x.encode() + " | " + splits[s].y.encode() + ")");
    }
    images.push_back(std::move(value));
  }
  try {
    return AbelianHom(T->group, target.M, std::move(images));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotInvariant, std::string("Psi does not respect AS/IHX: ") + e.what());
  }
}

// ---------------------------------------------------------------- bridge

std::string BridgeResult::json() const {
  nlohmann::ordered_json j{{"order", 2 * n},
                           {"labels", m},
                           {"universal", structure_json(universal)},
                           {"twisted", structure_json(twisted)},
                           {"isomorphic", isomorphic},
                           {"h_compatible", h_compatible},
                           {"p_compatible", p_compatible},
                           {"p_injective", p_injective},
                           {"axioms", nlohmann::ordered_json::parse(axioms.json())},
                           {"ok", ok()}};
  return j.dump(2);
}

BridgeResult bridge_T_infinity(Context& ctx, int n, int m) {
  require(n >= 0 && m >= 1, "bridge needs n >= 0 and m >= 1");
  ctx.check_budget(2 * n, m);
  BridgeResult out;
  out.n = n;
  out.m = m;
  auto L = lie_group(ctx, n + 1, m, Variant::quasi);
  auto T = t_group(ctx, 2 * n, m);
  auto Tinf = t_infinity(ctx, 2 * n, m);

  HermitianForm f;
  f.A = L->group;
  f.M = T->group;
  f.involution = AbelianHom::identity(T->group);
  for (const auto& x : L->trees) {
    std::vector<SparseVec> row;
    for (const auto& y : L->trees) row.push_back(T->inner(x, y));
    f.table.push_back(std::move(row));
  }
  auto form = make_form(std::move(f));
  auto cr = universal_commutative(form);
  const auto& q = cr.form.target;
  out.universal = q.me()->structure();
  out.twisted = Tinf->group->structure();
  out.p_injective = cr.p_injective;

  auto incl = infinity_inclusion(ctx, 2 * n, m);
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < T->trees.size(); ++i) images.push_back(incl.image(i));
  for (const auto& j : L->trees) images.push_back(Tinf->inf_element(j));
  out.map = AbelianHom(q.me(), Tinf->group, std::move(images));
  out.isomorphic = is_isomorphism(out.map);

  // h(t) = 2t, h(J^inf) = <J,J>
  std::vector<SparseVec> h_images;
  for (std::size_t i = 0; i < T->trees.size(); ++i) h_images.push_back(SparseVec::unit(i, 2));
  for (const auto& j : Tinf->inf_trees) h_images.push_back(T->inner(j, j));
  AbelianHom h_inf(Tinf->group, T->group, std::move(h_images));
  out.h_compatible = compose(h_inf, out.map).equals(q.h_hom());
  out.p_compatible = compose(out.map, q.p_hom()).equals(incl);
  out.axioms = check_axioms(QuadraticGroup::abelian(Tinf->group, h_inf, incl));
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::Schema, msg); }

SparseVec dense_vector(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n)
    schema(where + ": expected an array of " + std::to_string(n) + " integers");
  std::vector<Integer> v;
  for (const auto& x : j) {
    if (x.is_number_integer()) v.emplace_back(x.get<std::int64_t>());
    else if (x.is_string()) {
      try {
        v.push_back(Integer::from_string(x.get<std::string>()));
      } catch (const std::exception&) {
        schema(where + ": bad integer");
      }
    } else {
      schema(where + ": expected integers");
    }
  }
  return SparseVec::from_dense(v);
}

Group presentation(const json& j, const std::string& name, const std::string& prefix) {
  if (!j.is_object()) schema(name + ": expected an object");
  std::vector<std::string> gens;
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) schema(name + ".generators: expected an array");
    for (const auto& g : j["generators"]) {
      if (!g.is_string() || g.get<std::string>().empty())
        schema(name + ".generators: expected nonempty strings");
      gens.push_back(g.get<std::string>());
    }
  } else if (j.contains("rank")) {
    if (!j["rank"].is_number_unsigned()) schema(name + ".rank: expected a nonnegative integer");
    auto r = j["rank"].get<std::size_t>();
    for (std::size_t i = 1; i <= r; ++i) gens.push_back(prefix + std::to_string(i));
  } else {
    schema(name + ": needs \"generators\" or \"rank\"");
  }
  std::vector<SparseVec> rels;
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) schema(name + ".relations: expected an array");
    for (const auto& r : j["relations"])
      rels.push_back(dense_vector(r, gens.size(), name + ".relations"));
  }
  try {
    return FpAbelianGroup::make(std::move(gens), std::move(rels));
  } catch (const Error& e) {
    schema(name + ": " + e.what());
  }
}

}  // namespace

FormPtr parse_form_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) schema("form: expected an object");
  for (const char* k : {"A", "M", "lambda"})
    if (!j.contains(k)) schema(std::string("form: missing \"") + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "A" && it.key() != "M" && it.key() != "involution" && it.key() != "lambda")
      schema("form: unknown field \"" + it.key() + "\"");

  HermitianForm f;
  f.A = presentation(j["A"], "A", "a");
  f.M = presentation(j["M"], "M", "x");
  const auto na = f.A->num_generators(), nm = f.M->num_generators();

  if (j.contains("involution")) {
    const auto& inv = j["involution"];
    if (!inv.is_array() || inv.size() != nm)
      schema("involution: expected one image per generator of M");
    std::vector<SparseVec> images;
    for (const auto& r : inv) images.push_back(dense_vector(r, nm, "involution"));
    try {
      f.involution = AbelianHom(f.M, f.M, std::move(images));
    } catch (const Error& e) {
      schema(std::string("involution: ") + e.what());
    }
  } else {
    f.involution = AbelianHom::identity(f.M);
  }

  const auto& lam = j["lambda"];
  if (!lam.is_array() || lam.size() != na) schema("lambda: expected one row per generator of A");
  for (const auto& row : lam) {
    if (!row.is_array() || row.size() != na) schema("lambda: rows must have one entry per generator of A");
    std::vector<SparseVec> r;
    for (const auto& v : row) r.push_back(dense_vector(v, nm, "lambda"));
    f.table.push_back(std::move(r));
  }
  try {
    return make_form(std::move(f));
  } catch (const Error& e) {
    schema(e.what());
  }
}

std::string refinement_json(const std::string& kind, const QuadraticForm& f,
                            const AxiomReport& axioms) {
  const auto& lam = *f.lambda;
  const auto& q = f.target;
  auto group_json = [](const Group& g) {
    json rels = json::array();
    for (const auto& r : g->relations()) {
      json row = json::array();
      for (const auto& x : r.to_dense(g->num_generators())) row.push_back(integer_json(x));
      rels.push_back(std::move(row));
    }
    json out{{"generators", g->generators()}, {"relations", rels}};
    out.update(structure_json(g->structure()));
    return out;
  };

  json j{{"kind", kind},
         {"A", group_json(lam.A)},
         {"M", group_json(lam.M)},
         {"model", q.model() == Model::abelian ? "abelian" : "extension"}};
  if (q.model() == Model::abelian) {
    j["Me"] = group_json(q.me());
    j["h"] = matrix_json(q.h_hom().matrix());
    j["p"] = matrix_json(q.p_hom().matrix());
  } else {
    j["Me"] = json{{"elements", "pairs (m, a) with m in M and a in A"},
                   {"law", "(m,a) + (m',a') = (m + m' - lambda(a,a'), a + a')"}};
    json h = json::object();
    const auto gens = q.generators();
    const auto names = q.generator_names();
    for (std::size_t i = 0; i < gens.size(); ++i) h[names[i]] = format_vec(lam.M, q.h(gens[i]));
    j["h"] = h;
  }
  json mu = json::object();
  for (std::size_t k = 0; k < lam.A->num_generators(); ++k)
    mu[lam.A->generator(k)] = q.format(f.mu(SparseVec::unit(k)));
  j["mu"] = mu;
  j["commutative"] = is_commutative(q);
  j["axioms"] = json::parse(axioms.json());
  return j.dump(2);
}

}  // namespace wtower
