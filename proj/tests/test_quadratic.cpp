#include <catch_amalgamated.hpp>

#include "support/random_forms.hpp"
#include "wtower/lie.hpp"
#include "wtower/quadratic.hpp"
#include "wtower/treegroups.hpp"

using namespace wtower;

namespace {

Structure st(std::size_t free, std::vector<long> tors) {
  Structure s;
  s.free_rank = free;
  for (long t : tors) s.torsion.emplace_back(t);
  return s;
}

SparseVec u(std::size_t i, long c = 1) { return SparseVec::unit(i, c); }

FormPtr form(const std::string& text) { return parse_form_json(text); }

bool passes(const AxiomReport& r, const std::string& id) {
  auto c = r.find(id);
  return c && c->cases > 0 && c->failures == 0;
}

const char* kArf = R"({"A": {"rank": 1, "relations": [[2]]},
                       "M": {"rank": 1, "relations": [[2]]},
                       "lambda": [[[1]]]})";

}  // namespace

TEST_CASE("quadratic group axioms") {
  SECTION("Z4 over Z2") {
    auto z2 = FpAbelianGroup::make({"x"}, {u(0, 2)});
    auto z4 = FpAbelianGroup::make({"y"}, {u(0, 4)});
    auto q = QuadraticGroup::abelian(z4, AbelianHom(z4, z2, {u(0)}), AbelianHom(z2, z4, {u(0, 2)}));
    auto r = check_axioms(q);
    CHECK(r.ok());
    CHECK(is_commutative(q));
    // hp = 0 = 2 id on Z2, ph = 2 id on Z4
    CHECK(z2->is_zero(q.h(q.p(u(0)))));
    CHECK(q.equal(q.p(q.h({u(0), {}})), {u(0, 2), {}}));
  }
  SECTION("coinvariants of the swap") {
    auto m = FpAbelianGroup::free({"x1", "x2"});
    auto me = FpAbelianGroup::free({"c"});
    AbelianHom h(me, m, {u(0) + u(1)});
    AbelianHom p(m, me, {u(0), u(0)});
    auto q = QuadraticGroup::abelian(me, h, p);
    CHECK(check_axioms(q).ok());
    // * = hp - id is the swap
    CHECK(q.star(u(0)) == u(1));
    CHECK(is_commutative(q));
  }
  SECTION("hph != 2h is reported") {
    auto z2 = FpAbelianGroup::make({"x"}, {u(0, 2)});
    auto q = QuadraticGroup::abelian(z2, AbelianHom::identity(z2), AbelianHom::identity(z2));
    auto r = check_axioms(q);
    CHECK_FALSE(r.ok());
    REQUIRE(r.find("hph_2h"));
    CHECK(r.find("hph_2h")->failures == 1);
    CHECK_FALSE(r.find("hph_2h")->witness.empty());
  }
}

TEST_CASE("universal refinement, extension model") {
  SECTION("zero form") {
    auto f = form(R"({"A": {"rank": 2}, "M": {"rank": 2}, "involution": [[0,1],[1,0]],
                      "lambda": [[[0,0],[0,0]],[[0,0],[0,0]]]})");
    auto q = universal_refinement(f);
    CHECK(check_axioms(q).ok());
    const auto& g = q.target;
    // direct sum: no cocycle
    CHECK(g.equal(g.add({u(0), u(1)}, {{}, u(0)}), {u(0), u(0) + u(1)}));
    CHECK(g.h({u(0), u(1)}) == u(0) + u(1));
  }
  SECTION("lambda(a,b) = ab on Z") {
    auto f = form(R"({"A": {"rank": 1}, "M": {"rank": 1}, "lambda": [[[1]]]})");
    auto q = universal_refinement(f);
    CHECK(check_axioms(q).ok());
    for (long a = -3; a <= 3; ++a) CHECK(q.target.h(q.mu(u(0, a))) == SparseVec::unit(0, a * a));
    CHECK(is_commutative(q.target) == false);  // A = Z has no 2-torsion
  }
  SECTION("non-commutative for a non-symmetric hermitian form") {
    auto f = form(R"({"A": {"rank": 2}, "M": {"rank": 2}, "involution": [[0,1],[1,0]],
                      "lambda": [[[0,0],[1,0]],[[0,1],[0,0]]]})");
    CHECK_FALSE(f->symmetric());
    auto q = universal_refinement(f);
    CHECK(check_axioms(q).ok());
    const auto& g = q.target;
    QElement x{{}, u(0)}, y{{}, u(1)};
    CHECK_FALSE(g.equal(g.add(x, y), g.add(y, x)));
    CHECK_THROWS_AS(extension_presentation(f), Error);
  }
  SECTION("symmetric form gives a commutative extension") {
    auto f = form(R"({"A": {"rank": 2}, "M": {"rank": 1}, "lambda": [[[0],[1]],[[1],[0]]]})");
    const auto g = universal_refinement(f).target;
    for (const auto& x : g.generators())
      for (const auto& y : g.generators()) CHECK(g.equal(g.add(x, y), g.add(y, x)));
  }
}

TEST_CASE("Z4 Arf refinement") {
  auto f = form(kArf);
  auto cr = universal_commutative(f);
  const auto& q = cr.form.target;
  CHECK(q.me()->structure() == st(0, {4}));
  CHECK(q.me()->structure().to_string() == "Z4");
  auto mu = cr.form.mu(u(0));
  CHECK(q.me()->order_of(mu.m) == 4);
  // p(1) = 2 mu(1) = lambda(a,a)
  CHECK(q.equal(q.p(u(0)), q.scale(2, mu)));
  CHECK(cr.p_injective);
  auto r = check_axioms(cr.form);
  CHECK(r.ok());
  CHECK(passes(r, "mu_square"));

  // The extension model is already cyclic of order 4.
  auto ext = universal_refinement(f);
  const auto& g = ext.target;
  auto m1 = ext.mu(u(0));
  CHECK_FALSE(g.equal(g.scale(2, m1), g.zero()));
  CHECK(g.equal(g.scale(4, m1), g.zero()));
  CHECK(is_commutative(g));
}

TEST_CASE("universal commutative refinement") {
  SECTION("zero form on Z") {
    auto f = form(R"({"A": {"rank": 1}, "M": {"rank": 2}, "involution": [[0,1],[1,0]],
                      "lambda": [[[0,0]]]})");
    auto cr = universal_commutative(f);
    // M / (m^* - m) = Z, and 2 mu(a) = lambda(a,a) = 0 makes mu(a) 2-torsion
    CHECK(cr.form.target.me()->structure() == st(1, {2}));
    CHECK(check_axioms(cr.form).ok());
  }
  SECTION("p not injective for the swap over Z2") {
    auto f = form(R"({"A": {"rank": 1, "relations": [[2]]}, "M": {"rank": 2},
                      "involution": [[0,1],[1,0]], "lambda": [[[0,0]]]})");
    auto cr = universal_commutative(f);
    CHECK(cr.form.target.me()->structure() == st(1, {2}));
    CHECK_FALSE(cr.p_injective);
    CHECK(check_axioms(cr.form).ok());
  }
}

TEST_CASE("universal symmetric refinement") {
  SECTION("hyperbolic plane") {
    auto f = form(R"({"A": {"rank": 2}, "M": {"rank": 1}, "lambda": [[[0],[1]],[[1],[0]]]})");
    auto cr = universal_symmetric(f);
    const auto& q = cr.form.target;
    CHECK(q.me()->structure() == st(1, {2, 2}));
    CHECK(q.h(cr.form.mu(u(0))).empty());
    CHECK(q.h(cr.form.mu(u(0) + u(1))) == u(0, 2));
    CHECK(cr.p_injective);
    CHECK(check_axioms(cr.form).ok());
  }
  SECTION("even form [2] on Z") {
    auto f = form(R"({"A": {"rank": 1}, "M": {"rank": 1}, "lambda": [[[2]]]})");
    auto cr = universal_symmetric(f);
    const auto& q = cr.form.target;
    CHECK(q.me()->structure() == st(1, {2}));
    CHECK(q.equal(q.scale(2, cr.form.mu(u(0))), q.p(u(0, 2))));
    CHECK(check_axioms(cr.form).ok());
  }
  SECTION("rejects twisted input") {
    auto f = form(R"({"A": {"rank": 1}, "M": {"rank": 1}, "involution": [[-1]], "lambda": [[[0]]]})");
    CHECK_THROWS_AS(universal_symmetric(f), Error);
  }
  SECTION("p injective on random symmetric forms") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
      auto f = testing::random_form(rng, true);
      CHECK(universal_commutative(f).p_injective);
    }
  }
}

TEST_CASE("induced morphisms") {
  auto f = form(kArf);
  SECTION("identity unit") {
    auto uni = universal_refinement(f);
    auto beta = induced_morphism(f, AbelianHom::identity(f->A), AbelianHom::identity(f->M), uni);
    CHECK(beta.check().ok());
    for (const auto& x : uni.target.generators()) CHECK(uni.target.equal(beta(x), x));
  }
  SECTION("counit onto the Z4 refinement") {
    auto cr = universal_commutative(f);
    auto beta = induced_morphism(f, AbelianHom::identity(f->A), AbelianHom::identity(f->M), cr.form);
    CHECK(beta.check().ok());
    CHECK(beta.surjective());
  }
  SECTION("a non-universal refinement is not hit") {
    // M'_e = Z4 + Z with h(y, z) = y mod 2, p(1) = (2, 0), mu'(1) = (1, 0)
    auto z2 = f->M;
    auto me = FpAbelianGroup::make({"y", "z"}, {u(0, 4)});
    auto q = QuadraticGroup::abelian(me, AbelianHom(me, z2, {u(0), {}}), AbelianHom(z2, me, {u(0, 2)}));
    QuadraticForm target{f, q, {{u(0), {}}}, {}};
    REQUIRE(check_axioms(target).ok());
    auto beta = induced_morphism(f, AbelianHom::identity(f->A), AbelianHom::identity(f->M), target);
    CHECK(beta.check().ok());
    CHECK_FALSE(beta.surjective());
  }
  SECTION("incompatible forms are rejected") {
    auto zero = form(R"({"A": {"rank": 1, "relations": [[2]]}, "M": {"rank": 1, "relations": [[2]]},
                         "lambda": [[[0]]]})");
    auto target = universal_refinement(zero);
    try {
      induced_morphism(f, AbelianHom::identity(f->A), AbelianHom::identity(f->M), target);
      FAIL("expected NotAMorphism");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAMorphism);
    }
  }
  SECTION("universality on random forms") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
      auto g = testing::random_form(rng, false);
      auto cr = universal_commutative(g);
      auto beta = induced_morphism(g, AbelianHom::identity(g->A), AbelianHom::identity(g->M), cr.form);
      INFO(beta.check().json());
      CHECK(beta.check().ok());
      CHECK(beta.surjective());
    }
  }
}

TEST_CASE("presentation model agrees with the extension model") {
  SECTION("Arf form") {
    auto c = compare_models(form(kArf));
    CHECK(c.isomorphic());
    CHECK(c.structure == st(0, {4}));
  }
  SECTION("random symmetric forms") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 25; ++i) {
      auto f = testing::random_form(rng, true);
      auto c = compare_models(f);
      CHECK(c.well_defined);
      CHECK(c.rows_exact);
      CHECK(c.inverse_agrees);
    }
  }
  SECTION("a wrong cocycle word is detected") {
    // Drop the lambda term from the relator of 2a = 0: the presented group
    // becomes Z2 + Z2, which the extension model does not match.
    auto f = form(kArf);
    auto bad = FpAbelianGroup::make({"x1", "mu(a1)"}, {u(0, 2), u(1, 2)});
    auto ext = QuadraticGroup::extension(f);
    QElement g{{}, u(0)};
    CHECK_FALSE(ext.equal(ext.scale(2, g), ext.zero()));
    CHECK(bad->structure() != extension_presentation(f)->structure());
  }
}

TEST_CASE("edge splittings") {
  for (int n = 0; n <= 3; ++n)
    for (const auto& t : enumerate_unrooted(n, 2)) {
      auto target = canonical_unrooted(t);
      auto splits = edge_splits(t);
      CHECK(splits.size() == static_cast<std::size_t>(2 * n + 1));
      for (const auto& s : splits) {
        auto got = inner_product(s.x, s.y);
        INFO(t.encode() << " split " << s.x.encode() << " | " << s.y.encode());
        CHECK(got.tree == target.tree);
        if (!target.self_negating) CHECK(got.sign * s.sign == target.sign);
      }
    }
}

TEST_CASE("Psi factorization") {
  Context ctx;
  SECTION("label substitution") {
    // alpha: X1 -> X2, X2 -> X1 into L'(2); lambda = inner product
    std::vector<int> swap = {0, 2, 1};
    for (int n = 0; n <= 3; ++n) {
      auto T = t_group(ctx, n, 2);
      PairingTarget target{T->group, [&](const RootedTree& x, const RootedTree& y) {
                             return T->inner(relabel(x, swap), relabel(y, swap));
                           }};
      auto psi = psi_factorization(ctx, n, 2, target);
      for (const auto& t : T->trees)
        CHECK(T->group->equal(psi.apply(T->element(t)),
                              T->element({swap[t.label], relabel(t.tree, swap)})));
    }
  }
  SECTION("abelian target") {
    auto M = FpAbelianGroup::free({"z"});
    long table[3][3] = {{0, 0, 0}, {0, 2, -1}, {0, -1, 1}};
    PairingTarget target{M, [&](const RootedTree& x, const RootedTree& y) {
                           if (!x.is_leaf() || !y.is_leaf()) return SparseVec{};
                           return u(0, table[x.label()][y.label()]);
                         }};
    auto psi0 = psi_factorization(ctx, 0, 2, target);
    auto T0 = t_group(ctx, 0, 2);
    CHECK(psi0.apply(T0->element(parse_unrooted("<1,2>"))) == u(0, -1));
    CHECK(psi0.apply(T0->element(parse_unrooted("<1,1>"))) == u(0, 2));
    for (int n = 1; n <= 3; ++n) CHECK(psi_factorization(ctx, n, 2, target).is_zero());
  }
  SECTION("edge dependence is reported") {
    auto M = FpAbelianGroup::free({"z"});
    PairingTarget target{M, [&](const RootedTree& x, const RootedTree& y) {
                           long v = (x.is_leaf() ? x.label() : 0) + (y.is_leaf() ? y.label() : 0);
                           return u(0, v);
                         }};
    try {
      psi_factorization(ctx, 1, 3, target);
      FAIL("expected NotInvariant");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInvariant);
    }
  }
}

TEST_CASE("bridge to the twisted tree group") {
  Context ctx;
  for (int n = 0; n <= 1; ++n)
    for (int m = 1; m <= 2; ++m) {
      INFO("2n=" << 2 * n << " m=" << m);
      auto b = bridge_T_infinity(ctx, n, m);
      CHECK(b.isomorphic);
      CHECK(b.h_compatible);
      CHECK(b.p_compatible);
      CHECK(b.p_injective);
      CHECK(b.axioms.ok());
      CHECK(b.universal == b.twisted);
      CHECK(b.twisted == t_infinity(ctx, 2 * n, m)->group->structure());
    }
  CHECK(bridge_T_infinity(ctx, 0, 2).twisted == st(3, {}));
  // the inclusion T -> T^inf is injective, re-proved through p
  CHECK(is_injective(infinity_inclusion(ctx, 2, 2)));
  Context small(Config{1, 1, 2, 1, 0});
  CHECK_THROWS_AS(bridge_T_infinity(small, 1, 2), Error);
}

TEST_CASE("form JSON") {
  auto f = form(kArf);
  CHECK(f->A->generators() == std::vector<std::string>{"a1"});
  CHECK(f->M->generators() == std::vector<std::string>{"x1"});
  auto schema_error = [](const std::string& text) {
    try {
      parse_form_json(text);
    } catch (const Error& e) {
      return e.code() == ErrorCode::Schema;
    }
    return false;
  };
  CHECK(schema_error("{"));
  CHECK(schema_error(R"({"A": {"rank": 1}, "M": {"rank": 1}})"));
  CHECK(schema_error(R"({"A": {"rank": 1}, "M": {"rank": 1}, "lambda": [[[1, 2]]]})"));
  CHECK(schema_error(R"({"A": {"rank": 1}, "M": {"rank": 1}, "lambda": [[[1]]], "extra": 1})"));
  // not hermitian
  CHECK(schema_error(R"({"A": {"rank": 2}, "M": {"rank": 1}, "lambda": [[[0],[1]],[[0],[0]]]})"));
  // lambda does not vanish on 2a = 0 in M = Z
  CHECK(schema_error(R"({"A": {"rank": 1, "relations": [[2]]}, "M": {"rank": 1}, "lambda": [[[1]]]})"));
  // involution not an involution
  CHECK(schema_error(R"({"A": {"rank": 1}, "M": {"rank": 1}, "involution": [[2]], "lambda": [[[0]]]})"));
  auto g = form(R"({"A": {"generators": ["u", "v"]}, "M": {"generators": ["s"], "relations": [[3]]},
                    "lambda": [[[1],[2]],[[2],["4"]]]})");
  CHECK(g->M->structure() == st(0, {3}));
  auto json = refinement_json("commutative", universal_commutative(g).form,
                              check_axioms(universal_commutative(g).form));
  CHECK(json.find("\"mu(u)\"") != std::string::npos);
}

TEST_CASE("random hermitian forms satisfy the axioms") {
  std::mt19937_64 rng(3);
  int noncommutative = 0;
  for (int i = 0; i < 40; ++i) {
    auto f = testing::random_form(rng, false);
    auto uni = universal_refinement(f);
    auto r = check_axioms(uni);
    INFO(r.json());
    CHECK(r.ok());
    if (!is_commutative(uni.target)) ++noncommutative;
    auto cr = universal_commutative(f);
    auto rc = check_axioms(cr.form);
    INFO(rc.json());
    CHECK(rc.ok());
    CHECK(passes(rc, "mu_square"));
  }
  CHECK(noncommutative > 0);
}
