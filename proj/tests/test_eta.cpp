#include <catch_amalgamated.hpp>

#include "wtower/eta.hpp"

using namespace wtower;

namespace {

Structure st(std::size_t free, std::vector<long> tors) {
  Structure s;
  s.free_rank = free;
  for (long t : tors) s.torsion.emplace_back(t);
  return s;
}

SparseVec vec(const Group& g, const std::vector<std::pair<std::string, long>>& terms) {
  std::vector<std::pair<std::size_t, Integer>> p;
  for (auto& [k, c] : terms) p.emplace_back(g->index_of(k), c);
  return SparseVec::from_pairs(p);
}

RootedTree R(const char* s) { return parse_rooted(s); }
UnrootedTree U(const char* s) { return parse_unrooted(s); }

}  // namespace

TEST_CASE("eta' examples") {
  Context ctx;
  auto raw = eta_prime_raw(ctx, 0, 2);
  auto t0 = t_group(ctx, 0, 2);
  auto tg = raw.target();
  CHECK(raw.apply(t0->element(U("<1,2>"))) == vec(tg, {{"1|2", 1}, {"2|1", 1}}));
  CHECK(raw.apply(t0->element(U("<1,1>"))) == vec(tg, {{"1|1", 2}}));
  CHECK(is_isomorphism(eta_prime(ctx, 0, 2)));
  for (int m = 1; m <= 2; ++m)
    for (int n = 0; n <= 3; ++n) {
      INFO("n=" << n << " m=" << m);
      CHECK(is_isomorphism(eta_prime(ctx, n, m)));
    }
}

TEST_CASE("eta examples") {
  Context ctx;
  auto raw = eta_raw(ctx, 0, 1);
  auto t = t_infinity(ctx, 0, 1);
  CHECK(raw.apply(t->inf_element(R("1"))) == vec(raw.target(), {{"1|1", 1}}));
  CHECK(is_isomorphism(eta(ctx, 0, 1)));

  // boundary twists go to zero
  for (int m = 1; m <= 2; ++m) {
    auto r1 = eta_raw(ctx, 1, m);
    auto t1 = t_tilde(ctx, 1, m);
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) {
        auto J = RootedTree::leaf(j);
        CHECK(r1.target()->is_zero(
            r1.apply(t1->inner(RootedTree::node(RootedTree::leaf(i), J), J))));
      }
  }
  auto e2 = eta(ctx, 2, 1);
  auto t2 = t_infinity(ctx, 2, 1);
  CHECK(e2.target()->is_zero(e2.apply(t2->inf_element(R("(1,1)")))));
}

TEST_CASE("D~ and eta~") {
  Context ctx;
  CHECK(d_tilde(ctx, 1, 1)->group->structure() == d_group(ctx, 1, 1, Variant::quasi)->group->structure());
  auto e = eta_tilde(ctx, 1, 2);
  CHECK(e.source()->structure() == st(0, {2, 2, 2}));
  CHECK(is_isomorphism(e));
  CHECK(is_isomorphism(eta_tilde(ctx, 1, 1)));
  CHECK(compose(eta_tilde(ctx, 3, 2), tilde_quotient(ctx, 3, 2))
            .equals(compose(d_tilde(ctx, 3, 2)->quotient, eta_prime(ctx, 3, 2))));
}

TEST_CASE("theorem instances") {
  Context ctx;
  for (int m = 1; m <= 2; ++m) {
    INFO("m=" << m);
    for (int n : {1, 3}) {
      CHECK(is_isomorphism(eta_tilde(ctx, n, m)));
      CHECK(is_isomorphism(eta(ctx, n, m)));
    }
    CHECK(is_isomorphism(eta(ctx, 0, m)));
    CHECK(is_isomorphism(eta(ctx, 4, m)));
    CHECK(is_isomorphism(eta_infinity(ctx, 2, m)));
    auto a = hom_analysis(eta(ctx, 2, m));
    CHECK(a.surjective);
    CHECK(a.kernel->structure() == z2_lie(ctx, 1, m, Variant::lie)->structure());
  }
  auto t = t_infinity(ctx, 2, 1);
  auto a = hom_analysis(eta(ctx, 2, 1));
  CHECK(a.kernel->structure() == st(0, {2}));
  CHECK(in_subgroup(t->group, a.kernel_inclusion.images(), t->inf_element(R("(1,1)"))));
}
