#include <catch_amalgamated.hpp>

#include "wtower/treegroups.hpp"

using namespace wtower;

namespace {

Structure st(std::size_t free, std::vector<long> tors) {
  Structure s;
  s.free_rank = free;
  for (long t : tors) s.torsion.emplace_back(t);
  return s;
}

RootedTree R(const char* s) { return parse_rooted(s); }
UnrootedTree U(const char* s) { return parse_unrooted(s); }

}  // namespace

TEST_CASE("T_n examples") {
  Context ctx;
  CHECK(t_group(ctx, 0, 2)->group->structure() == st(3, {}));
  CHECK(t_group(ctx, 1, 2)->group->structure() == st(0, {2, 2, 2, 2}));
  CHECK(t_group(ctx, 1, 1)->group->structure() == st(0, {2}));
  // IHX relates the order-2 trees; one label leaves nothing
  CHECK(t_group(ctx, 2, 1)->group->is_trivial());
}

TEST_CASE("framing map") {
  Context ctx;
  auto d = delta(ctx, 1, 2);
  auto t1 = t_group(ctx, 1, 2);
  auto src = d.source();
  auto img = d.apply(SparseVec::unit(src->index_of("<1,2>")));
  auto expected = t1->element(U("<1,(2,2)>")) + t1->element(U("<2,(1,1)>"));
  CHECK(t1->group->equal(img, expected));
  CHECK(img.size() == 2);

  // 1-1 gives the self-negating Y(1,1,1) twice
  auto img11 = d.apply(SparseVec::unit(src->index_of("<1,1>")));
  CHECK(t1->group->is_zero(img11));

  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 3; ++n) {
      auto dn = delta(ctx, n, m);
      for (const auto& im : dn.images()) CHECK(dn.target()->is_zero(Integer(2) * im));
    }
}

TEST_CASE("T~ examples") {
  Context ctx;
  CHECK(t_tilde(ctx, 1, 2)->group->structure() == st(0, {2, 2, 2}));
  CHECK(t_tilde(ctx, 1, 1)->group->structure() == st(0, {2}));
  CHECK(t_tilde(ctx, 2, 2) == t_group(ctx, 2, 2));
  CHECK(is_surjective(tilde_quotient(ctx, 3, 2)));
}

TEST_CASE("T^inf examples") {
  Context ctx;
  auto t0 = t_infinity(ctx, 0, 2);
  CHECK(t0->group->structure() == st(3, {}));
  CHECK(t0->group->num_generators() == 5);
  // 2 X_i^inf = i-i, and X1^inf, X2^inf, 1-2 span
  CHECK(t0->group->equal(Integer(2) * t0->inf_element(R("1")), t0->element(U("<1,1>"))));
  CHECK(t_infinity(ctx, 1, 2)->group->is_trivial());

  auto t13 = t_infinity(ctx, 1, 3);
  CHECK(t13->group->structure() == st(1, {}));  // rank of D_1(3) = 9 - 8
  CHECK(t13->group->is_zero(t13->element(U("<1,(1,2)>"))));
  CHECK(t13->group->is_zero(t13->element(U("<3,(3,3)>"))));
  CHECK_FALSE(t13->group->is_zero(t13->element(U("<1,(2,3)>"))));

  // J^inf = (-J)^inf is built in
  auto t2 = t_infinity(ctx, 2, 2);
  CHECK(t2->inf_element(R("(2,1)")) == t2->inf_element(R("(1,2)")));
}

TEST_CASE("even tau sequences") {
  Context ctx;
  for (int q = 0; q <= 2; ++q)
    for (int m = 1; m <= 2; ++m) {
      INFO("2q=" << 2 * q << " m=" << m);
      auto inc = infinity_inclusion(ctx, 2 * q, m);
      auto cok = infinity_cokernel(ctx, 2 * q, m);
      CHECK(is_injective(inc));
      CHECK(exact_at(inc, cok));
      CHECK(is_surjective(cok));
      CHECK(hom_analysis(inc).cokernel->structure() == cok.target()->structure());
    }
}

TEST_CASE("odd tau sequences") {
  Context ctx;
  for (int q = 1; q <= 2; ++q)
    for (int m = 1; m <= 2; ++m) {
      INFO("2q-1=" << 2 * q - 1 << " m=" << m);
      auto left = tau_odd_left(ctx, q, m);
      auto right = infinity_quotient(ctx, 2 * q - 1, m);
      CHECK(is_injective(left));
      CHECK(exact_at(left, right));
      CHECK(is_surjective(right));
    }
  auto left = tau_odd_left(ctx, 1, 2);
  CHECK(left.source()->structure() == st(0, {2, 2, 2}));
  CHECK(left.target()->structure() == st(0, {2, 2, 2}));
  CHECK(t_infinity(ctx, 1, 2)->group->is_trivial());
}
