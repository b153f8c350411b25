#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "oracles/tree_iso.hpp"
#include "wtower/errors.hpp"
#include "wtower/trees.hpp"

using namespace wtower;

namespace {

oracle::OTree to_oracle(const RootedTree& t) {
  if (t.is_leaf()) return oracle::leaf(t.label());
  oracle::OTree o;
  for (const auto& c : t.children()) o.kids.push_back(to_oracle(c));
  return o;
}

RootedTree from_oracle(const oracle::OTree& o) {
  if (o.kids.empty()) return RootedTree::leaf(o.label);
  return RootedTree::node(from_oracle(o.kids[0]), from_oracle(o.kids[1]));
}

oracle::Graph graph(const UnrootedTree& u) {
  return oracle::unrooted_graph(u.label, to_oracle(u.tree));
}

RootedTree R(const char* s) { return parse_rooted(s); }
UnrootedTree U(const char* s) { return parse_unrooted(s); }

// Swap children at random vertices; returns the number of swaps.
RootedTree scramble(const RootedTree& t, std::mt19937& rng, int& swaps) {
  if (t.is_leaf()) return t;
  auto a = scramble(t.left(), rng, swaps);
  auto b = scramble(t.right(), rng, swaps);
  if (rng() & 1) {
    ++swaps;
    return RootedTree::node(b, a);
  }
  return RootedTree::node(a, b);
}

RootedTree random_tree(int order, int m, std::mt19937& rng) {
  if (order == 0) return RootedTree::leaf(1 + static_cast<int>(rng() % m));
  int a = static_cast<int>(rng() % order);
  return RootedTree::node(random_tree(a, m, rng), random_tree(order - 1 - a, m, rng));
}

}  // namespace

TEST_CASE("canonical_rooted examples") {
  auto c = canonical_rooted(R("(2,1)"));
  CHECK(c.tree.encode() == "(1,2)");
  CHECK(c.sign == -1);
  CHECK_FALSE(c.self_negating);

  c = canonical_rooted(R("(1,1)"));
  CHECK(c.tree.encode() == "(1,1)");
  CHECK(c.sign == 1);
  CHECK(c.self_negating);

  c = canonical_rooted(R("1"));
  CHECK(c.tree.encode() == "1");
  CHECK(c.sign == 1);
  CHECK_FALSE(c.self_negating);

  CHECK(R("((1,2),3)").order() == 2);
  CHECK(rooted_product(R("1"), R("2")).encode() == "(1,2)");
  CHECK(rooted_product(R("1"), R("2")).order() == 1);
  CHECK(canonical_rooted(rooted_product(R("1"), R("1"))).self_negating);
}

TEST_CASE("canonical_unrooted examples") {
  auto e = canonical_unrooted(U("<2,1>"));
  CHECK(e.tree.encode() == "<1,2>");
  CHECK(e.sign == 1);

  auto a = canonical_unrooted(U("<1,(2,3)>"));
  auto b = canonical_unrooted(U("<1,(3,2)>"));
  CHECK(a.tree == b.tree);
  CHECK(a.sign == -b.sign);

  CHECK(canonical_unrooted(U("<1,(1,2)>")).self_negating);
  CHECK(canonical_unrooted(U("<2,(1,1)>")).self_negating);
  CHECK_FALSE(canonical_unrooted(U("<1,(2,3)>")).self_negating);
}

TEST_CASE("enumeration examples") {
  auto r = enumerate_rooted(0, 2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].encode() == "1");
  CHECK(r[1].encode() == "2");

  auto u0 = enumerate_unrooted(0, 2);
  REQUIRE(u0.size() == 3);
  CHECK(u0[0].encode() == "<1,1>");
  CHECK(u0[1].encode() == "<1,2>");
  CHECK(u0[2].encode() == "<2,2>");

  auto u1 = enumerate_unrooted(1, 2);
  REQUIRE(u1.size() == 4);
  std::set<std::multiset<int>> label_sets;
  for (const auto& t : u1) {
    std::multiset<int> ls{t.label};
    for (const auto& c : t.tree.children()) ls.insert(c.label());
    label_sets.insert(ls);
  }
  CHECK(label_sets == std::set<std::multiset<int>>{{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}});
  for (const auto& t : u1) CHECK(canonical_unrooted(t).self_negating);

  CHECK(enumerate_one_quad(1, 2).empty());
  CHECK(enumerate_unrooted(2, 1).size() == 1);
}

TEST_CASE("inner product examples") {
  auto e = inner_product(R("1"), R("2"));
  CHECK(e.tree.encode() == "<1,2>");
  auto y = inner_product(R("1"), R("(2,2)"));
  CHECK(y.tree.encode() == "<1,(2,2)>");
  CHECK(y.self_negating);

  // Swapping the two halves maps each vertex orientation onto the other's,
  // so this symmetry is orientation preserving.
  auto h = inner_product(R("(1,2)"), R("(1,2)"));
  CHECK(h.tree.order() == 2);
  auto g = oracle::glued_graph(to_oracle(R("(1,2)")), to_oracle(R("(1,2)")));
  CHECK(oracle::iso_signs(g, g) == std::set<int>{1});
  CHECK_FALSE(h.self_negating);
  // The H tree with one half reversed is self-negating.
  auto h2 = inner_product(R("(1,2)"), R("(2,1)"));
  CHECK(h2.tree == h.tree);
  CHECK(h2.sign == -h.sign);
}

TEST_CASE("root_at examples") {
  auto r = root_at(U("<1,2>"), 0);
  CHECK(r.label == 1);
  CHECK(r.tree.encode() == "2");

  auto y = root_at(U("<1,(2,3)>"), 0);
  CHECK(y.label == 1);
  CHECK(y.tree.encode() == "(2,3)");

  auto all = all_rootings(U("<1,1>"));
  REQUIRE(all.size() == 2);
  for (const auto& a : all) {
    CHECK(a.label == 1);
    CHECK(a.tree.encode() == "1");
  }
  CHECK_THROWS_AS(root_at(U("<1,2>"), 2), Error);
}

TEST_CASE("canonicalization survives orientation scrambling") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    int order = static_cast<int>(rng() % 7);
    auto t = random_tree(order, 3, rng);
    auto c = canonical_rooted(t);
    CHECK(canonical_rooted(c.tree).tree == c.tree);
    CHECK(canonical_rooted(c.tree).sign == 1);
    int swaps = 0;
    auto s = scramble(t, rng, swaps);
    auto cs = canonical_rooted(s);
    REQUIRE(cs.tree == c.tree);
    CHECK(cs.self_negating == c.self_negating);
    if (!c.self_negating) CHECK(cs.sign == c.sign * (swaps % 2 ? -1 : 1));

    int label = 1 + static_cast<int>(rng() % 3);
    auto u = canonical_unrooted({label, t});
    auto us = canonical_unrooted({label, s});
    REQUIRE(us.tree == u.tree);
    CHECK(canonical_unrooted(u.tree).tree == u.tree);
    if (!u.self_negating) CHECK(us.sign == u.sign * (swaps % 2 ? -1 : 1));
  }
}

TEST_CASE("rooted enumeration matches brute force") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 0; n <= 3; ++n) {
      auto raw = oracle::all_rooted(n, m);
      std::vector<const oracle::OTree*> reps;
      for (const auto& t : raw) {
        bool found = false;
        for (auto* r : reps)
          if (!oracle::rooted_iso_signs(t, *r).empty()) found = true;
        if (!found) reps.push_back(&t);
      }
      auto lib = enumerate_rooted(n, m);
      CHECK(lib.size() == reps.size());
      std::set<std::string> seen;
      for (const auto& t : lib) CHECK(seen.insert(t.encode()).second);
      // canonical form agrees with the oracle's classes, sign included
      for (const auto& t : raw) {
        auto c = canonical_rooted(from_oracle(t));
        auto signs = oracle::rooted_iso_signs(t, to_oracle(c.tree));
        REQUIRE_FALSE(signs.empty());
        CHECK(c.self_negating == (signs.size() == 2));
        if (!c.self_negating) CHECK(signs == std::set<int>{c.sign});
      }
    }
}

TEST_CASE("unrooted enumeration matches brute force") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 0; n <= 3; ++n) {
      std::vector<oracle::Graph> gs;
      std::vector<UnrootedTree> raw;
      for (const auto& t : oracle::all_rooted(n, m))
        for (int i = 1; i <= m; ++i) {
          gs.push_back(oracle::unrooted_graph(i, t));
          raw.push_back({i, from_oracle(t)});
        }
      auto lib = enumerate_unrooted(n, m);
      CHECK(lib.size() == oracle::count_classes(gs));
      for (std::size_t k = 0; k < raw.size(); ++k) {
        auto c = canonical_unrooted(raw[k]);
        auto signs = oracle::iso_signs(gs[k], graph(c.tree));
        REQUIRE_FALSE(signs.empty());
        CHECK(c.self_negating == (signs.size() == 2));
        if (!c.self_negating) CHECK(signs == std::set<int>{c.sign});
        CHECK(std::find(lib.begin(), lib.end(), c.tree) != lib.end());
      }
    }
}

TEST_CASE("re-rooting invariance") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 0; n <= 3; ++n)
      for (const auto& t : enumerate_unrooted(n, m)) {
        bool sn = canonical_unrooted(t).self_negating;
        auto rs = all_rootings(t);
        CHECK(rs.size() == static_cast<std::size_t>(n + 2));
        for (const auto& r : rs) {
          auto c = canonical_unrooted({r.label, r.tree});
          CHECK(c.tree == t);
          if (!sn) CHECK(c.sign == 1);
          CHECK(!oracle::iso_signs(graph(t), graph({r.label, r.tree})).empty());
        }
      }
}

TEST_CASE("inner product symmetry and invariance") {
  std::vector<RootedTree> small;
  for (int n = 0; n <= 2; ++n)
    for (const auto& t : enumerate_rooted(n, 2)) small.push_back(t);
  // include non-canonical orientations
  std::size_t base = small.size();
  for (std::size_t i = 0; i < base; ++i)
    if (!small[i].is_leaf()) small.push_back(RootedTree::node(small[i].right(), small[i].left()));

  for (const auto& a : small)
    for (const auto& b : small) {
      auto ab = inner_product(a, b);
      auto ba = inner_product(b, a);
      REQUIRE(ab.tree == ba.tree);
      CHECK(ab.self_negating == ba.self_negating);
      if (!ab.self_negating) CHECK(ab.sign == ba.sign);
      auto signs = oracle::iso_signs(oracle::glued_graph(to_oracle(a), to_oracle(b)),
                                     graph(ab.tree));
      REQUIRE_FALSE(signs.empty());
      if (!ab.self_negating) CHECK(signs == std::set<int>{ab.sign});
    }
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small) {
        if (a.order() + b.order() + c.order() > 3) continue;
        auto l = inner_product(RootedTree::node(a, b), c);
        auto r = inner_product(a, RootedTree::node(b, c));
        REQUIRE(l.tree == r.tree);
        if (!l.self_negating) CHECK(l.sign == r.sign);
      }
}

TEST_CASE("one_quad trees and IHX expansion") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 2; n <= 4; ++n) {
      for (const auto& q : enumerate_one_quad(n, m)) {
        CHECK(q.order() == n);
        auto ex = expand_quad(q);
        REQUIRE(ex.size() == 3);
        for (const auto& e : ex) CHECK(e.order() == n);
      }
      for (const auto& q : enumerate_rooted_one_quad(n, m)) {
        CHECK(q.order() == n);
        CHECK(q.has_quad());
        CHECK(canonical_rooted(q).tree == q);
      }
    }
  // rooted one-quad trees of order 2 with one label: (1,1,1) only
  auto q = enumerate_rooted_one_quad(2, 1);
  REQUIRE(q.size() == 1);
  CHECK(q[0].encode() == "(1,1,1)");
  auto ex = expand_quad(q[0]);
  CHECK(ex[0].encode() == "((1,1),1)");

  // Every one-quad index tree comes from contracting an edge, and every
  // contraction of an enumerated tree is listed.
  for (const auto& u : enumerate_unrooted(3, 2))
    for (const auto& c : contractions(u.tree)) {
      auto cq = canonical_unrooted({u.label, c});
      auto all = enumerate_one_quad(3, 2);
      CHECK(std::find(all.begin(), all.end(), cq.tree) != all.end());
    }
}

TEST_CASE("identical siblings, relabel and bracket words") {
  CHECK(has_identical_siblings(R("((1,2),(1,2))")));
  CHECK(has_identical_siblings(R("(3,(1,1))")));
  CHECK_FALSE(has_identical_siblings(R("((1,2),(2,1))")));
  CHECK(relabel(R("(1,(2,1))"), {0, 3, 4}).encode() == "(3,(4,3))");
  CHECK(bracket_word(R("(1,(2,3))")) == "[X1,[X2,X3]]");
}

TEST_CASE("tree grammar") {
  CHECK(parse_rooted(" ( 1 , (2,3) ) ").encode() == "(1,(2,3))");
  CHECK(parse_unrooted("<1,(2,3)>").encode() == "<1,(2,3)>");
  CHECK(parse_rooted("(1,2,3)").is_quad());
  CHECK(parse_rooted("12").label() == 12);
  for (const char* bad : {"", "(", "(1)", "(1,2", "(1,2))", "0", "(1,a)", "(1,2,3,4)", "-1"}) {
    try {
      parse_rooted(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
  for (const char* bad : {"<1>", "<1,2", "1,2>", "<(1,2),3>"})
    CHECK_THROWS_AS(parse_unrooted(bad), Error);
  // round trip
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto t = random_tree(static_cast<int>(rng() % 6), 12, rng);
    CHECK(parse_rooted(t.encode()) == t);
  }
}
