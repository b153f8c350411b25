#include "wtower/treegroups.hpp"

namespace wtower {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::plain: return "T";
    case Flavor::tilde: return "Ttilde";
    case Flavor::twisted: return "Tinf";
  }
  return "?";
}

namespace {

std::string key(const char* what, int n, int m) {
  return std::string(what) + ":" + std::to_string(n) + ":" + std::to_string(m);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

std::string inf_key(const RootedTree& j) { return "inf:" + j.encode(); }

// Shares the generator list of `base` with new relations.
TreePtr with_group(const TreePtr& base, Flavor f, Group g) {
  auto t = std::make_shared<TreeGroup>(*base);
  t->flavor = f;
  t->group = std::move(g);
  return t;
}

}  // namespace

SparseVec TreeGroup::element(const UnrootedTree& t) const {
  auto c = canonical_unrooted(t);
  auto idx = group->find(c.tree.encode());
  if (!idx)
    throw Error(ErrorCode::InvalidArgument, "tree " + t.encode() + " is not a generator of " +
                                                flavor_name(flavor) + "_" + std::to_string(n));
  return SparseVec::unit(*idx, c.sign);
}

SparseVec TreeGroup::inner(const RootedTree& a, const RootedTree& b) const {
  return element(join_roots(a, b));
}

SparseVec TreeGroup::inf_element(const RootedTree& j) const {
  auto idx = group->find(inf_key(canonical_rooted(j).tree));
  if (!idx) throw Error(ErrorCode::InvalidArgument, "no generator " + inf_key(j));
  return SparseVec::unit(*idx);
}

TreePtr t_group(Context& ctx, int n, int m) {
  require(n >= 0 && m >= 1, "t_group needs n >= 0 and m >= 1");
  return ctx.memo<TreeGroup>(key("T", n, m), [&] {
    auto t = std::make_shared<TreeGroup>();
    t->n = n;
    t->m = m;
    t->trees = enumerate_unrooted(n, m);
    std::vector<std::string> keys;
    for (const auto& u : t->trees) keys.push_back(u.encode());
    t->group = FpAbelianGroup::free(keys);
    std::vector<SparseVec> rels;
    for (std::size_t i = 0; i < t->trees.size(); ++i)
      if (canonical_unrooted(t->trees[i]).self_negating) rels.push_back(SparseVec::unit(i, 2));
    for (const auto& q : enumerate_one_quad(n, m)) {
      SparseVec r;
      for (const auto& e : expand_quad(q)) r += t->element(e);
      if (!r.empty()) rels.push_back(std::move(r));
    }
    t->group = FpAbelianGroup::make(std::move(keys), std::move(rels));
    return std::shared_ptr<const TreeGroup>(t);
  });
}

AbelianHom delta(Context& ctx, int n, int m) {
  require(n >= 1, "delta needs n >= 1");
  return *ctx.memo<AbelianHom>(key("delta", n, m), [&] {
    auto src = t_group(ctx, n - 1, m);
    auto dst = t_group(ctx, 2 * n - 1, m);
    std::vector<SparseVec> images;
    for (const auto& t : src->trees) {
      SparseVec img;
      for (const auto& r : all_rootings(t))
        img += dst->inner(RootedTree::leaf(r.label), RootedTree::node(r.tree, r.tree));
      images.push_back(std::move(img));
    }
    return std::make_shared<const AbelianHom>(tensor_Z2(src->group), dst->group,
                                              std::move(images));
  });
}

TreePtr t_tilde(Context& ctx, int n, int m) {
  if (n % 2 == 0) return t_group(ctx, n, m);
  return ctx.memo<TreeGroup>(key("Ttilde", n, m), [&] {
    auto plain = t_group(ctx, n, m);
    auto d = delta(ctx, (n + 1) / 2, m);
    auto q = quotient(plain->group, d.images());
    return with_group(plain, Flavor::tilde, q.group);
  });
}

AbelianHom tilde_quotient(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("Ttilde.q", n, m), [&] {
    auto plain = t_group(ctx, n, m);
    auto tilde = t_tilde(ctx, n, m);
    std::vector<SparseVec> images;
    for (std::size_t i = 0; i < plain->group->num_generators(); ++i)
      images.push_back(SparseVec::unit(i));
    return std::make_shared<const AbelianHom>(plain->group, tilde->group, std::move(images));
  });
}

TreePtr t_infinity(Context& ctx, int n, int m) {
  require(n >= 0 && m >= 1, "t_infinity needs n >= 0 and m >= 1");
  return ctx.memo<TreeGroup>(key("Tinf", n, m), [&] {
    if (n % 2 == 1) {
      auto tilde = t_tilde(ctx, n, m);
      int q = (n + 1) / 2;
      std::vector<SparseVec> twists;
      for (int i = 1; i <= m; ++i)
        for (const auto& j : enumerate_rooted(q - 1, m))
          twists.push_back(tilde->inner(RootedTree::node(RootedTree::leaf(i), j), j));
      return with_group(tilde, Flavor::twisted, quotient(tilde->group, twists).group);
    }
    int q = n / 2;
    auto plain = t_group(ctx, n, m);
    auto t = std::make_shared<TreeGroup>(*plain);
    t->flavor = Flavor::twisted;
    t->inf_trees = enumerate_rooted(q, m);
    auto keys = plain->group->generators();
    for (const auto& j : t->inf_trees) keys.push_back(inf_key(j));
    t->group = FpAbelianGroup::free(keys);
    auto rels = plain->group->relations();
    for (const auto& j : t->inf_trees)
      rels.push_back(Integer(2) * t->inf_element(j) - t->inner(j, j));
    // (J1 + J2 + J3 = 0)  =>  J1^inf = J2^inf + J3^inf + <J2,J3>
    for (const auto& quad : enumerate_rooted_one_quad(q, m)) {
      auto ex = expand_quad(quad);
      SparseVec r = t->inf_element(ex[0]) - t->inf_element(ex[1]) - t->inf_element(ex[2]) -
                    t->inner(ex[1], ex[2]);
      if (!r.empty()) rels.push_back(std::move(r));
    }
    t->group = FpAbelianGroup::make(std::move(keys), std::move(rels));
    return std::shared_ptr<const TreeGroup>(t);
  });
}

AbelianHom infinity_quotient(Context& ctx, int n, int m) {
  require(n % 2 == 1, "infinity_quotient needs odd order");
  return *ctx.memo<AbelianHom>(key("Tinf.q", n, m), [&] {
    auto tilde = t_tilde(ctx, n, m);
    auto inf = t_infinity(ctx, n, m);
    std::vector<SparseVec> images;
    for (std::size_t i = 0; i < tilde->group->num_generators(); ++i)
      images.push_back(SparseVec::unit(i));
    return std::make_shared<const AbelianHom>(tilde->group, inf->group, std::move(images));
  });
}

AbelianHom infinity_inclusion(Context& ctx, int n, int m) {
  require(n % 2 == 0, "infinity_inclusion needs even order");
  return *ctx.memo<AbelianHom>(key("Tinf.inc", n, m), [&] {
    auto plain = t_group(ctx, n, m);
    auto inf = t_infinity(ctx, n, m);
    std::vector<SparseVec> images;
    for (std::size_t i = 0; i < plain->group->num_generators(); ++i)
      images.push_back(SparseVec::unit(i));
    return std::make_shared<const AbelianHom>(plain->group, inf->group, std::move(images));
  });
}

AbelianHom infinity_cokernel(Context& ctx, int n, int m) {
  require(n % 2 == 0, "infinity_cokernel needs even order");
  return *ctx.memo<AbelianHom>(key("Tinf.cok", n, m), [&] {
    int q = n / 2;
    auto inf = t_infinity(ctx, n, m);
    auto lq = lie_group(ctx, q + 1, m, Variant::quasi);
    auto z2 = z2_lie(ctx, q + 1, m, Variant::quasi);
    std::vector<SparseVec> images(inf->trees.size());
    for (const auto& j : inf->inf_trees) images.push_back(lq->element(j));
    return std::make_shared<const AbelianHom>(inf->group, z2, std::move(images));
  });
}

AbelianHom tau_odd_left(Context& ctx, int q, int m) {
  require(q >= 1, "tau_odd_left needs q >= 1");
  return *ctx.memo<AbelianHom>(key("tau_odd_left", q, m), [&] {
    auto tilde = t_tilde(ctx, 2 * q - 1, m);
    auto br = bracket_hom(ctx, q - 1, m, Variant::quasi);
    auto lq = lie_group(ctx, q, m, Variant::quasi);
    Group src = tensor_Z2(br.source());
    Group dst = z2_lie(ctx, q + 1, m, Variant::quasi);
    AbelianHom beta(src, dst, br.images());
    std::vector<SparseVec> psi_images;
    for (int i = 1; i <= m; ++i)
      for (const auto& j : lq->trees)
        psi_images.push_back(tilde->inner(RootedTree::leaf(i), RootedTree::node(j, j)));
    AbelianHom psi(src, tilde->group, std::move(psi_images));
    auto [ker, inc] = kernel_of(beta);
    if (!compose(psi, inc).is_zero())
      throw Error(ErrorCode::WellDefinedness,
                  "Xi (x) J -> <i,(J,J)> does not vanish on the kernel of the bracket");
    PreimageSolver solver(beta);
    std::vector<SparseVec> images;
    for (std::size_t g = 0; g < dst->num_generators(); ++g) {
      auto pre = solver.solve(SparseVec::unit(g));
      if (!pre) throw Error(ErrorCode::LiftMismatch, "bracket is not surjective mod 2");
      images.push_back(psi.apply(*pre));
    }
    return std::make_shared<const AbelianHom>(dst, tilde->group, std::move(images));
  });
}

}  // namespace wtower
