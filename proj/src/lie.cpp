#include "wtower/lie.hpp"

namespace wtower {

const char* variant_name(Variant v) { return v == Variant::lie ? "lie" : "quasi"; }

namespace {

std::string key(const char* what, int n, int m, Variant v) {
  return std::string(what) + ":" + std::to_string(n) + ":" + std::to_string(m) + ":" +
         variant_name(v);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

// Identity on generators between two presentations with the same keys.
AbelianHom same_keys(const Group& from, const Group& to) {
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < from->num_generators(); ++i)
    images.push_back(SparseVec::unit(to->index_of(from->generator(i))));
  return AbelianHom(from, to, std::move(images));
}

}  // namespace

SparseVec LieGrade::element(const RootedTree& t) const {
  auto c = canonical_rooted(t);
  auto idx = group->find(c.tree.encode());
  if (!idx)
    throw Error(ErrorCode::InvalidArgument,
                "tree " + t.encode() + " is not a generator of L_" + std::to_string(n) +
                    "(" + std::to_string(m) + ")");
  return SparseVec::unit(*idx, c.sign);
}

LiePtr lie_group(Context& ctx, int n, int m, Variant v) {
  require(n >= 1 && m >= 1, "lie_group needs n >= 1 and m >= 1");
  return ctx.memo<LieGrade>(key("L", n, m, v), [&] {
    auto g = std::make_shared<LieGrade>();
    g->n = n;
    g->m = m;
    g->variant = v;
    g->trees = enumerate_rooted(n - 1, m);
    std::vector<std::string> keys;
    for (const auto& t : g->trees) keys.push_back(t.encode());
    g->group = FpAbelianGroup::free(keys);

    std::vector<SparseVec> rels;
    for (std::size_t i = 0; i < g->trees.size(); ++i) {
      const auto& t = g->trees[i];
      if (v == Variant::lie && has_identical_siblings(t))
        rels.push_back(SparseVec::unit(i));
      else if (canonical_rooted(t).self_negating)
        rels.push_back(SparseVec::unit(i, 2));
    }
    // Jacobi relators, one per 4-valent index tree
    for (const auto& q : enumerate_rooted_one_quad(n - 1, m)) {
      SparseVec r;
      for (const auto& e : expand_quad(q)) r += g->element(e);
      if (!r.empty()) rels.push_back(std::move(r));
    }
    g->group = FpAbelianGroup::make(std::move(keys), std::move(rels));
    return std::shared_ptr<const LieGrade>(g);
  });
}

Group tensor_L1(int m, const Group& g) {
  std::vector<std::string> keys;
  for (int i = 1; i <= m; ++i)
    for (const auto& k : g->generators()) keys.push_back(std::to_string(i) + "|" + k);
  std::vector<SparseVec> rels;
  std::size_t ng = g->num_generators();
  for (int i = 1; i <= m; ++i)
    for (const auto& r : g->relations()) {
      std::vector<std::pair<std::size_t, Integer>> terms;
      for (const auto& t : r.terms())
        terms.emplace_back(static_cast<std::size_t>(i - 1) * ng + t.index, t.coeff);
      rels.push_back(SparseVec::from_pairs(std::move(terms)));
    }
  return FpAbelianGroup::make(std::move(keys), std::move(rels));
}

SparseVec TensorGrade::element(int label, const RootedTree& t) const {
  SparseVec e = factor->element(t);
  std::vector<std::pair<std::size_t, Integer>> terms;
  for (const auto& term : e.terms())
    terms.emplace_back(tensor_index(factor->group, label, term.index), term.coeff);
  return SparseVec::from_pairs(std::move(terms));
}

TensorPtr tensor_grade(Context& ctx, int n, int m, Variant v) {
  require(n >= 0, "tensor grade needs n >= 0");
  return ctx.memo<TensorGrade>(key("L1xL", n, m, v), [&] {
    auto t = std::make_shared<TensorGrade>();
    t->factor = lie_group(ctx, n + 1, m, v);
    t->group = tensor_L1(m, t->factor->group);
    return std::shared_ptr<const TensorGrade>(t);
  });
}

AbelianHom bracket_hom(Context& ctx, int n, int m, Variant v) {
  require(n >= 0, "bracket_hom needs n >= 0");
  return *ctx.memo<AbelianHom>(key("bracket", n, m, v), [&] {
    auto src = tensor_grade(ctx, n, m, v);
    auto dst = lie_group(ctx, n + 2, m, v);
    std::vector<SparseVec> images;
    for (int i = 1; i <= m; ++i)
      for (const auto& j : src->factor->trees)
        images.push_back(dst->element(RootedTree::node(RootedTree::leaf(i), j)));
    return std::make_shared<const AbelianHom>(src->group, dst->group, std::move(images));
  });
}

KernelPtr d_group(Context& ctx, int n, int m, Variant v) {
  require(n >= 0, "d_group needs n >= 0");
  return ctx.memo<BracketKernel>(key("D", n, m, v), [&] {
    auto d = std::make_shared<BracketKernel>();
    d->n = n;
    d->m = m;
    d->variant = v;
    d->bracket = bracket_hom(ctx, n, m, v);
    auto [k, inc] = kernel_of(d->bracket);
    d->group = k;
    d->inclusion = inc;
    d->bracket_surjective = is_surjective(d->bracket);
    return std::shared_ptr<const BracketKernel>(d);
  });
}

Group z2_lie(Context& ctx, int k, int m, Variant v) {
  return *ctx.memo<Group>(key("Z2L", k, m, v), [&] {
    return std::make_shared<const Group>(tensor_Z2(lie_group(ctx, k, m, v)->group));
  });
}

AbelianHom proj_p(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("p", n, m, Variant::quasi), [&] {
    return std::make_shared<const AbelianHom>(
        same_keys(lie_group(ctx, n, m, Variant::quasi)->group,
                  lie_group(ctx, n, m, Variant::lie)->group));
  });
}

AbelianHom proj_p_z2(Context& ctx, int k, int m) {
  return *ctx.memo<AbelianHom>(key("p2", k, m, Variant::quasi), [&] {
    return std::make_shared<const AbelianHom>(
        same_keys(z2_lie(ctx, k, m, Variant::quasi), z2_lie(ctx, k, m, Variant::lie)));
  });
}

AbelianHom sq(Context& ctx, int k, int m) {
  require(k >= 1, "sq needs k >= 1");
  return *ctx.memo<AbelianHom>(key("sq", k, m, Variant::quasi), [&] {
    auto src = lie_group(ctx, k, m, Variant::lie);
    auto dst = lie_group(ctx, 2 * k, m, Variant::quasi);
    std::vector<SparseVec> images;
    for (const auto& j : src->trees) images.push_back(dst->element(RootedTree::node(j, j)));
    return std::make_shared<const AbelianHom>(z2_lie(ctx, k, m, Variant::lie), dst->group,
                                              std::move(images));
  });
}

AbelianHom sl_with_shift(Context& ctx, int two_k, int m,
                         const std::function<SparseVec(std::size_t)>& shift) {
  require(two_k >= 2 && two_k % 2 == 0, "sl needs an even degree >= 2");
  int k = two_k / 2;
  auto d = d_group(ctx, two_k, m, Variant::lie);
  auto quasi_tensor = tensor_grade(ctx, two_k, m, Variant::quasi);
  auto qbracket = bracket_hom(ctx, two_k, m, Variant::quasi);
  auto square = sq(ctx, k + 1, m);
  PreimageSolver solver(square);
  // L1 (x) L_{2k+1} and L1 (x) L'_{2k+1} share generator keys and order, so
  // the tree-wise section is the identity on coordinates.
  const auto& lie_tensor = d->inclusion.target();
  if (lie_tensor->generators() != quasi_tensor->group->generators())
    throw Error(ErrorCode::LiftMismatch, "tensor generator lists differ");
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < d->group->num_generators(); ++i) {
    SparseVec lift = d->inclusion.image(i);
    if (shift) lift += shift(i);
    SparseVec br = qbracket.apply(lift);
    auto pre = solver.solve(br);
    if (!pre)
      throw Error(ErrorCode::LiftMismatch,
                  "bracket of the lift of D generator " + std::to_string(i) +
                      " is not in the image of sq");
    images.push_back(std::move(*pre));
  }
  return AbelianHom(d->group, square.source(), std::move(images));
}

SnakeMap sl(Context& ctx, int two_k, int m) {
  return *ctx.memo<SnakeMap>(key("sl", two_k, m, Variant::lie), [&] {
    auto s = std::make_shared<SnakeMap>();
    s->map = sl_with_shift(ctx, two_k, m, nullptr);
    s->surjective = is_surjective(s->map);
    return std::shared_ptr<const SnakeMap>(s);
  });
}

DInfPtr d_infinity(Context& ctx, int n, int m) {
  require(n >= 2 && n % 4 == 2, "d_infinity needs degree 4k-2 with k >= 1");
  return ctx.memo<DInfinity>(key("Dinf", n, m, Variant::lie), [&] {
    int k = (n + 2) / 4;
    auto out = std::make_shared<DInfinity>();
    auto s = sl(ctx, n, m).map;
    auto p2 = proj_p_z2(ctx, 2 * k, m);
    out->pb = pullback(s, p2);
    out->p = out->pb.to_a;
    out->sl_prime = out->pb.to_b;
    // 1 (x) J -> 1 (x) [J,J] in Z2 (x) L'_{2k}
    auto square = sq(ctx, k, m);
    auto reduce = same_keys(square.target(), z2_lie(ctx, 2 * k, m, Variant::quasi));
    auto sq_mod2 = compose(reduce, square);
    out->sq_inf = pullback_lift(out->pb, AbelianHom::zero(square.source(), s.source()),
                                sq_mod2);
    return std::shared_ptr<const DInfinity>(out);
  });
}

}  // namespace wtower
