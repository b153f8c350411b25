#include "wtower/eta.hpp"

namespace wtower {

namespace {

std::string key(const char* what, int n, int m) {
  return std::string(what) + ":" + std::to_string(n) + ":" + std::to_string(m);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

SparseVec eta_formula(const TensorGrade& tensor, const UnrootedTree& t) {
  SparseVec out;
  for (const auto& r : all_rootings(t)) out += tensor.element(r.label, r.tree);
  return out;
}

}  // namespace

AbelianHom eta_prime_raw(Context& ctx, int n, int m) {
  require(n >= 0, "eta' needs n >= 0");
  return *ctx.memo<AbelianHom>(key("etaP.raw", n, m), [&] {
    auto t = t_group(ctx, n, m);
    auto tensor = tensor_grade(ctx, n, m, Variant::quasi);
    std::vector<SparseVec> images;
    for (const auto& u : t->trees) images.push_back(eta_formula(*tensor, u));
    return std::make_shared<const AbelianHom>(t->group, tensor->group, std::move(images));
  });
}

AbelianHom eta_prime(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("etaP", n, m), [&] {
    return std::make_shared<const AbelianHom>(restrict_codomain(
        eta_prime_raw(ctx, n, m), d_group(ctx, n, m, Variant::quasi)->inclusion));
  });
}

AbelianHom eta_raw(Context& ctx, int n, int m) {
  require(n >= 0, "eta needs n >= 0");
  return *ctx.memo<AbelianHom>(key("eta.raw", n, m), [&] {
    auto t = t_infinity(ctx, n, m);
    auto tensor = tensor_grade(ctx, n, m, Variant::lie);
    std::vector<SparseVec> images;
    for (const auto& u : t->trees) images.push_back(eta_formula(*tensor, u));
    for (const auto& j : t->inf_trees) {
      SparseVec twice = eta_formula(*tensor, join_roots(j, j));
      images.push_back(solve_division(tensor->group, twice, Integer(2)));
    }
    return std::make_shared<const AbelianHom>(t->group, tensor->group, std::move(images));
  });
}

AbelianHom eta(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("eta", n, m), [&] {
    return std::make_shared<const AbelianHom>(
        restrict_codomain(eta_raw(ctx, n, m), d_group(ctx, n, m, Variant::lie)->inclusion));
  });
}

DTildePtr d_tilde(Context& ctx, int n, int m) {
  require(n >= 1 && n % 2 == 1, "d_tilde needs odd n");
  return ctx.memo<DTilde>(key("Dtilde", n, m), [&] {
    auto framing = compose(eta_prime(ctx, n, m), delta(ctx, (n + 1) / 2, m));
    auto q = quotient(framing.target(), framing.images());
    auto out = std::make_shared<DTilde>();
    out->group = q.group;
    out->quotient = q.projection;
    return std::shared_ptr<const DTilde>(out);
  });
}

AbelianHom eta_tilde(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("etaTilde", n, m), [&] {
    auto e = eta_prime(ctx, n, m);
    auto dt = d_tilde(ctx, n, m);
    return std::make_shared<const AbelianHom>(t_tilde(ctx, n, m)->group, dt->group,
                                              e.images());
  });
}

AbelianHom eta_infinity(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("etaInf", n, m), [&] {
    auto di = d_infinity(ctx, n, m);
    return std::make_shared<const AbelianHom>(
        pullback_lift(di->pb, eta(ctx, n, m), infinity_cokernel(ctx, n, m)));
  });
}

AbelianHom d_prime_to_d(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("Dq->D", n, m), [&] {
    auto dq = d_group(ctx, n, m, Variant::quasi);
    auto d = d_group(ctx, n, m, Variant::lie);
    const auto& from = dq->inclusion.target();
    const auto& to = d->inclusion.target();
    std::vector<SparseVec> images;
    for (std::size_t i = 0; i < from->num_generators(); ++i)
      images.push_back(SparseVec::unit(to->index_of(from->generator(i))));
    AbelianHom tensor_p(from, to, std::move(images));
    return std::make_shared<const AbelianHom>(
        restrict_codomain(compose(tensor_p, dq->inclusion), d->inclusion));
  });
}

AbelianHom d_tilde_to_d(Context& ctx, int n, int m) {
  return *ctx.memo<AbelianHom>(key("Dtilde->D", n, m), [&] {
    auto f = d_prime_to_d(ctx, n, m);
    return std::make_shared<const AbelianHom>(d_tilde(ctx, n, m)->group, f.target(),
                                              f.images());
  });
}

}  // namespace wtower
