#include "wtower/abelian.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

namespace wtower {

std::string Structure::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    std::string p = "Z" + torsion[i].to_string();
    if (j - i > 1) p += "^" + std::to_string(j - i);
    parts.push_back(p);
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " ⊕ " + parts[i];
  return out;
}

// ---------------------------------------------------------------- groups

FpAbelianGroup::FpAbelianGroup(std::vector<std::string> generators,
                               std::vector<SparseVec> relations)
    : generators_(std::move(generators)), relations_(std::move(relations)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (!index_.emplace(generators_[i], i).second)
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate generator key: " + generators_[i]);
  }
  for (const auto& r : relations_)
    if (!r.empty() && r.terms().back().index >= generators_.size())
      throw Error(ErrorCode::ShapeMismatch, "relator index out of range");
  normalize();
}

Group FpAbelianGroup::make(std::vector<std::string> generators,
                           std::vector<SparseVec> relations) {
  return std::make_shared<const FpAbelianGroup>(std::move(generators),
                                                std::move(relations));
}

Group FpAbelianGroup::free(std::vector<std::string> generators) {
  return make(std::move(generators), {});
}

std::optional<std::size_t> FpAbelianGroup::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FpAbelianGroup::index_of(const std::string& key) const {
  auto i = find(key);
  if (!i) throw Error(ErrorCode::InvalidArgument, "unknown generator: " + key);
  return *i;
}

IntMatrix FpAbelianGroup::relation_matrix() const {
  IntMatrix m(generators_.size(), relations_.size());
  for (std::size_t j = 0; j < relations_.size(); ++j)
    for (const auto& t : relations_[j].terms()) m.at(t.index, j) = t.coeff;
  return m;
}

bool FpAbelianGroup::same_presentation(const FpAbelianGroup& other) const {
  return generators_ == other.generators_ && relations_ == other.relations_;
}

bool same_group(const Group& a, const Group& b) {
  return a == b || (a && b && a->same_presentation(*b));
}

// Eliminates generators through relators with a unit coefficient, then runs a
// dense Smith reduction on whatever is left.
void FpAbelianGroup::normalize() {
  const std::size_t n = generators_.size();
  std::vector<SparseVec> cols;
  for (const auto& r : relations_)
    if (!r.empty()) cols.push_back(r);
  const std::size_t q = cols.size();

  std::vector<std::vector<std::size_t>> occ(n);
  for (std::size_t c = 0; c < q; ++c)
    for (const auto& t : cols[c].terms()) occ[t.index].push_back(c);
  std::vector<char> alive(q, 1), eliminated(n, 0);

  using Entry = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t c = 0; c < q; ++c) heap.push({cols[c].size(), c});

  std::vector<std::size_t> scratch;
  while (!heap.empty()) {
    auto [nnz, c] = heap.top();
    heap.pop();
    if (!alive[c] || cols[c].size() != nnz) continue;
    if (nnz == 0) {
      alive[c] = 0;
      continue;
    }
    std::size_t best = n;
    std::size_t best_count = 0;
    for (const auto& t : cols[c].terms()) {
      if (!t.coeff.is_unit()) continue;
      if (best == n || occ[t.index].size() < best_count) {
        best = t.index;
        best_count = occ[t.index].size();
      }
    }
    if (best == n) continue;  // revisited if the column changes

    const std::size_t g = best;
    const Integer e = cols[c].get(g);
    SparseVec pivot = cols[c];
    alive[c] = 0;

    scratch = occ[g];
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (std::size_t d : scratch) {
      if (d == c || !alive[d]) continue;
      Integer v = cols[d].get(g);
      if (v.is_zero()) continue;
      cols[d].add_scaled(pivot, -(v * e));
      for (const auto& t : pivot.terms())
        if (t.index != g) occ[t.index].push_back(d);
      heap.push({cols[d].size(), d});
    }
    occ[g].clear();
    eliminated[g] = 1;

    SparseVec expr = pivot;
    expr.add_scaled(SparseVec::unit(g, e), -1);
    expr.scale(-e);
    steps_.push_back({g, std::move(expr)});

    // Compact occurrence lists that have grown with stale entries.
    for (const auto& t : pivot.terms()) {
      auto& list = occ[t.index];
      if (list.size() > 64) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [&](std::size_t d) { return !alive[d]; }),
                   list.end());
      }
    }
  }

  std::vector<std::ptrdiff_t> pos(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (!eliminated[i]) {
      pos[i] = static_cast<std::ptrdiff_t>(survivors_.size());
      survivors_.push_back(i);
    }
  const std::size_t s = survivors_.size();

  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < q; ++c)
    if (alive[c] && !cols[c].empty()) rest.push_back(c);

  IntMatrix dense(s, rest.size());
  for (std::size_t j = 0; j < rest.size(); ++j)
    for (const auto& t : cols[rest[j]].terms())
      dense.at(static_cast<std::size_t>(pos[t.index]), j) = t.coeff;

  auto to_generators = [&](const std::vector<Integer>& over_survivors) {
    std::vector<std::pair<std::size_t, Integer>> pairs;
    for (std::size_t i = 0; i < s; ++i)
      if (!over_survivors[i].is_zero())
        pairs.emplace_back(survivors_[i], over_survivors[i]);
    return SparseVec::from_pairs(std::move(pairs));
  };

  if (rest.empty()) {
    for (std::size_t i = 0; i < s; ++i) {
      rows_.push_back(SparseVec::unit(i));
      moduli_.push_back(0);
      lifts_.push_back(SparseVec::unit(survivors_[i]));
    }
  } else {
    SmithForm sf = smith_normal_form(dense);
    for (std::size_t i = 0; i < s; ++i) {
      Integer d = i < sf.rank ? sf.S.at(i, i) : Integer(0);
      if (d.is_one()) continue;
      rows_.push_back(SparseVec::from_dense(sf.U.row(i)));
      moduli_.push_back(d);
      lifts_.push_back(to_generators(sf.Uinv.column(i)));
    }
  }
  for (const auto& d : moduli_) {
    if (d.is_zero())
      ++structure_.free_rank;
    else
      structure_.torsion.push_back(d);
  }
}

std::vector<Integer> FpAbelianGroup::coords(const SparseVec& x) const {
  std::vector<Integer> d = x.to_dense(generators_.size());
  for (const auto& step : steps_) {
    Integer& v = d[step.gen];
    if (v.is_zero()) continue;
    Integer c = std::move(v);
    v = Integer(0);
    for (const auto& t : step.expr.terms()) d[t.index].addmul(c, t.coeff);
  }
  std::vector<Integer> out(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    for (const auto& t : rows_[k].terms())
      out[k].addmul(t.coeff, d[survivors_[t.index]]);
    if (!moduli_[k].is_zero()) out[k] = floor_mod(out[k], moduli_[k]);
  }
  return out;
}

SparseVec FpAbelianGroup::from_coords(const std::vector<Integer>& c) const {
  if (c.size() != moduli_.size())
    throw Error(ErrorCode::ShapeMismatch, "coordinate vector length");
  SparseVec out;
  for (std::size_t k = 0; k < c.size(); ++k) out.add_scaled(lifts_[k], c[k]);
  return out;
}

std::vector<std::vector<Integer>> FpAbelianGroup::coord_relations() const {
  std::vector<std::vector<Integer>> out;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    if (moduli_[k].is_zero()) continue;
    std::vector<Integer> v(moduli_.size());
    v[k] = moduli_[k];
    out.push_back(std::move(v));
  }
  return out;
}

bool FpAbelianGroup::is_zero(const SparseVec& x) const {
  if (x.empty()) return true;
  auto c = coords(x);
  return std::all_of(c.begin(), c.end(),
                     [](const Integer& v) { return v.is_zero(); });
}

Integer FpAbelianGroup::order_of(const SparseVec& x) const {
  auto c = coords(x);
  Integer order = 1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    if (moduli_[k].is_zero()) return 0;
    Integer o = exact_div(moduli_[k], gcd(moduli_[k], c[k]));
    order = exact_div(order * o, gcd(order, o));
  }
  return order;
}

// ---------------------------------------------------------------- homs

AbelianHom::AbelianHom(Group source, Group target, std::vector<SparseVec> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)) {
  if (images_.size() != source_->num_generators())
    throw Error(ErrorCode::ShapeMismatch,
                "homomorphism needs one image per source generator");
  for (const auto& v : images_)
    if (!v.empty() && v.terms().back().index >= target_->num_generators())
      throw Error(ErrorCode::ShapeMismatch, "image index out of range");
  for (std::size_t r = 0; r < source_->relations().size(); ++r) {
    SparseVec img = apply(source_->relations()[r]);
    if (!target_->is_zero(img))
      throw Error(ErrorCode::WellDefinedness,
                  "relator " + std::to_string(r) +
                      " of the source does not map to zero");
  }
}

AbelianHom AbelianHom::identity(const Group& g) {
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < g->num_generators(); ++i)
    images.push_back(SparseVec::unit(i));
  return AbelianHom(g, g, std::move(images));
}

AbelianHom AbelianHom::zero(const Group& source, const Group& target) {
  return AbelianHom(source, target,
                    std::vector<SparseVec>(source->num_generators()));
}

SparseVec AbelianHom::apply(const SparseVec& x) const {
  SparseVec out;
  for (const auto& t : x.terms()) {
    if (t.index >= images_.size())
      throw Error(ErrorCode::ShapeMismatch, "element outside the source");
    out.add_scaled(images_[t.index], t.coeff);
  }
  return out;
}

IntMatrix AbelianHom::matrix() const {
  IntMatrix m(target_->num_generators(), source_->num_generators());
  for (std::size_t j = 0; j < images_.size(); ++j)
    for (const auto& t : images_[j].terms()) m.at(t.index, j) = t.coeff;
  return m;
}

IntMatrix AbelianHom::smith_matrix() const {
  const std::size_t ks = source_->num_coords(), kt = target_->num_coords();
  IntMatrix F(kt, ks);
  for (std::size_t k = 0; k < ks; ++k) {
    auto c = target_->coords(apply(source_->coord_lift(k)));
    for (std::size_t i = 0; i < kt; ++i) F.at(i, k) = std::move(c[i]);
  }
  return F;
}

bool AbelianHom::is_zero() const {
  return std::all_of(images_.begin(), images_.end(),
                     [&](const SparseVec& v) { return target_->is_zero(v); });
}

bool AbelianHom::equals(const AbelianHom& other) const {
  if (!same_group(source_, other.source_) || !same_group(target_, other.target_))
    throw Error(ErrorCode::ShapeMismatch, "comparing homs with different ends");
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!target_->equal(images_[i], other.images_[i])) return false;
  return true;
}

AbelianHom compose(const AbelianHom& g, const AbelianHom& f) {
  if (!same_group(f.target(), g.source()))
    throw Error(ErrorCode::ShapeMismatch, "composition of non-composable maps");
  std::vector<SparseVec> images;
  images.reserve(f.images().size());
  for (const auto& v : f.images()) images.push_back(g.apply(v));
  return AbelianHom(f.source(), g.target(), std::move(images));
}

AbelianHom negate(const AbelianHom& f) {
  std::vector<SparseVec> images;
  for (const auto& v : f.images()) images.push_back(-v);
  return AbelianHom(f.source(), f.target(), std::move(images));
}

AbelianHom add(const AbelianHom& f, const AbelianHom& g) {
  if (!same_group(f.source(), g.source()) || !same_group(f.target(), g.target()))
    throw Error(ErrorCode::ShapeMismatch, "adding maps with different ends");
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < f.images().size(); ++i)
    images.push_back(f.image(i) + g.image(i));
  return AbelianHom(f.source(), f.target(), std::move(images));
}

// ---------------------------------------------------------------- analysis

namespace {

// Columns of the relation lattice of g in its Smith coordinates.
std::vector<std::vector<Integer>> relation_columns(const Group& g) {
  return g->coord_relations();
}

IntMatrix join_columns(const IntMatrix& a,
                       const std::vector<std::vector<Integer>>& extra) {
  IntMatrix out(a.rows(), a.cols() + extra.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  for (std::size_t j = 0; j < extra.size(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      out.at(i, a.cols() + j) = extra[j][i];
  return out;
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Relations among vectors `gens` (columns in Z^k) modulo the lattice `rel`.
std::vector<SparseVec> relations_among(
    const std::vector<std::vector<Integer>>& gens,
    const std::vector<std::vector<Integer>>& rel, std::size_t k) {
  IntMatrix m(k, gens.size() + rel.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) m.at(i, j) = gens[j][i];
  for (std::size_t j = 0; j < rel.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) m.at(i, gens.size() + j) = rel[j][i];
  std::vector<SparseVec> out;
  for (auto& v : Lattice(m).kernel()) {
    v.resize(gens.size());
    SparseVec s = SparseVec::from_dense(v);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

// Vectors in source Smith coordinates spanning the preimage of the target's
// relation lattice.
std::vector<std::vector<Integer>> kernel_vectors(const AbelianHom& h) {
  const std::size_t ks = h.source()->num_coords();
  IntMatrix B = join_columns(h.smith_matrix(), relation_columns(h.target()));
  std::vector<std::vector<Integer>> out;
  for (auto& v : Lattice(B).kernel()) {
    v.resize(ks);
    if (std::any_of(v.begin(), v.end(),
                    [](const Integer& x) { return !x.is_zero(); }))
      out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::pair<Group, AbelianHom> kernel_of(const AbelianHom& h) {
  const Group& S = h.source();
  const std::size_t ks = S->num_coords();
  auto K = kernel_vectors(h);
  auto rels = relations_among(K, relation_columns(S), ks);
  Group kernel = FpAbelianGroup::make(numbered("k", K.size()), std::move(rels));
  std::vector<SparseVec> images;
  for (const auto& v : K) images.push_back(S->from_coords(v));
  AbelianHom incl(kernel, S, std::move(images));
  return {kernel, incl};
}

HomAnalysis hom_analysis(const AbelianHom& h) {
  HomAnalysis out;
  const Group& S = h.source();
  const Group& T = h.target();
  const std::size_t ks = S->num_coords(), kt = T->num_coords();
  IntMatrix F = h.smith_matrix();

  auto K = kernel_vectors(h);
  {
    auto rels = relations_among(K, relation_columns(S), ks);
    out.kernel = FpAbelianGroup::make(numbered("k", K.size()), std::move(rels));
    std::vector<SparseVec> images;
    for (const auto& v : K) images.push_back(S->from_coords(v));
    out.kernel_inclusion = AbelianHom(out.kernel, S, std::move(images));
  }
  {
    std::vector<SparseVec> rels;
    for (const auto& v : K) rels.push_back(SparseVec::from_dense(v));
    out.image = FpAbelianGroup::make(numbered("i", ks), std::move(rels));
    std::vector<SparseVec> images;
    for (std::size_t k = 0; k < ks; ++k)
      images.push_back(h.apply(S->coord_lift(k)));
    out.image_inclusion = AbelianHom(out.image, T, std::move(images));
  }
  {
    std::vector<SparseVec> rels;
    for (const auto& v : relation_columns(T)) rels.push_back(SparseVec::from_dense(v));
    for (std::size_t k = 0; k < ks; ++k)
      rels.push_back(SparseVec::from_dense(F.column(k)));
    out.cokernel = FpAbelianGroup::make(numbered("c", kt), std::move(rels));
    std::vector<SparseVec> images;
    for (std::size_t g = 0; g < T->num_generators(); ++g)
      images.push_back(SparseVec::from_dense(T->coords(SparseVec::unit(g))));
    out.cokernel_projection = AbelianHom(T, out.cokernel, std::move(images));
  }
  out.injective = out.kernel->is_trivial();
  out.surjective = out.cokernel->is_trivial();
  out.isomorphism = out.injective && out.surjective;
  return out;
}

bool is_injective(const AbelianHom& h) {
  return kernel_of(h).first->is_trivial();
}

bool is_surjective(const AbelianHom& h) {
  const Group& T = h.target();
  const std::size_t kt = T->num_coords();
  Lattice lat(join_columns(h.smith_matrix(), relation_columns(T)));
  for (std::size_t i = 0; i < kt; ++i) {
    std::vector<Integer> e(kt);
    e[i] = 1;
    if (!lat.contains(e)) return false;
  }
  return true;
}

bool in_subgroup(const Group& g, const std::vector<SparseVec>& gens,
                 const SparseVec& y) {
  const std::size_t k = g->num_coords();
  std::vector<std::vector<Integer>> cols;
  for (const auto& v : gens) cols.push_back(g->coords(v));
  for (auto& v : relation_columns(g)) cols.push_back(std::move(v));
  return Lattice(IntMatrix::from_columns(cols, k)).contains(g->coords(y));
}

bool exact_at(const AbelianHom& f, const AbelianHom& g) {
  if (!same_group(f.target(), g.source()))
    throw Error(ErrorCode::ShapeMismatch, "exact_at: maps do not meet");
  for (const auto& v : f.images())
    if (!g.target()->is_zero(g.apply(v))) return false;
  const Group& G = g.source();
  Lattice lat(join_columns(f.smith_matrix(), relation_columns(G)));
  auto [ker, incl] = kernel_of(g);
  for (const auto& y : incl.images())
    if (!lat.contains(G->coords(y))) return false;
  return true;
}

PreimageSolver::PreimageSolver(const AbelianHom& h)
    : h_(h),
      source_coords_(h.source()->num_coords()),
      lattice_(join_columns(h.smith_matrix(), relation_columns(h.target()))) {}

std::optional<SparseVec> PreimageSolver::solve(const SparseVec& y) const {
  auto x = lattice_.solve(h_.target()->coords(y));
  if (!x) return std::nullopt;
  x->resize(source_coords_);
  return h_.source()->from_coords(*x);
}

// ---------------------------------------------------------------- constructions

Group tensor_Z2(const Group& g) {
  std::vector<SparseVec> rels = g->relations();
  for (std::size_t i = 0; i < g->num_generators(); ++i)
    rels.push_back(SparseVec::unit(i, 2));
  return FpAbelianGroup::make(g->generators(), std::move(rels));
}

Quotient quotient(const Group& g, const std::vector<SparseVec>& extra) {
  std::vector<SparseVec> rels = g->relations();
  rels.insert(rels.end(), extra.begin(), extra.end());
  Quotient q;
  q.group = FpAbelianGroup::make(g->generators(), std::move(rels));
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < g->num_generators(); ++i)
    images.push_back(SparseVec::unit(i));
  q.projection = AbelianHom(g, q.group, std::move(images));
  return q;
}

namespace {

SparseVec shift(const SparseVec& v, std::size_t offset) {
  std::vector<std::pair<std::size_t, Integer>> pairs;
  for (const auto& t : v.terms()) pairs.emplace_back(t.index + offset, t.coeff);
  return SparseVec::from_pairs(std::move(pairs));
}

}  // namespace

DirectSum direct_sum(const Group& a, const Group& b) {
  const std::size_t na = a->num_generators(), nb = b->num_generators();
  std::vector<std::string> keys;
  for (const auto& k : a->generators()) keys.push_back("a:" + k);
  for (const auto& k : b->generators()) keys.push_back("b:" + k);
  std::vector<SparseVec> rels = a->relations();
  for (const auto& r : b->relations()) rels.push_back(shift(r, na));
  DirectSum out;
  out.group = FpAbelianGroup::make(std::move(keys), std::move(rels));
  std::vector<SparseVec> ia, ib, pa, pb;
  for (std::size_t i = 0; i < na; ++i) ia.push_back(SparseVec::unit(i));
  for (std::size_t i = 0; i < nb; ++i) ib.push_back(SparseVec::unit(na + i));
  for (std::size_t i = 0; i < na; ++i) {
    pa.push_back(SparseVec::unit(i));
    pb.emplace_back();
  }
  for (std::size_t i = 0; i < nb; ++i) {
    pa.emplace_back();
    pb.push_back(SparseVec::unit(i));
  }
  out.inj_a = AbelianHom(a, out.group, std::move(ia));
  out.inj_b = AbelianHom(b, out.group, std::move(ib));
  out.proj_a = AbelianHom(out.group, a, std::move(pa));
  out.proj_b = AbelianHom(out.group, b, std::move(pb));
  return out;
}

Pullback pullback(const AbelianHom& f, const AbelianHom& g) {
  if (!same_group(f.target(), g.target()))
    throw Error(ErrorCode::ShapeMismatch, "pullback needs a common target");
  Pullback pb;
  pb.f = f;
  pb.g = g;
  pb.sum = direct_sum(f.source(), g.source());
  AbelianHom diff = add(compose(f, pb.sum.proj_a), negate(compose(g, pb.sum.proj_b)));
  auto [P, incl] = kernel_of(diff);
  pb.group = P;
  pb.inclusion = incl;
  pb.to_a = compose(pb.sum.proj_a, incl);
  pb.to_b = compose(pb.sum.proj_b, incl);
  return pb;
}

AbelianHom pullback_lift(const Pullback& pb, const AbelianHom& x,
                         const AbelianHom& y) {
  if (!same_group(x.source(), y.source()))
    throw Error(ErrorCode::ShapeMismatch, "pullback_lift: different sources");
  if (!compose(pb.f, x).equals(compose(pb.g, y)))
    throw Error(ErrorCode::PullbackMismatch,
                "the two maps disagree in the common target");
  PreimageSolver solver(pb.inclusion);
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < x.source()->num_generators(); ++i) {
    SparseVec z = pb.sum.inj_a.apply(x.image(i)) + pb.sum.inj_b.apply(y.image(i));
    auto pre = solver.solve(z);
    if (!pre) throw Error(ErrorCode::PullbackMismatch, "element not in pullback");
    images.push_back(std::move(*pre));
  }
  return AbelianHom(x.source(), pb.group, std::move(images));
}

SparseVec solve_division(const Group& g, const SparseVec& y, const Integer& k) {
  if (k.sign() <= 0)
    throw Error(ErrorCode::InvalidArgument, "divisor must be positive");
  if (!g->structure().torsion.empty())
    throw Error(ErrorCode::TorsionPresent, "division needs a torsion-free group");
  auto c = g->coords(y);
  for (auto& v : c) {
    if (!divides(k, v)) throw Error(ErrorCode::NotDivisible, "element not divisible");
    v = exact_div(v, k);
  }
  return g->from_coords(c);
}

AbelianHom restrict_codomain(const AbelianHom& f, const AbelianHom& inclusion) {
  if (!same_group(f.target(), inclusion.target()))
    throw Error(ErrorCode::ShapeMismatch, "restrict_codomain: targets differ");
  PreimageSolver solver(inclusion);
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < f.images().size(); ++i) {
    auto pre = solver.solve(f.image(i));
    if (!pre)
      throw Error(ErrorCode::ImageEscapesKernel,
                  "image of generator " + f.source()->generator(i) +
                      " leaves the subgroup");
    images.push_back(std::move(*pre));
  }
  return AbelianHom(f.source(), inclusion.source(), std::move(images));
}

}  // namespace wtower
