#include "wtower/verify.hpp"

#include <functional>
#include <future>
#include <map>
#include <thread>

#include <json.hpp>

#include "wtower/eta.hpp"

namespace wtower {

using json = nlohmann::ordered_json;

const char* status_name(Status s) {
  switch (s) {
    case Status::verified: return "verified";
    case Status::failed: return "failed";
    case Status::skipped: return "skipped";
  }
  return "?";
}

namespace {

json integer_json(const Integer& x) {
  if (auto v = x.to_int64()) return *v;
  return x.to_string();
}

json structure_json(const Structure& s) {
  json t = json::array();
  for (const auto& d : s.torsion) t.push_back(integer_json(d));
  return {{"free_rank", s.free_rank}, {"torsion", t}};
}

std::string show(const Group& g, const SparseVec& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& t : x.terms()) {
    if (!s.empty()) s += " + ";
    if (!t.coeff.is_one()) s += t.coeff.to_string() + "*";
    s += g->generator(t.index);
  }
  return s;
}

struct Recorder {
  json checks = json::object();
  json groups = json::object();
  json failures = json::array();
  bool ok = true;

  void check(const std::string& name, bool value, const std::string& witness = "") {
    checks[name] = value;
    if (!value) {
      ok = false;
      json f = {{"check", name}};
      if (!witness.empty()) f["witness"] = witness;
      failures.push_back(f);
    }
  }
  void group(const std::string& name, const Group& g) {
    groups[name] = structure_json(g->structure());
  }
  void iso(const std::string& name, const AbelianHom& h) {
    group(name + ".source", h.source());
    group(name + ".target", h.target());
    check(name + ".injective", is_injective(h));
    check(name + ".surjective", is_surjective(h));
  }
  void exact(const std::string& name, const AbelianHom& f, const AbelianHom& g) {
    check(name, exact_at(f, g));
  }
  void equal_maps(const std::string& name, const AbelianHom& a, const AbelianHom& b) {
    std::string witness;
    for (std::size_t i = 0; i < a.source()->num_generators() && witness.empty(); ++i)
      if (!a.target()->equal(a.image(i), b.image(i)))
        witness = "generator " + a.source()->generator(i) + ": " +
                  show(a.target(), a.image(i)) + " vs " + show(b.target(), b.image(i));
    check(name, witness.empty(), witness);
  }
};

// Identity on generator keys.
AbelianHom by_keys(const Group& from, const Group& to) {
  std::vector<SparseVec> images;
  for (std::size_t i = 0; i < from->num_generators(); ++i)
    images.push_back(SparseVec::unit(to->index_of(from->generator(i))));
  return AbelianHom(from, to, std::move(images));
}

void thm31_i(Context& ctx, int n, int m, Recorder& r) { r.iso("eta'", eta_prime(ctx, n, m)); }
void thm31_ii(Context& ctx, int n, int m, Recorder& r) { r.iso("eta~", eta_tilde(ctx, n, m)); }
void thm31_iii(Context& ctx, int n, int m, Recorder& r) { r.iso("eta", eta(ctx, n, m)); }
void thm31_iv(Context& ctx, int n, int m, Recorder& r) { r.iso("eta", eta(ctx, n, m)); }

// Z2 (x) L_k -> T^inf_{4k-2}, 1 (x) J -> (J,J)^inf.
AbelianHom square_inf(Context& ctx, int n, int m) {
  int k = (n + 2) / 4;
  auto lk = lie_group(ctx, k, m, Variant::lie);
  auto t = t_infinity(ctx, n, m);
  std::vector<SparseVec> images;
  for (const auto& j : lk->trees) images.push_back(t->inf_element(RootedTree::node(j, j)));
  return AbelianHom(z2_lie(ctx, k, m, Variant::lie), t->group, std::move(images));
}

void thm31_v(Context& ctx, int n, int m, Recorder& r) {
  auto e = eta(ctx, n, m);
  auto kappa = square_inf(ctx, n, m);
  auto a = hom_analysis(e);
  r.group("kernel", a.kernel);
  r.group("Z2xL_k", kappa.source());
  r.check("eta.surjective", a.surjective);
  r.check("kernel_structure", a.kernel->structure() == kappa.source()->structure());
  r.check("(J,J)^inf.injective", is_injective(kappa));
  r.exact("(J,J)^inf.image_is_kernel", kappa, e);
}

void thm31_vi(Context& ctx, int n, int m, Recorder& r) {
  auto e = eta_infinity(ctx, n, m);
  auto di = d_infinity(ctx, n, m);
  r.iso("eta_inf", e);
  r.equal_maps("p.eta_inf=eta", compose(di->p, e), eta(ctx, n, m));
  r.equal_maps("sl'.eta_inf=cokernel", compose(di->sl_prime, e), infinity_cokernel(ctx, n, m));
  r.equal_maps("eta_inf.(J,J)^inf=sq_inf", compose(e, square_inf(ctx, n, m)), di->sq_inf);
}

void lemma_cd(Context& ctx, int n, int m, Recorder& r) {
  int k = n / 2;
  auto left = compose(sl(ctx, n, m).map, eta(ctx, n, m));
  auto right = compose(proj_p_z2(ctx, k + 1, m), infinity_cokernel(ctx, n, m));
  r.equal_maps("sl.eta=p.cokernel", left, right);
  auto t = t_infinity(ctx, n, m);
  auto lk = lie_group(ctx, k + 1, m, Variant::lie);
  std::string witness;
  for (const auto& j : t->inf_trees) {
    auto img = left.apply(t->inf_element(j));
    if (!left.target()->equal(img, lk->element(j))) witness = "J = " + j.encode();
  }
  r.check("sl(eta(J^inf))=1xJ", witness.empty(), witness);
}

void tau_even(Context& ctx, int n, int m, Recorder& r) {
  auto inc = infinity_inclusion(ctx, n, m);
  auto cok = infinity_cokernel(ctx, n, m);
  r.group("T", inc.source());
  r.group("Tinf", inc.target());
  r.group("Z2xL'", cok.target());
  r.check("left.injective", is_injective(inc));
  r.exact("middle.exact", inc, cok);
  r.check("right.surjective", is_surjective(cok));
}

void tau_odd(Context& ctx, int n, int m, Recorder& r) {
  int q = (n + 1) / 2;
  auto left = tau_odd_left(ctx, q, m);
  auto right = infinity_quotient(ctx, n, m);
  r.group("Z2xL'", left.source());
  r.group("Ttilde", left.target());
  r.group("Tinf", right.target());
  r.check("left.injective", is_injective(left));
  r.exact("middle.exact", left, right);
  r.check("right.surjective", is_surjective(right));
}

// n is the order of t; the identity lives in L1 (x) L'_{2n+2}.
void framing_factorization(Context& ctx, int n, int m, Recorder& r) {
  int d = n + 1;  // framing map index
  auto framing = delta(ctx, d, m);
  auto ep = eta_prime_raw(ctx, 2 * d - 1, m);
  auto lhs = compose(ep, framing);
  // Z2 (x) L1 (x) L_d -> L1 (x) L'_{2d}, Xi (x) J -> Xi (x) [J,J]
  auto small = tensor_grade(ctx, d - 1, m, Variant::lie);
  auto big = tensor_grade(ctx, 2 * d - 1, m, Variant::quasi);
  std::vector<SparseVec> sq_images;
  for (int i = 1; i <= m; ++i)
    for (const auto& j : small->factor->trees)
      sq_images.push_back(big->element(i, RootedTree::node(j, j)));
  AbelianHom one_sq(tensor_Z2(small->group), big->group, std::move(sq_images));
  auto t = t_group(ctx, n, m);
  std::string witness;
  for (std::size_t g = 0; g < t->trees.size() && witness.empty(); ++g) {
    SparseVec rooted;
    for (const auto& v : all_rootings(t->trees[g])) rooted += small->element(v.label, v.tree);
    if (!big->group->equal(lhs.image(g), one_sq.apply(rooted)))
      witness = "t = " + t->trees[g].encode();
  }
  r.check("eta'.delta=sq.(1xeta')", witness.empty(), witness);
}

// The connecting map Z2 (x) L'_{q+1} -> D~_{2q-1}.
AbelianHom d_connect(Context& ctx, int q, int m) {
  return compose(eta_tilde(ctx, 2 * q - 1, m), tau_odd_left(ctx, q, m));
}

void master_diagram_1(Context& ctx, int n, int m, Recorder& r) {
  int k = n / 4;
  // T row: T_4k >-> T^inf_4k -> T~_{4k-1} ->> T^inf_{4k-1}
  auto t1 = infinity_inclusion(ctx, n, m);
  auto t2 = compose(tau_odd_left(ctx, 2 * k, m), infinity_cokernel(ctx, n, m));
  auto t3 = infinity_quotient(ctx, n - 1, m);
  r.check("T.left.injective", is_injective(t1));
  r.exact("T.exact_at_Tinf", t1, t2);
  r.exact("T.exact_at_Ttilde", t2, t3);
  r.check("T.right.surjective", is_surjective(t3));
  // D row: D'_4k >-> D_4k -> D~_{4k-1} ->> D_{4k-1}
  auto odd_lift = by_keys(z2_lie(ctx, 2 * k + 1, m, Variant::lie),
                          z2_lie(ctx, 2 * k + 1, m, Variant::quasi));
  auto d1 = d_prime_to_d(ctx, n, m);
  auto d2 = compose(d_connect(ctx, 2 * k, m), compose(odd_lift, sl(ctx, n, m).map));
  auto d3 = d_tilde_to_d(ctx, n - 1, m);
  r.check("D.left.injective", is_injective(d1));
  r.exact("D.exact_at_D", d1, d2);
  r.exact("D.exact_at_Dtilde", d2, d3);
  r.check("D.right.surjective", is_surjective(d3));
  // vertical isomorphisms and commuting squares
  auto v1 = eta_prime(ctx, n, m);
  auto v2 = eta(ctx, n, m);
  auto v3 = eta_tilde(ctx, n - 1, m);
  auto v4 = eta(ctx, n - 1, m);
  r.iso("eta'_4k", v1);
  r.iso("eta_4k", v2);
  r.iso("eta~_4k-1", v3);
  r.iso("eta_4k-1", v4);
  r.equal_maps("square1", compose(v2, t1), compose(d1, v1));
  r.equal_maps("square2", compose(v3, t2), compose(d2, v2));
  r.equal_maps("square3", compose(v4, t3), compose(d3, v3));
}

void master_diagram_2(Context& ctx, int n, int m, Recorder& r) {
  int k = (n + 2) / 4;
  auto di = d_infinity(ctx, n, m);
  // T row: T_{4k-2} >-> T^inf_{4k-2} -> T~_{4k-3} ->> T^inf_{4k-3}
  auto t1 = infinity_inclusion(ctx, n, m);
  auto t2 = compose(tau_odd_left(ctx, 2 * k - 1, m), infinity_cokernel(ctx, n, m));
  auto t3 = infinity_quotient(ctx, n - 1, m);
  r.check("T.left.injective", is_injective(t1));
  r.exact("T.exact_at_Tinf", t1, t2);
  r.exact("T.exact_at_Ttilde", t2, t3);
  r.check("T.right.surjective", is_surjective(t3));
  // D row: D'_{4k-2} >-> D^inf -> D~_{4k-3} ->> D_{4k-3}
  auto dpd = d_prime_to_d(ctx, n, m);
  auto zero = AbelianHom::zero(dpd.source(), di->pb.to_b.target());
  auto d1 = pullback_lift(di->pb, dpd, zero);
  auto d2 = compose(d_connect(ctx, 2 * k - 1, m), di->sl_prime);
  auto d3 = d_tilde_to_d(ctx, n - 1, m);
  r.check("D.left.injective", is_injective(d1));
  r.exact("D.exact_at_Dinf", d1, d2);
  r.exact("D.exact_at_Dtilde", d2, d3);
  r.check("D.right.surjective", is_surjective(d3));
  // bottom rows: D' >-> D^inf ->> Z2 (x) L'_2k and D' >-> D ->> Z2 (x) L_2k
  auto s = sl(ctx, n, m).map;
  r.exact("Dinf.bottom.exact", d1, di->sl_prime);
  r.check("sl'.surjective", is_surjective(di->sl_prime));
  r.check("D'.to_D.injective", is_injective(dpd));
  r.exact("D.bottom.exact", dpd, s);
  r.check("sl.surjective", is_surjective(s));
  r.equal_maps("pullback_square", compose(s, di->p), compose(di->pb.g, di->sl_prime));
  r.exact("sq_inf.p.exact", di->sq_inf, di->p);
  r.check("sq_inf.injective", is_injective(di->sq_inf));
  r.check("p.surjective", is_surjective(di->p));
  // vertical maps and squares
  auto v1 = eta_prime(ctx, n, m);
  auto v2 = eta_infinity(ctx, n, m);
  auto v3 = eta_tilde(ctx, n - 1, m);
  auto v4 = eta(ctx, n - 1, m);
  r.iso("eta'_4k-2", v1);
  r.iso("eta_inf_4k-2", v2);
  r.iso("eta~_4k-3", v3);
  r.iso("eta_4k-3", v4);
  r.equal_maps("square1", compose(v2, t1), compose(d1, v1));
  r.equal_maps("square2", compose(v3, t2), compose(d2, v2));
  r.equal_maps("square3", compose(v4, t3), compose(d3, v3));
}

using ClaimFn = std::function<void(Context&, int, int, Recorder&)>;

struct Claim {
  std::string id;
  ClaimFn fn;
  // Orders this claim runs at, given the max order; always includes the
  // smallest valid instance.
  std::function<std::vector<int>(int)> orders;
};

std::vector<int> range(int from, int step, int upto) {
  std::vector<int> out;
  for (int n = from; n <= std::max(upto, from); n += step) out.push_back(n);
  return out;
}

const std::vector<Claim>& claims() {
  static const std::vector<Claim> all = {
      {"thm31_i", thm31_i, [](int N) { return range(0, 1, N); }},
      {"thm31_ii", thm31_ii, [](int N) { return range(1, 2, N); }},
      {"thm31_iii", thm31_iii, [](int N) { return range(1, 2, N); }},
      {"thm31_iv", thm31_iv, [](int N) { return range(0, 4, N); }},
      {"thm31_v", thm31_v, [](int N) { return range(2, 4, N); }},
      {"thm31_vi", thm31_vi, [](int N) { return range(2, 4, N); }},
      {"lemma_cd", lemma_cd, [](int N) { return range(2, 2, N); }},
      {"tau_even", tau_even, [](int N) { return range(0, 2, N); }},
      {"tau_odd", tau_odd, [](int N) { return range(1, 2, N); }},
      {"framing_factorization", framing_factorization,
       [](int N) { return range(0, 1, (N - 1) / 2); }},
      {"master_diagram_1", master_diagram_1, [](int N) { return range(4, 4, N); }},
      {"master_diagram_2", master_diagram_2, [](int N) { return range(2, 4, N); }},
  };
  return all;
}

// Order of the largest tree group in an instance, for budget checks.
int instance_cost(const std::string& claim, int n) {
  if (claim == "framing_factorization") return 2 * n + 1;
  return n;
}

}  // namespace

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& c : claims()) v.push_back(c.id);
    return v;
  }();
  return ids;
}

VerificationReport verify(Context& ctx, const std::string& claim, const VerifyParams& params) {
  const Claim* c = nullptr;
  for (const auto& x : claims())
    if (x.id == claim) c = &x;
  if (!c) throw Error(ErrorCode::UnknownName, "unknown claim '" + claim + "'");

  std::vector<int> orders = c->orders(params.max_order);
  if (params.order) {
    auto all = c->orders(*params.order);
    bool valid = std::find(all.begin(), all.end(), *params.order) != all.end();
    orders.clear();
    if (valid) orders.push_back(*params.order);
  }

  json instances = json::array();
  bool any_run = false, all_ok = true;
  for (int n : orders)
    for (int m = 1; m <= params.labels; ++m) {
      json inst = {{"order", n}, {"labels", m}};
      try {
        ctx.check_budget(instance_cost(claim, n), m);
      } catch (const Error&) {
        inst["status"] = "skipped";
        inst["reason"] = "budget";
        instances.push_back(inst);
        continue;
      }
      Recorder rec;
      try {
        c->fn(ctx, n, m, rec);
      } catch (const Error& e) {
        rec.check("construction", false, e.what());
      }
      any_run = true;
      all_ok = all_ok && rec.ok;
      inst["status"] = rec.ok ? "verified" : "failed";
      inst["groups"] = rec.groups;
      inst["checks"] = rec.checks;
      if (!rec.ok) inst["failures"] = rec.failures;
      instances.push_back(inst);
    }

  VerificationReport rep;
  rep.claim = claim;
  rep.params = params;
  rep.status = !any_run ? Status::skipped : all_ok ? Status::verified : Status::failed;
  json p = {{"max_order", params.max_order}, {"labels", params.labels}};
  if (params.order) p["order"] = *params.order;
  json out = {{"claim", claim},
              {"params", p},
              {"status", status_name(rep.status)},
              {"witness", {{"instances", instances}}}};
  rep.json = out.dump();
  return rep;
}

std::vector<VerificationReport> verify_all(Context& ctx, const VerifyParams& params) {
  const auto& ids = claim_ids();
  std::vector<VerificationReport> out(ids.size());
  int jobs = ctx.config().jobs > 0 ? ctx.config().jobs
                                   : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(ids.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::mutex err_mutex;
  std::exception_ptr err;
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t i; (i = next++) < ids.size();) {
        try {
          out[i] = verify(ctx, ids[i], params);
        } catch (...) {
          std::lock_guard lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& w : workers) w.join();
  if (err) std::rethrow_exception(err);
  return out;
}

std::string reports_json(const std::vector<VerificationReport>& reports) {
  json arr = json::array();
  int verified = 0, failed = 0, skipped = 0;
  for (const auto& r : reports) {
    arr.push_back(json::parse(r.json));
    (r.status == Status::verified ? verified : r.status == Status::failed ? failed : skipped)++;
  }
  json out = {{"summary", {{"claims", reports.size()},
                           {"verified", verified},
                           {"failed", failed},
                           {"skipped", skipped}}},
              {"reports", arr}};
  return out.dump(2);
}

}  // namespace wtower
