#include "wtower/wtower.h"

#include <cstring>

#include <json.hpp>

#include "wtower/catalog.hpp"
#include "wtower/quadratic.hpp"
#include "wtower/verify.hpp"

using namespace wtower;

struct wt_context {
  explicit wt_context(Config c) : ctx(c) {}
  Context ctx;
  std::string error;
};

struct wt_group {
  Space space;
};

struct wt_hom {
  NamedMap map;
};

namespace {

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wt_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Budget: return WT_ERR_BUDGET;
    case ErrorCode::UnknownName: return WT_ERR_UNKNOWN_NAME;
    case ErrorCode::Parse: return WT_ERR_PARSE;
    case ErrorCode::Schema: return WT_ERR_SCHEMA;
    case ErrorCode::InvalidArgument: return WT_ERR_INVALID_ARGUMENT;
    default: return WT_ERR_MATH;
  }
}

// Runs f, translating exceptions into a status and the context message.
template <class F>
wt_status guard(wt_context* ctx, F&& f) {
  if (ctx) ctx->error.clear();
  try {
    f();
    return WT_OK;
  } catch (const Error& e) {
    if (ctx) ctx->error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    if (ctx) ctx->error = e.what();
    return WT_ERR_INTERNAL;
  } catch (...) {
    if (ctx) ctx->error = "unknown failure";
    return WT_ERR_INTERNAL;
  }
}

void need(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

extern "C" {

const char* wt_status_name(wt_status s) {
  switch (s) {
    case WT_OK: return "ok";
    case WT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WT_ERR_BUDGET: return "budget exceeded";
    case WT_ERR_UNKNOWN_NAME: return "unknown name";
    case WT_ERR_PARSE: return "parse error";
    case WT_ERR_SCHEMA: return "schema error";
    case WT_ERR_MATH: return "mathematical check failed";
    case WT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void wt_config_default(wt_config* cfg) {
  if (!cfg) return;
  Config c;
  cfg->max_order = c.max_order;
  cfg->max_order_wide = c.max_order_wide;
  cfg->max_labels = c.max_labels;
  cfg->seed = c.seed;
  cfg->jobs = c.jobs;
}

wt_status wt_context_new(const wt_config* cfg, wt_context** out) {
  return guard(nullptr, [&] {
    need(out != nullptr, "null output pointer");
    Config c;
    if (cfg) {
      need(cfg->max_order > 0 && cfg->max_order_wide > 0 && cfg->max_labels > 0 && cfg->jobs >= 0,
           "caps must be positive");
      c.max_order = cfg->max_order;
      c.max_order_wide = cfg->max_order_wide;
      c.max_labels = cfg->max_labels;
      c.seed = cfg->seed;
      c.jobs = cfg->jobs;
    }
    *out = new wt_context(c);
  });
}

void wt_context_free(wt_context* ctx) { delete ctx; }

const char* wt_context_error(const wt_context* ctx) { return ctx ? ctx->error.c_str() : ""; }

wt_status wt_group_new(wt_context* ctx, const char* name, int order, int labels, wt_group** out) {
  return guard(ctx, [&] {
    need(ctx && name && out, "null argument");
    *out = new wt_group{named_group(ctx->ctx, name, order, labels)};
  });
}

void wt_group_free(wt_group* g) { delete g; }

wt_status wt_group_structure(const wt_group* g, size_t* free_rank, size_t* num_torsion) {
  return guard(nullptr, [&] {
    need(g != nullptr, "null group");
    const auto& s = g->space.group->structure();
    if (free_rank) *free_rank = s.free_rank;
    if (num_torsion) *num_torsion = s.torsion.size();
  });
}

wt_status wt_group_json(wt_context* ctx, const wt_group* g, int with_generators, char** out) {
  return guard(ctx, [&] {
    need(g && out, "null argument");
    *out = dup(group_json(g->space, with_generators != 0));
  });
}

wt_status wt_group_element(wt_context* ctx, const wt_group* g, const char* element, char** out) {
  return guard(ctx, [&] {
    need(g && element && out, "null argument");
    *out = dup(g->space.format(g->space.parse(element)));
  });
}

wt_status wt_hom_new(wt_context* ctx, const char* name, int order, int labels, wt_hom** out) {
  return guard(ctx, [&] {
    need(ctx && name && out, "null argument");
    *out = new wt_hom{named_map(ctx->ctx, name, order, labels)};
  });
}

void wt_hom_free(wt_hom* h) { delete h; }

wt_status wt_hom_apply(wt_context* ctx, const wt_hom* h, const char* element, char** out) {
  return guard(ctx, [&] {
    need(h && element && out, "null argument");
    const auto& m = h->map;
    *out = dup(m.target.format(m.hom.apply(m.source.parse(element))));
  });
}

wt_status wt_hom_json(wt_context* ctx, const wt_hom* h, char** out) {
  return guard(ctx, [&] {
    need(h && out, "null argument");
    *out = dup(map_json(h->map));
  });
}

wt_status wt_verify(wt_context* ctx, const char* claim, int max_order, int labels, int order,
                    char** report_json, int* all_verified) {
  return guard(ctx, [&] {
    need(ctx && claim && report_json, "null argument");
    need(labels >= 1 && max_order >= 0, "labels must be positive and max order nonnegative");
    VerifyParams p;
    p.labels = labels;
    p.max_order = max_order;
    if (order >= 0) {
      p.order = order;
      p.max_order = order;
    }
    // The request itself must fit the caps; instances beyond them inside
    // a claim are reported as skipped.
    ctx->ctx.check_budget(p.max_order, labels);
    std::vector<VerificationReport> reports;
    if (std::strcmp(claim, "all") == 0) reports = verify_all(ctx->ctx, p);
    else reports.push_back(verify(ctx->ctx, claim, p));
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.status != Status::failed;
    *report_json = dup(reports_json(reports));
    if (all_verified) *all_verified = ok ? 1 : 0;
  });
}

wt_status wt_claims(char** out) {
  return guard(nullptr, [&] {
    need(out != nullptr, "null argument");
    *out = dup(nlohmann::json(claim_ids()).dump());
  });
}

wt_status wt_quadratic(wt_context* ctx, const char* kind, const char* form_json, char** out,
                       int* ok) {
  return guard(ctx, [&] {
    need(ctx && kind && form_json && out, "null argument");
    const std::string k = kind;
    if (k != "universal" && k != "commutative" && k != "symmetric")
      throw Error(ErrorCode::UnknownName, "unknown quadratic construction \"" + k + "\"");
    auto form = parse_form_json(form_json);
    nlohmann::ordered_json j;
    bool good = true;
    if (k == "universal") {
      auto f = universal_refinement(form);
      auto ax = check_axioms(f);
      good = ax.ok();
      j = nlohmann::ordered_json::parse(refinement_json(k, f, ax));
      if (form->symmetric()) {
        auto c = compare_models(form);
        good = good && c.isomorphic();
        j["presentation"] = {{"structure", c.structure.to_string()},
                             {"matches_extension", c.isomorphic()}};
      }
    } else {
      CommutativeRefinement cr;
      try {
        cr = k == "symmetric" ? universal_symmetric(form) : universal_commutative(form);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::Schema, e.what());
        throw;
      }
      auto ax = check_axioms(cr.form);
      good = ax.ok();
      j = nlohmann::ordered_json::parse(refinement_json(k, cr.form, ax));
      j["p_injective"] = cr.p_injective;
    }
    *out = dup(j.dump(2));
    if (ok) *ok = good ? 1 : 0;
  });
}

wt_status wt_bridge(wt_context* ctx, int order, int labels, char** out, int* ok) {
  return guard(ctx, [&] {
    need(ctx && out, "null argument");
    need(order >= 0 && order % 2 == 0, "the bridge needs an even order");
    need(labels >= 1, "labels must be positive");
    auto b = bridge_T_infinity(ctx->ctx, order / 2, labels);
    *out = dup(b.json());
    if (ok) *ok = b.ok() ? 1 : 0;
  });
}

wt_status wt_table(wt_context* ctx, int max_order, int labels, char** out) {
  return guard(ctx, [&] {
    need(ctx && out, "null argument");
    need(max_order >= 0 && labels >= 1, "bad table range");
    ctx->ctx.check_budget(0, labels);  // orders over the cap are left out
    *out = dup(structure_table(ctx->ctx, max_order, labels));
  });
}

void wt_string_free(char* s) { std::free(s); }

}  // extern "C"
