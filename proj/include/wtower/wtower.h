/* C interface to the wtower library. Handles are opaque; every call that
 * can fail returns a wt_status and leaves a message retrievable through
 * wt_context_error. Strings returned through char** are owned by the caller
 * and released with wt_string_free. */
#ifndef WTOWER_H
#define WTOWER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wt_context wt_context;
typedef struct wt_group wt_group;
typedef struct wt_hom wt_hom;

typedef enum wt_status {
  WT_OK = 0,
  WT_ERR_INVALID_ARGUMENT = 1,
  WT_ERR_BUDGET = 2,
  WT_ERR_UNKNOWN_NAME = 3,
  WT_ERR_PARSE = 4,
  WT_ERR_SCHEMA = 5,
  WT_ERR_MATH = 6,     /* a construction failed a mathematical check */
  WT_ERR_INTERNAL = 7
} wt_status;

typedef struct wt_config {
  int max_order;      /* tree order cap for 1-2 labels */
  int max_order_wide; /* tree order cap for 3 or more labels */
  int max_labels;
  uint64_t seed;
  int jobs; /* 0: hardware concurrency */
} wt_config;

const char* wt_status_name(wt_status s);
void wt_config_default(wt_config* cfg);

wt_status wt_context_new(const wt_config* cfg, wt_context** out);
void wt_context_free(wt_context* ctx);
/* Message of the last failed call on this context; "" if none. */
const char* wt_context_error(const wt_context* ctx);

/* Groups: L, Lq, D, Dq, Dtilde, Dinf, T, Ttilde, Tinf, Z2L, Z2Lq. */
wt_status wt_group_new(wt_context* ctx, const char* name, int order, int labels, wt_group** out);
void wt_group_free(wt_group* g);
wt_status wt_group_structure(const wt_group* g, size_t* free_rank, size_t* num_torsion);
/* {"group","order","labels","free_rank","torsion","structure"[,"generators"]} */
wt_status wt_group_json(wt_context* ctx, const wt_group* g, int with_generators, char** out);
/* Parses an element and prints it back in normal form. */
wt_status wt_group_element(wt_context* ctx, const wt_group* g, const char* element, char** out);

/* Maps: etaP, eta, etaTilde, etaInf, delta, sq, sl, p, bracket. */
wt_status wt_hom_new(wt_context* ctx, const char* name, int order, int labels, wt_hom** out);
void wt_hom_free(wt_hom* h);
/* Image of an element, printed in target coordinates. */
wt_status wt_hom_apply(wt_context* ctx, const wt_hom* h, const char* element, char** out);
/* Matrix, generator images and kernel/image/cokernel structure as JSON. */
wt_status wt_hom_json(wt_context* ctx, const wt_hom* h, char** out);

/* Runs one claim or "all". order < 0 runs every instance up to max_order.
 * *all_verified is 1 iff no claim failed. */
wt_status wt_verify(wt_context* ctx, const char* claim, int max_order, int labels, int order,
                    char** report_json, int* all_verified);
/* JSON array of claim ids. */
wt_status wt_claims(char** out);

/* kind: universal, commutative or symmetric; form as JSON. *ok is 1 iff
 * every axiom check passed. */
wt_status wt_quadratic(wt_context* ctx, const char* kind, const char* form_json, char** out,
                       int* ok);
/* (T_order)^c_e -> T^inf_order for even order. */
wt_status wt_bridge(wt_context* ctx, int order, int labels, char** out, int* ok);

/* CSV name,n,m,free_rank,torsion over all groups. */
wt_status wt_table(wt_context* ctx, int max_order, int labels, char** out);

void wt_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* WTOWER_H */
