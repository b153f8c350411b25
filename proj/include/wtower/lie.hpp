#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wtower/abelian.hpp"
#include "wtower/context.hpp"
#include "wtower/trees.hpp"

namespace wtower {

enum class Variant { lie, quasi };

// Degree-n part of the free (quasi-)Lie algebra on X1..Xm. Generators are
// the canonical rooted trees of order n-1; the group key is the encoding.
struct LieGrade {
  int n = 1;
  int m = 1;
  Variant variant = Variant::lie;
  std::vector<RootedTree> trees;
  Group group;

  // Signed generator vector for any rooted tree of order n-1.
  SparseVec element(const RootedTree& t) const;
};
using LiePtr = std::shared_ptr<const LieGrade>;

LiePtr lie_group(Context& ctx, int n, int m, Variant v);

// L1 (x) G: generators "i|key" for i = 1..m, relations of G per label.
Group tensor_L1(int m, const Group& g);
inline std::size_t tensor_index(const Group& g, int label, std::size_t gen) {
  return static_cast<std::size_t>(label - 1) * g->num_generators() + gen;
}

// L1 (x) L_{n+1} together with its factor.
struct TensorGrade {
  LiePtr factor;
  Group group;
  SparseVec element(int label, const RootedTree& t) const;
};
using TensorPtr = std::shared_ptr<const TensorGrade>;

TensorPtr tensor_grade(Context& ctx, int n, int m, Variant v);

// Xi (x) J -> [Xi, J] from L1 (x) L_{n+1} to L_{n+2}.
AbelianHom bracket_hom(Context& ctx, int n, int m, Variant v);

struct BracketKernel {
  int n = 0;
  int m = 1;
  Variant variant = Variant::lie;
  Group group;
  AbelianHom inclusion;  // into L1 (x) L_{n+1}
  AbelianHom bracket;
  bool bracket_surjective = false;
};
using KernelPtr = std::shared_ptr<const BracketKernel>;

KernelPtr d_group(Context& ctx, int n, int m, Variant v);

// Z2 (x) L_k (or the quasi version).
Group z2_lie(Context& ctx, int k, int m, Variant v);

// L'_n -> L_n, identity on tree generators.
AbelianHom proj_p(Context& ctx, int n, int m);
// Z2 (x) L_k -> L'_{2k}, 1 (x) J -> [J,J].
AbelianHom sq(Context& ctx, int k, int m);

// Snake map D_{2k} -> Z2 (x) L_{k+1}.
struct SnakeMap {
  AbelianHom map;
  bool surjective = false;
};
SnakeMap sl(Context& ctx, int two_k, int m);
// Same construction with an alternative lift: the quasi lift of each
// kernel generator is shifted by `shift(i)` before bracketing. Used to test
// independence of the lift.
AbelianHom sl_with_shift(Context& ctx, int two_k, int m,
                         const std::function<SparseVec(std::size_t)>& shift);

// Z2 (x) L'_k -> Z2 (x) L_k.
AbelianHom proj_p_z2(Context& ctx, int k, int m);

struct DInfinity {
  Pullback pb;            // of sl_{4k-2} against Z2 (x) p
  AbelianHom p;           // D^inf -> D_{4k-2}
  AbelianHom sl_prime;    // D^inf -> Z2 (x) L'_{2k}
  AbelianHom sq_inf;      // Z2 (x) L_k -> D^inf
  Group group() const { return pb.group; }
};
using DInfPtr = std::shared_ptr<const DInfinity>;

DInfPtr d_infinity(Context& ctx, int n, int m);

const char* variant_name(Variant v);

}  // namespace wtower
