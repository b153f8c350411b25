#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wtower/abelian.hpp"
#include "wtower/context.hpp"
#include "wtower/lie.hpp"
#include "wtower/treegroups.hpp"

namespace wtower {

// A named group together with the coordinates its elements are written in:
// tree groups take <i,R> and inf:R, Lie groups rooted trees R, tensor
// groups i|R. Kernel groups (D, Dq, Dtilde) are read and printed through
// their embedding into L1 (x) L.
struct Space {
  std::string name;
  int order = 0;
  int labels = 1;
  Group group;
  TreePtr trees;
  LiePtr lie;
  TensorPtr tensor;
  std::optional<AbelianHom> embedding;  // generators shared with `group`
  // Dinf: printed as (D part ; Z2 (x) L' part).
  DInfPtr dinf;
  std::shared_ptr<const Space> left, right;

  SparseVec parse(const std::string& text) const;
  std::string format(const SparseVec& x) const;
};

// Names: L, Lq, D, Dq, Dtilde, Dinf, T, Ttilde, Tinf, Z2L, Z2Lq.
// Throws UnknownName, Budget, or InvalidArgument for an order the group
// is not defined at.
Space named_group(Context& ctx, const std::string& name, int order, int labels);
const std::vector<std::string>& group_names();

struct NamedMap {
  std::string name;
  AbelianHom hom;
  Space source, target;
};
// Names: etaP (T_n -> D'_n), eta (T^inf_n -> D_n), etaTilde (T~_n -> D~_n),
// etaInf (T^inf_n -> D^inf_n), delta (Z2 (x) T_{n-1} -> T_{2n-1}),
// sq (Z2 (x) L_n -> L'_{2n}), sl (D_n -> Z2 (x) L_{n/2+1}),
// p (L'_n -> L_n), bracket (L1 (x) L_{n+1} -> L_{n+2}).
NamedMap named_map(Context& ctx, const std::string& name, int order, int labels);
const std::vector<std::string>& map_names();

// {"group", "order", "labels", "free_rank", "torsion"[, "generators"]}
std::string group_json(const Space& s, bool with_generators);
// Matrix and kernel/image/cokernel summary.
std::string map_json(const NamedMap& m);

// CSV rows name,n,m,free_rank,torsion for every group at orders
// 0..max_order and labels 1..labels where defined and within budget.
std::string structure_table(Context& ctx, int max_order, int labels);

}  // namespace wtower
