#pragma once

#include <memory>
#include <vector>

#include "wtower/abelian.hpp"
#include "wtower/context.hpp"
#include "wtower/lie.hpp"
#include "wtower/trees.hpp"

namespace wtower {

enum class Flavor { plain, tilde, twisted };

// Tree group of order n on m labels. Generators: canonical unrooted trees
// (keys "<i,R>"), followed for twisted even orders by one infinity
// generator per canonical rooted tree of order n/2 (keys "inf:R").
struct TreeGroup {
  Flavor flavor = Flavor::plain;
  int n = 0;
  int m = 1;
  std::vector<UnrootedTree> trees;
  std::vector<RootedTree> inf_trees;
  Group group;

  SparseVec element(const UnrootedTree& t) const;
  // Inner product <a,b> as an element.
  SparseVec inner(const RootedTree& a, const RootedTree& b) const;
  // J^inf; orientation of J is ignored.
  SparseVec inf_element(const RootedTree& j) const;
};
using TreePtr = std::shared_ptr<const TreeGroup>;

TreePtr t_group(Context& ctx, int n, int m);
// Z2 (x) T_{n-1} -> T_{2n-1}, t -> sum_v <i(v),(T_v,T_v)>.
AbelianHom delta(Context& ctx, int n, int m);
// Odd n: quotient by the framing relations; even n: T_n itself.
TreePtr t_tilde(Context& ctx, int n, int m);
AbelianHom tilde_quotient(Context& ctx, int n, int m);  // T_n -> T~_n
TreePtr t_infinity(Context& ctx, int n, int m);
// Odd n: T~_n -> T^inf_n.
AbelianHom infinity_quotient(Context& ctx, int n, int m);
// Even n = 2q: T_n -> T^inf_n and T^inf_n -> Z2 (x) L'_{q+1}.
AbelianHom infinity_inclusion(Context& ctx, int n, int m);
AbelianHom infinity_cokernel(Context& ctx, int n, int m);

// Left map of the odd sequence, Z2 (x) L'_{q+1} -> T~_{2q-1}. Built from
// Xi (x) J -> <i,(J,J)> on Z2 (x) L1 (x) L'_q, which is checked to vanish
// on the kernel of the bracket before being pushed down.
AbelianHom tau_odd_left(Context& ctx, int q, int m);

const char* flavor_name(Flavor f);

}  // namespace wtower
