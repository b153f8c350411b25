#pragma once

#include "wtower/abelian.hpp"
#include "wtower/context.hpp"
#include "wtower/lie.hpp"
#include "wtower/treegroups.hpp"

namespace wtower {

// t -> sum_v X_l(v) (x) B_v(t), into L1 (x) L'_{n+1}.
AbelianHom eta_prime_raw(Context& ctx, int n, int m);
// The same with codomain D'_n; throws ImageEscapesKernel otherwise.
AbelianHom eta_prime(Context& ctx, int n, int m);

// T^inf_n -> L1 (x) L_{n+1}; J^inf -> half of the image of <J,J>.
AbelianHom eta_raw(Context& ctx, int n, int m);
// T^inf_n -> D_n.
AbelianHom eta(Context& ctx, int n, int m);

// D~_n for odd n: D'_n modulo eta'(image of the framing map).
struct DTilde {
  Group group;
  AbelianHom quotient;  // D'_n -> D~_n
};
using DTildePtr = std::shared_ptr<const DTilde>;
DTildePtr d_tilde(Context& ctx, int n, int m);
// T~_n -> D~_n for odd n.
AbelianHom eta_tilde(Context& ctx, int n, int m);

// T^inf_n -> D^inf_n for n = 4k-2, the lift of (eta, cokernel map).
AbelianHom eta_infinity(Context& ctx, int n, int m);

// D'_n -> D_n induced by L1 (x) L'_{n+1} -> L1 (x) L_{n+1}.
AbelianHom d_prime_to_d(Context& ctx, int n, int m);
// D~_n -> D_n for odd n, induced by d_prime_to_d.
AbelianHom d_tilde_to_d(Context& ctx, int n, int m);

}  // namespace wtower
