#pragma once

// Random small hermitian forms by rejection sampling. At most 3 generators
// for A and M, all relation and table entries in [-2, 2]; involutions drawn
// from identity, minus identity and signed swaps.

#include <random>
#include <stdexcept>

#include "wtower/quadratic.hpp"

namespace wtower::testing {

inline FormPtr random_form(std::mt19937_64& rng, bool symmetric) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto entries = [&](std::size_t n) {
    std::vector<Integer> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(pick(-2, 2));
    return SparseVec::from_dense(v);
  };
  auto presentation = [&](const std::string& prefix) {
    std::size_t n = pick(1, 3);
    std::vector<std::string> gens;
    for (std::size_t i = 1; i <= n; ++i) gens.push_back(prefix + std::to_string(i));
    std::vector<SparseVec> rels;
    for (std::size_t i = 0; i < n; ++i)
      if (pick(0, 2) == 0) rels.push_back(SparseVec::unit(i, 2));
    if (pick(0, 3) == 0) rels.push_back(entries(n));
    return FpAbelianGroup::make(gens, rels);
  };

  for (int attempt = 0; attempt < 100000; ++attempt) {
    HermitianForm f;
    f.A = presentation("a");
    f.M = presentation("x");
    const auto nm = f.M->num_generators();
    const auto na = f.A->num_generators();

    std::vector<SparseVec> inv;
    int kind = symmetric ? 0 : pick(0, 2);
    for (std::size_t i = 0; i < nm; ++i)
      inv.push_back(SparseVec::unit(i, kind == 1 ? -1 : 1));
    if (kind == 2) {
      if (nm < 2) continue;
      std::size_t i = pick(0, static_cast<int>(nm) - 1), j = pick(0, static_cast<int>(nm) - 1);
      if (i == j) continue;
      int s = pick(0, 1) ? 1 : -1;
      inv[i] = SparseVec::unit(j, s);
      inv[j] = SparseVec::unit(i, s);
    }
    try {
      f.involution = AbelianHom(f.M, f.M, inv);
    } catch (const Error&) {
      continue;
    }

    f.table.assign(na, std::vector<SparseVec>(na));
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = i; j < na; ++j) {
        f.table[i][j] = entries(nm);
        f.table[j][i] = f.involution.apply(f.table[i][j]);
      }
    try {
      auto form = make_form(std::move(f));
      if (symmetric && !form->symmetric()) continue;
      return form;
    } catch (const Error&) {
    }
  }
  throw std::runtime_error("random_form: no admissible form found");
}

}  // namespace wtower::testing
