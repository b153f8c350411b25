#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wtower/errors.hpp"
#include "wtower/matrix.hpp"

namespace wtower {

struct Structure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors d1 | d2 | ..., each >= 2

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const Structure&) const = default;
  // "0", "Z4", "Z^3 ⊕ Z2^2", ...
  std::string to_string() const;
};

class FpAbelianGroup;
using Group = std::shared_ptr<const FpAbelianGroup>;

// Abelian group given by generators and relator columns. The normal form
// (Smith coordinates) is computed once at construction.
class FpAbelianGroup {
 public:
  FpAbelianGroup(std::vector<std::string> generators,
                 std::vector<SparseVec> relations);
  static Group make(std::vector<std::string> generators,
                    std::vector<SparseVec> relations);
  // Free abelian group on the given keys.
  static Group free(std::vector<std::string> generators);

  std::size_t num_generators() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::string& generator(std::size_t i) const { return generators_[i]; }
  std::optional<std::size_t> find(const std::string& key) const;
  std::size_t index_of(const std::string& key) const;  // throws if absent
  const std::vector<SparseVec>& relations() const { return relations_; }
  IntMatrix relation_matrix() const;

  const Structure& structure() const { return structure_; }
  bool is_trivial() const { return structure_.trivial(); }

  // Smith coordinates: one per invariant factor (reduced into [0, d)),
  // followed by one per free summand.
  std::size_t num_coords() const { return moduli_.size(); }
  const std::vector<Integer>& moduli() const { return moduli_; }
  std::vector<Integer> coords(const SparseVec& x) const;
  // Element in generator coordinates representing the k-th Smith generator.
  const SparseVec& coord_lift(std::size_t k) const { return lifts_[k]; }
  SparseVec from_coords(const std::vector<Integer>& c) const;
  // Relation lattice in Smith coordinates: d_k e_k for torsion coordinates.
  std::vector<std::vector<Integer>> coord_relations() const;

  bool is_zero(const SparseVec& x) const;
  bool equal(const SparseVec& x, const SparseVec& y) const {
    return is_zero(x - y);
  }
  // Order of an element (0 for infinite order).
  Integer order_of(const SparseVec& x) const;

  // Same generator list and relations.
  bool same_presentation(const FpAbelianGroup& other) const;

 private:
  struct Step {
    std::size_t gen;
    SparseVec expr;
  };

  std::vector<std::string> generators_;
  std::vector<SparseVec> relations_;
  std::unordered_map<std::string, std::size_t> index_;

  std::vector<Step> steps_;
  std::vector<std::size_t> survivors_;
  std::vector<SparseVec> rows_;   // per coordinate, over survivor positions
  std::vector<Integer> moduli_;   // per coordinate; 0 marks a free summand
  std::vector<SparseVec> lifts_;  // per coordinate, over generators
  Structure structure_;

  void normalize();
};

bool same_group(const Group& a, const Group& b);

class AbelianHom {
 public:
  AbelianHom() = default;
  // images[i] is the image of source generator i in target generator
  // coordinates. Throws WellDefinedness if a relator does not map to zero.
  AbelianHom(Group source, Group target, std::vector<SparseVec> images);

  static AbelianHom identity(const Group& g);
  static AbelianHom zero(const Group& source, const Group& target);

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }
  const std::vector<SparseVec>& images() const { return images_; }
  const SparseVec& image(std::size_t i) const { return images_[i]; }

  SparseVec apply(const SparseVec& x) const;
  // Dense matrix: target generators x source generators.
  IntMatrix matrix() const;
  // Matrix of the map in Smith coordinates (target coords x source coords).
  IntMatrix smith_matrix() const;

  bool is_zero() const;
  bool equals(const AbelianHom& other) const;

 private:
  Group source_, target_;
  std::vector<SparseVec> images_;
};

AbelianHom compose(const AbelianHom& g, const AbelianHom& f);  // g after f
AbelianHom negate(const AbelianHom& f);
AbelianHom add(const AbelianHom& f, const AbelianHom& g);

// Finds one preimage of elements under a fixed homomorphism.
class PreimageSolver {
 public:
  explicit PreimageSolver(const AbelianHom& h);
  std::optional<SparseVec> solve(const SparseVec& y) const;

 private:
  AbelianHom h_;
  std::size_t source_coords_;
  Lattice lattice_;
};

struct HomAnalysis {
  Group kernel;
  AbelianHom kernel_inclusion;
  Group image;
  AbelianHom image_inclusion;
  Group cokernel;
  AbelianHom cokernel_projection;
  bool injective = false;
  bool surjective = false;
  bool isomorphism = false;
};

HomAnalysis hom_analysis(const AbelianHom& h);
// Kernel with its inclusion, without computing image and cokernel.
std::pair<Group, AbelianHom> kernel_of(const AbelianHom& h);
bool is_injective(const AbelianHom& h);
bool is_surjective(const AbelianHom& h);
inline bool is_isomorphism(const AbelianHom& h) {
  return is_injective(h) && is_surjective(h);
}

// True iff image(f) = kernel(g).
bool exact_at(const AbelianHom& f, const AbelianHom& g);
// True iff y lies in the subgroup generated by gens.
bool in_subgroup(const Group& g, const std::vector<SparseVec>& gens,
                 const SparseVec& y);

Group tensor_Z2(const Group& g);

struct Quotient {
  Group group;
  AbelianHom projection;
};
// Same generators, relations extended by `extra`.
Quotient quotient(const Group& g, const std::vector<SparseVec>& extra);

struct DirectSum {
  Group group;
  AbelianHom inj_a, inj_b, proj_a, proj_b;
};
DirectSum direct_sum(const Group& a, const Group& b);

struct Pullback {
  Group group;
  AbelianHom to_a, to_b;
  AbelianHom inclusion;  // into the direct sum
  DirectSum sum;
  AbelianHom f, g;
};
Pullback pullback(const AbelianHom& f, const AbelianHom& g);
// The map X -> P induced by x: X -> A and y: X -> B with f x = g y.
AbelianHom pullback_lift(const Pullback& pb, const AbelianHom& x,
                         const AbelianHom& y);

// x with k x = y in a torsion-free group.
SparseVec solve_division(const Group& g, const SparseVec& y, const Integer& k);

// Factor f through an injective inclusion into its target.
AbelianHom restrict_codomain(const AbelianHom& f, const AbelianHom& inclusion);

}  // namespace wtower
