#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "stmod/meataxe.hpp"
#include "stmod/module.hpp"

namespace stmod {

/// Structural data of kG computed once from the regular module and shared:
/// simple modules, principal indecomposables, the Jacobson radical.
/// Lazily built and thread-safe.
class GroupAlgebra {
 public:
  GroupAlgebra(GroupPtr g, Field f, std::uint64_t seed = 1);

  /// Shared instance per (group, field, seed).
  static std::shared_ptr<GroupAlgebra> get(const GroupPtr& g, const Field& f, std::uint64_t seed = 1);

  const GroupPtr& group_ptr() const { return group_; }
  const Group& group() const { return *group_; }
  const Field& field() const { return field_; }
  std::uint64_t seed() const { return seed_; }

  const Module& regular() const { return regular_; }
  const Module& trivial() const { return trivial_; }

  /// Pairwise non-isomorphic simple modules; index 0 is the trivial module,
  /// the rest ordered by dimension then discovery.
  const std::vector<Module>& simples() const;
  /// pims()[i] is the projective cover of simples()[i].
  const std::vector<Module>& pims() const;
  /// Surjection pims()[i] -> simples()[i].
  const std::vector<Matrix>& pim_tops() const;
  /// Multiplicity of pims()[i] as a summand of kG.
  const std::vector<std::size_t>& pim_multiplicities() const;
  /// dim End(S_i).
  const std::vector<std::size_t>& simple_end_dims() const;
  /// Rows: basis of J(kG) as coefficient vectors indexed by group elements.
  const Matrix& jacobson_radical() const;
  /// A few elements generating J(kG) as a left ideal.
  const std::vector<Vector>& radical_generators() const;

  /// Matrix of the group-algebra element a (coefficients by group element) on M.
  Matrix element_action(const Vector& a, const Module& m) const;
  /// Index of the catalog simple isomorphic to the simple module s.
  std::size_t simple_index(const Module& s) const;
  /// Multiplicity of each catalog simple as a composition factor of M.
  std::vector<std::size_t> composition_factors(const Module& m) const;

  /// Row bases of J M and of {m : J m = 0}.
  Matrix radical(const Module& m) const;
  Matrix socle(const Module& m) const;

  /// Exact projectivity test: M is projective iff its restriction to a
  /// Sylow p-subgroup P is free, iff the norm element of P has rank dim M / |P|.
  bool is_projective(const Module& m) const;
  /// Projectivity by decomposition: every summand isomorphic to a PIM.
  bool is_projective_by_summands(const Module& m) const;

  struct Cover {
    Module module;                   // direct sum of PIMs
    Matrix pi;                       // surjection onto M
    std::vector<std::size_t> parts;  // catalog index of each PIM summand, in order
  };
  Cover projective_cover(const Module& m) const;

  /// Order of a Sylow p-subgroup.
  std::size_t sylow_order() const { return sylow_order_; }

 private:
  void build() const;

  GroupPtr group_;
  Field field_;
  std::uint64_t seed_;
  Module regular_;
  Module trivial_;
  Vector sylow_norm_;
  std::size_t sylow_order_;

  mutable std::once_flag built_;
  mutable std::vector<Module> simples_;
  mutable std::vector<Module> pims_;
  mutable std::vector<Matrix> pim_tops_;
  mutable std::vector<std::size_t> pim_mult_;
  mutable std::vector<std::size_t> end_dims_;
  mutable Matrix jacobson_;
  mutable std::vector<Vector> rad_gens_;
};

using AlgebraPtr = std::shared_ptr<GroupAlgebra>;

}  // namespace stmod
