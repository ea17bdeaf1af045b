#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "stmod/field.hpp"
#include "stmod/group.hpp"
#include "stmod/matrix.hpp"

namespace stmod {

class Rng;

/// A finite-dimensional kG-module given by one action matrix per group
/// generator. Matrices act on column vectors. Copies share data, including
/// the memo of derived element actions.
class Module {
 public:
  Module() = default;
  /// Validates shapes, invertibility and (unless `check` is false) the
  /// random-pair homomorphism test.
  Module(GroupPtr group, Field field, std::size_t dim, std::vector<Matrix> gens, bool check = true);

  const Group& group() const { return *d_->group; }
  const GroupPtr& group_ptr() const { return d_->group; }
  const Field& field() const { return d_->field; }
  std::size_t dim() const { return d_->dim; }
  const std::vector<Matrix>& gens() const { return d_->gens; }
  const Matrix& gen(std::size_t s) const { return d_->gens[s]; }

  /// Action of a group element, derived from its word and memoized.
  const Matrix& action(std::size_t element) const;
  /// g v without forming the matrix of g.
  Vector act(std::size_t element, std::span<const Elem> v) const;

  /// Random-pair test: (gh) v = g (h v) on `pairs` random pairs.
  bool verify(std::size_t pairs, Rng& rng) const;
  bool same_context(const Module& o) const;

 private:
  struct Data {
    GroupPtr group;
    Field field;
    std::size_t dim = 0;
    std::vector<Matrix> gens;
    mutable std::mutex mutex;
    mutable std::vector<std::unique_ptr<Matrix>> memo;
  };
  std::shared_ptr<Data> d_;
};

/// An equivariant linear map; mat is dim(target) x dim(source).
struct ModuleMap {
  Module source;
  Module target;
  Matrix mat;
};

bool is_equivariant(const Module& source, const Module& target, const Matrix& mat);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap identity_map(const Module& m);
ModuleMap zero_map(const Module& source, const Module& target);

Module regular_module(const GroupPtr& g, const Field& f);
Module trivial_module(const GroupPtr& g, const Field& f);
/// chi[s] is the scalar by which generator s acts; rejected if it is not a
/// homomorphism on 500 random words.
Module one_dim_module(const GroupPtr& g, const Field& f, const std::vector<Elem>& chi);
Module zero_module(const GroupPtr& g, const Field& f);

/// Basis of Hom_kG(M, N) as dim N x dim M matrices, canonically ordered
/// (reduced echelon form of the flattened basis).
std::vector<Matrix> hom_space(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);

Module dual(const Module& m);
/// Transpose: the dual map N* -> M* of f: M -> N.
ModuleMap dual_map(const ModuleMap& f, const Module& dual_source, const Module& dual_target);
Module tensor(const Module& m, const Module& n);
Module direct_sum(const std::vector<Module>& parts);
Module direct_sum(const Module& a, const Module& b);
/// Module with action P^{-1} A P; P becomes an isomorphism new -> old.
Module change_basis(const Module& m, const Matrix& p);

Module restrict(const Module& m, const EmbeddedSubgroup& h);
/// Induction from the subgroup h of the parent group g; the transversal is
/// chosen by increasing element index.
Module induce(const Module& m, const EmbeddedSubgroup& h, const GroupPtr& g);
/// Reinterprets the action over a larger field of the same characteristic.
Module extend_scalars(const Module& m, const Field& big);

/// Smallest submodule containing the rows of `vectors`, as an RREF row basis.
Matrix spin(const Module& m, const Matrix& vectors);
bool is_submodule(const Module& m, const Matrix& rows);

/// U/W for submodules W <= U of M given as row bases.
struct SubQuotient {
  Module module;
  Matrix lift;  // dim M x dim(U/W): columns are representatives in U
  Matrix proj;  // dim(U/W) x dim M: valid on U, kills W
};
SubQuotient sub_quotient(const Module& m, const Matrix& u, const Matrix& w);
SubQuotient submodule(const Module& m, const Matrix& u);
SubQuotient quotient(const Module& m, const Matrix& w);

/// Kernel of an equivariant map as a submodule of its source.
SubQuotient kernel_module(const ModuleMap& f);
/// Image of an equivariant map as a submodule of its target.
SubQuotient image_module(const ModuleMap& f);

}  // namespace stmod
