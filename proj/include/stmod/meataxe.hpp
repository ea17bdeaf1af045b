#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stmod/matrix.hpp"
#include "stmod/module.hpp"

namespace stmod {

class Rng;

/// A module for the algebra generated by a set of square matrices; used for
/// kG-modules and for modules over endomorphism rings alike.
struct MatrixRep {
  Field field;
  std::size_t dim = 0;
  std::vector<Matrix> gens;
};

MatrixRep as_rep(const Module& m);
/// Smallest subspace containing the rows of `vectors` stable under every
/// generator, in reduced echelon form.
Matrix spin_rep(const MatrixRep& r, const Matrix& vectors);
/// Action on U/W (W <= U both invariant, row bases).
MatrixRep subquotient_rep(const MatrixRep& r, const Matrix& u, const Matrix& w);

inline constexpr std::size_t kMeatAxeBudget = 200;

/// A proper nonzero invariant subspace (RREF rows), or nullopt when the
/// representation is irreducible. Irreducibility is proved by Norton's
/// criterion, never assumed; throws Undecided when the budget runs out.
std::optional<Matrix> find_submodule(const MatrixRep& r, Rng& rng, std::size_t budget = kMeatAxeBudget);

struct IrreducibilityResult {
  bool irreducible;
  std::optional<Matrix> witness;  // proper submodule when reducible
};
IrreducibilityResult is_irreducible(const Module& m, std::uint64_t seed = 1);

/// Composition factors of a representation as representations (unordered).
std::vector<MatrixRep> composition_factor_reps(const MatrixRep& r, Rng& rng);
/// Composition factors of a kG-module as modules.
std::vector<Module> composition_factor_modules(const Module& m, Rng& rng);

/// End_kG(M) with structure constants: basis[i] * basis[j] = sum_k mult[i][j][k] basis[k].
struct EndomorphismAlgebra {
  std::vector<Matrix> basis;
  std::vector<std::vector<Vector>> mult;
};
EndomorphismAlgebra endomorphism_algebra(const Module& m);

/// Whether the algebra spanned by `basis` (closed under products, containing
/// the identity) is local, decided through its Jacobson radical.
bool is_local_algebra(const Field& f, std::size_t dim, const std::vector<Matrix>& basis, Rng& rng);

struct Summand {
  Module module;
  Matrix embed;  // dim M x dim summand, equivariant
  std::size_t iso_class = 0;
  bool certified = false;
};

struct Decomposition {
  std::vector<Summand> summands;
  /// For each isomorphism class: index of a representative summand and the multiplicity.
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  /// The summands' embeddings side by side: an isomorphism from the direct sum onto M.
  Matrix witness;
  std::uint64_t seed = 1;
};

/// Krull-Schmidt decomposition by Fitting splits of random endomorphisms;
/// every summand is certified indecomposable by locality of its
/// endomorphism ring. Throws Undecided after `budget` failed splitting
/// attempts on a summand whose ring is not local.
Decomposition decompose(const Module& m, std::uint64_t seed = 1, std::size_t budget = kMeatAxeBudget);

struct IsoResult {
  bool isomorphic;
  std::optional<Matrix> witness;  // invertible intertwiner from the first to the second
};

/// For indecomposable A: A is isomorphic to B iff dims agree and g f is
/// invertible for some basis pair f: A -> B, g: B -> A.
IsoResult is_isomorphic_indecomposable(const Module& a, const Module& b);
IsoResult is_isomorphic(const Module& a, const Module& b, std::uint64_t seed = 1);

}  // namespace stmod
