#pragma once

#include <vector>

#include "stmod/algebra.hpp"

namespace stmod {

/// Z(kG) in the basis of conjugacy class sums, with structure constants.
struct CenterAlgebra {
  Field field;
  ConjClasses classes;
  /// mult[i][j][k]: coefficient of class sum k in C_i C_j.
  std::vector<std::vector<Vector>> mult;
  std::size_t identity_class = 0;

  std::size_t dim() const { return classes.classes.size(); }
  Vector one() const;
  Vector mul(const Vector& x, const Vector& y) const;
  /// Coefficients by group element.
  Vector to_group_algebra(const Vector& x) const;
};

CenterAlgebra center_algebra(const Group& g, const Field& f);
/// Rows: the class sums as elements of kG.
Matrix center_basis(const Group& g, const Field& f);

/// Product in kG of coefficient vectors indexed by group elements.
Vector group_algebra_mul(const Group& g, const Field& f, const Vector& a, const Vector& b);

struct BlockIdempotent {
  Vector coeffs;  // indexed by group element
  Elem augmentation = 0;
  std::vector<std::size_t> simples;  // catalog indices with e S != 0
};

struct BlockSet {
  std::vector<BlockIdempotent> blocks;
  std::size_t principal = 0;
};

/// Primitive idempotents of Z(kG) over the working field. Each candidate
/// part eZ is split by the primary decomposition of minimal polynomials of
/// basis elements; a part is accepted as local only when its subalgebra of
/// Frobenius-fixed elements {x : x^q = x} is one-dimensional.
BlockSet central_primitive_idempotents(const GroupAlgebra& a);

const BlockIdempotent& principal_block(const BlockSet& b);
std::size_t simples_in_block(const BlockIdempotent& e);

/// Whether e acts as the identity on M; cross-checked against the block
/// membership of the composition factors of M.
bool lies_in_block(const GroupAlgebra& a, const Module& m, const BlockIdempotent& e);
/// The summand e M.
SubQuotient block_component(const GroupAlgebra& a, const Module& m, const BlockIdempotent& e);

}  // namespace stmod
