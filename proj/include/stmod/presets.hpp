#pragma once

#include <string>

#include "stmod/group.hpp"

namespace stmod {

/// C_n acting on n points.
GroupPtr cyclic_group(std::size_t n);
/// Dihedral group of order n (n even, n >= 4).
GroupPtr dihedral_group(std::size_t n);
/// Generalized quaternion group of order n = 2^k >= 8, regular representation.
GroupPtr quaternion_group(std::size_t n);
/// S_n for 1 <= n <= 5, generated by (1 2) and (1 2 ... n).
GroupPtr symmetric_group(std::size_t n);
/// A_n for 3 <= n <= 5.
GroupPtr alternating_group(std::size_t n);
/// SL(2,3) acting on the eight nonzero vectors of GF(3)^2.
GroupPtr sl23_group();
/// Direct product acting on the disjoint union of the two domains.
GroupPtr direct_product(const Group& a, const Group& b);

/// Grammar:
///   spec   := preset | "perm:" cycles (";" cycles)*
///   preset := name "(" args ")"   with name in cyclic, dihedral, quaternion,
///             symmetric, alternating, sl23, product(spec, spec)
/// Points in cycle notation are 1-based.
GroupPtr parse_group_spec(const std::string& text);

}  // namespace stmod
