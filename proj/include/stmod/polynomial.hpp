#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stmod/field.hpp"
#include "stmod/matrix.hpp"

namespace stmod {

/// Univariate polynomial over GF(q), coefficients stored constant term first.
class Polynomial {
 public:
  explicit Polynomial(Field f) : field_(std::move(f)) {}
  Polynomial(Field f, Vector coeffs);

  static Polynomial constant(const Field& f, Elem c);
  static Polynomial x(const Field& f);
  static Polynomial monomial(const Field& f, Elem c, std::size_t degree);
  static Polynomial from_ints(const Field& f, const std::vector<long long>& coeffs);

  const Field& field() const { return field_; }
  const Vector& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }

  Polynomial monic() const;
  Polynomial derivative() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(Elem c) const;
  /// Quotient and remainder; throws on division by zero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

  Elem eval(Elem x) const;
  Matrix eval(const Matrix& a) const;

 private:
  void trim();
  Field field_;
  Vector c_;
};

/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct ExtendedGcd {
  Polynomial g, s, t;  // g = s*a + t*b, g monic
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

/// base^e mod m.
Polynomial powmod(const Polynomial& base, std::uint64_t e, const Polynomial& m);

/// Ben-Or test: gcd(f, x^{q^i} - x) = 1 for 1 <= i <= deg f / 2.
bool is_irreducible(const Polynomial& f);

struct PolyFactor {
  Polynomial factor;  // monic irreducible
  unsigned multiplicity;
};

/// Complete factorization: squarefree decomposition followed by Berlekamp
/// splitting. Factors are monic, sorted by degree then coefficients; the
/// leading coefficient of f is dropped. Throws on the zero polynomial.
std::vector<PolyFactor> poly_factor(const Polynomial& f);

/// Characteristic polynomial via relative cyclic (Krylov) subspaces.
Polynomial charpoly(const Matrix& a);

}  // namespace stmod
