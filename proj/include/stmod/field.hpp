#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace stmod {

/// A field element, packed as the base-p integer whose digits are the
/// polynomial coefficients (constant term is the least significant digit).
/// In a prime field this is simply the residue.
using Elem = std::uint32_t;
using Vector = std::vector<Elem>;

/// Largest supported field order.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  /// Monic irreducible of degree m over GF(p), constant term first.
  std::vector<std::uint32_t> modulus;

  std::uint32_t order() const;
  bool operator==(const FieldSpec&) const = default;
};

namespace detail {
struct FieldTables;
}

/// GF(p^m) with table-driven arithmetic. Cheap to copy (shared tables).
class Field {
 public:
  Field();  // GF(2)

  /// Deterministic construction: modulus is the lexicographically smallest
  /// monic irreducible of degree m (constant term compared first).
  static Field create(std::uint32_t p, std::uint32_t m = 1);
  /// Rebuilds a field from a serialized spec; the modulus is re-verified.
  static Field from_spec(const FieldSpec& spec);

  const FieldSpec& spec() const;
  std::uint32_t p() const;
  std::uint32_t m() const;
  std::uint32_t q() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Throws on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const;
  /// Coefficient vector of length m.
  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;
  Elem frobenius(Elem a) const { return pow(a, p()); }
  /// Generator of the multiplicative group.
  Elem primitive() const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t order_of(Elem a) const;

  /// dst += c * src, elementwise.
  void axpy(std::span<Elem> dst, Elem c, std::span<const Elem> src) const;
  /// dst *= c.
  void scale(std::span<Elem> dst, Elem c) const;

  std::string name() const;
  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  explicit Field(std::shared_ptr<const detail::FieldTables> t);
  std::shared_ptr<const detail::FieldTables> t_;
};

/// Multiplicative order of p modulo the p'-part of n. GF(p^d) for this d
/// contains a primitive root of unity of order n' (n with all p-factors removed).
std::uint32_t splitting_degree(std::uint32_t p, std::uint64_t n);

bool is_prime(std::uint64_t n);

/// The canonical embedding GF(p^m) -> GF(p^m'), m | m': the class of x is sent
/// to the smallest (by packed value) root of the small field's modulus.
class FieldEmbedding {
 public:
  FieldEmbedding(const Field& from, const Field& to);
  const Field& source() const { return from_; }
  const Field& target() const { return to_; }
  Elem operator()(Elem a) const { return image_[a]; }

 private:
  Field from_;
  Field to_;
  std::vector<Elem> image_;
};

}  // namespace stmod
