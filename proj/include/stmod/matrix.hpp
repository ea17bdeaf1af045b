#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stmod/field.hpp"

namespace stmod {

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);
  Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(const Field& f, std::size_t n);
  /// Entries given as integers, reduced into the prime subfield.
  static Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols,
                          const std::vector<long long>& entries);
  static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<Vector>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;
  const std::vector<Elem>& data() const { return data_; }

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix scaled(Elem c) const;
  Matrix transpose() const;
  Vector apply(std::span<const Elem> v) const;  // M v
  /// dst += c * this, in place.
  void add_scaled(const Matrix& other, Elem c);

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  /// Flattened row-major entries as a single vector.
  Vector flatten() const { return data_; }

  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix kron(const Matrix& a, const Matrix& b);
  static Matrix direct_sum(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; pivots are leftmost nonzero columns, taken from
/// the topmost available row.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Rows form a basis of the right null space {v : M v = 0}.
Matrix kernel_basis(const Matrix& m);
/// Nonzero rows of rref(m): a canonical basis of the row space.
Matrix row_space(const Matrix& m);
/// Canonical basis of the column space, as rows.
Matrix column_space(const Matrix& m);
Matrix subspace_sum(const Matrix& a, const Matrix& b);
/// Row-space intersection via the Zassenhaus construction.
Matrix subspace_intersect(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
Matrix power(const Matrix& m, std::uint64_t e);
/// Solve x A = b for row vectors; nullopt if b is not in the row space of A.
std::optional<Vector> solve_left(const Matrix& a, std::span<const Elem> b);

/// Incrementally grown, fully reduced echelon basis of a row space.
class EchelonBasis {
 public:
  EchelonBasis(Field f, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }
  /// Reduces v in place against the basis; v becomes zero iff v was in the span.
  void reduce(std::span<Elem> v) const;
  bool contains(std::span<const Elem> v) const;
  /// Adds v if independent; returns whether the rank grew.
  bool insert(std::span<const Elem> v);
  /// Coordinates of v (in the span) with respect to the stored basis rows.
  std::optional<Vector> coordinates(std::span<const Elem> v) const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Rows in insertion order (matching coordinates()).
  Matrix matrix() const;
  /// Rows sorted by pivot: the reduced row echelon form of the span.
  Matrix rref_matrix() const;

 private:
  Field field_;
  std::size_t dim_;
  std::vector<Vector> rows_;  // pivot entry is 1, other rows vanish there
  std::vector<std::size_t> pivots_;
};

}  // namespace stmod
