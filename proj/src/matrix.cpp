#include "stmod/matrix.hpp"

#include <algorithm>

#include "stmod/error.hpp"

namespace stmod {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(data_.size() == rows * cols, "matrix entry count does not match shape");
  for (auto e : data_) require(e < field_.q(), "matrix entry outside the field");
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_ints(const Field& f, std::size_t rows, std::size_t cols,
                         const std::vector<long long>& entries) {
  require(entries.size() == rows * cols, "matrix entry count does not match shape");
  Matrix m(f, rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) m.data_[k] = f.from_int(entries[k]);
  return m;
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::operator*(const Matrix& b) const {
  require(cols_ == b.rows_, "matrix product shape mismatch");
  Matrix c(field_, rows_, b.cols_);
  if (rows_ == 0 || b.cols_ == 0 || cols_ == 0) return c;
  const Field& f = field_;
  if (f.m() == 1 && f.q() > 2) {
    // prime field: accumulate in 64 bits, reduce once per entry
    const std::uint64_t p = f.p();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::uint64_t a = data_[i * cols_ + k];
        if (a == 0) continue;
        const Elem* br = b.data_.data() + k * b.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += a * br[j];
      }
      Elem* cr = c.data_.data() + i * c.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) cr[j] = static_cast<Elem>(acc[j] % p);
    }
    return c;
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    auto cr = c.row(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = data_[i * cols_ + k];
      if (a != 0) f.axpy(cr, a, b.row(k));
    }
  }
  return c;
}

Matrix Matrix::operator+(const Matrix& b) const {
  require(rows_ == b.rows_ && cols_ == b.cols_, "matrix sum shape mismatch");
  Matrix c = *this;
  field_.axpy(c.data_, 1, b.data_);
  return c;
}

Matrix Matrix::operator-(const Matrix& b) const {
  require(rows_ == b.rows_ && cols_ == b.cols_, "matrix difference shape mismatch");
  Matrix c = *this;
  field_.axpy(c.data_, field_.neg(1), b.data_);
  return c;
}

void Matrix::add_scaled(const Matrix& other, Elem c) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix shape mismatch");
  field_.axpy(data_, c, other.data_);
}

Matrix Matrix::scaled(Elem c) const {
  Matrix r = *this;
  field_.scale(r.data_, c);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  }
  return t;
}

Vector Matrix::apply(std::span<const Elem> v) const {
  require(v.size() == cols_, "matrix-vector shape mismatch");
  Vector out(rows_, 0);
  if (field_.m() == 1) {
    const std::uint64_t p = field_.p();
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      const Elem* r = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>(r[j]) * v[j];
      out[i] = static_cast<Elem>(acc % p);
    }
    return out;
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem s = 0;
    const Elem* r = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (r[j] != 0 && v[j] != 0) s = field_.add(s, field_.mul(r[j], v[j]));
    }
    out[i] = s;
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (data_[i * cols_ + j] != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ && (empty() || field_ == o.field_);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    std::copy_n(data_.begin() + (r0 + i) * cols_ + c0, nc, b.data_.begin() + i * nc);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i) {
    std::copy_n(b.data_.begin() + i * b.cols_, b.cols_, data_.begin() + (r0 + i) * cols_ + c0);
  }
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix r(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    std::copy(row(idx[i]).begin(), row(idx[i]).end(), r.row(i).begin());
  }
  return r;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix r(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.cols_, "vstack column mismatch");
  if (a.rows_ == 0) return b;
  if (b.rows_ == 0) return a;
  Matrix r(a.field_, a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), r.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), r.data_.begin() + a.data_.size());
  return r;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  require(a.rows_ == b.rows_, "hstack row mismatch");
  Matrix r(a.field_, a.rows_, a.cols_ + b.cols_);
  r.set_block(0, 0, a);
  r.set_block(0, a.cols_, b);
  return r;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  const Field& f = a.field_;
  Matrix r(f, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Elem x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows_; ++k) {
        for (std::size_t l = 0; l < b.cols_; ++l) {
          r(i * b.rows_ + k, j * b.cols_ + l) = f.mul(x, b(k, l));
        }
      }
    }
  }
  return r;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows_ ? a.field_ : b.field_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  r.set_block(0, 0, a);
  r.set_block(a.rows_, a.cols_, b);
  return r;
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, 0, {}};
  Matrix& a = res.reduced;
  const Field& f = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r) {
      auto pr = a.row(piv), rr = a.row(r);
      std::swap_ranges(pr.begin(), pr.end(), rr.begin());
    }
    f.scale(a.row(r), f.inv(a(r, c)));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i != r && a(i, c) != 0) f.axpy(a.row(i), f.neg(a(i, c)), a.row(r));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const Matrix& m) {
  EchelonBasis e(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows() && !e.full(); ++i) e.insert(m.row(i));
  return e.rank();
}

Matrix kernel_basis(const Matrix& m) {
  const auto res = rref(m);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < res.rank; ++i) v[res.pivots[i]] = f.neg(res.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return Matrix::from_rows(f, m.cols(), basis);
}

Matrix row_space(const Matrix& m) {
  auto res = rref(m);
  return res.reduced.block(0, 0, res.rank, m.cols());
}

Matrix column_space(const Matrix& m) { return row_space(m.transpose()); }

Matrix subspace_sum(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "ambient dimension mismatch");
  return row_space(Matrix::vstack(a, b));
}

Matrix subspace_intersect(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "ambient dimension mismatch");
  const std::size_t n = a.cols();
  const Field& f = a.field();
  Matrix z(f, a.rows() + b.rows(), 2 * n);
  z.set_block(0, 0, a);
  z.set_block(0, n, a);
  z.set_block(a.rows(), 0, b);
  const auto res = rref(z);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < res.rank; ++i) {
    if (res.pivots[i] >= n) {
      auto r = res.reduced.row(i);
      out.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
    }
  }
  return Matrix::from_rows(f, n, out);
}

std::optional<Matrix> inverse(const Matrix& m) {
  require(m.rows() == m.cols(), "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto res = rref(Matrix::hstack(m, Matrix::identity(m.field(), n)));
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) return std::nullopt;
  return res.reduced.block(0, n, n, n);
}

Matrix power(const Matrix& m, std::uint64_t e) {
  require(m.rows() == m.cols(), "power of a non-square matrix");
  Matrix result = Matrix::identity(m.field(), m.rows());
  Matrix base = m;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<Vector> solve_left(const Matrix& a, std::span<const Elem> b) {
  require(b.size() == a.cols(), "solve_left shape mismatch");
  const Field& f = a.field();
  // track combinations of the rows of a
  const std::size_t r = a.rows(), n = a.cols();
  Matrix aug(f, r, n + r);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix::identity(f, r));
  auto res = rref(aug);
  Vector v(b.begin(), b.end());
  Vector x(r, 0);
  for (std::size_t i = 0; i < res.rank; ++i) {
    const std::size_t c = res.pivots[i];
    if (c >= n) break;
    const Elem coef = v[c];
    if (coef == 0) continue;
    auto row = res.reduced.row(i);
    f.axpy(v, f.neg(coef), row.subspan(0, n));
    f.axpy(x, coef, row.subspan(n, r));
  }
  if (std::any_of(v.begin(), v.end(), [](Elem e) { return e != 0; })) return std::nullopt;
  return x;
}

EchelonBasis::EchelonBasis(Field f, std::size_t dim) : field_(std::move(f)), dim_(dim) {}

void EchelonBasis::reduce(std::span<Elem> v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem c = v[pivots_[i]];
    if (c != 0) field_.axpy(v, field_.neg(c), rows_[i]);
  }
}

bool EchelonBasis::contains(std::span<const Elem> v) const {
  Vector w(v.begin(), v.end());
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
}

bool EchelonBasis::insert(std::span<const Elem> v) {
  require(v.size() == dim_, "vector length does not match echelon dimension");
  if (full()) return false;
  Vector w(v.begin(), v.end());
  reduce(w);
  std::size_t piv = 0;
  while (piv < dim_ && w[piv] == 0) ++piv;
  if (piv == dim_) return false;
  field_.scale(w, field_.inv(w[piv]));
  for (auto& r : rows_) {
    if (r[piv] != 0) field_.axpy(r, field_.neg(r[piv]), w);
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  return true;
}

std::optional<Vector> EchelonBasis::coordinates(std::span<const Elem> v) const {
  Vector w(v.begin(), v.end());
  Vector coords(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) coords[i] = w[pivots_[i]];
  reduce(w);
  if (std::any_of(w.begin(), w.end(), [](Elem e) { return e != 0; })) return std::nullopt;
  return coords;
}

Matrix EchelonBasis::matrix() const { return Matrix::from_rows(field_, dim_, rows_); }

Matrix EchelonBasis::rref_matrix() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  Matrix m(field_, rows_.size(), dim_);
  for (std::size_t i = 0; i < order.size(); ++i) std::copy(rows_[order[i]].begin(), rows_[order[i]].end(), m.row(i).begin());
  return m;
}

}  // namespace stmod
