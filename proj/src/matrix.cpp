#include "procell/matrix.hpp"

#include "procell/error.hpp"

#include <string>

namespace procell {

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::from_rows(const Field& field, const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == field)) throw FieldMismatch("matrix entry from a different field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Vector Matrix::row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Scalar Matrix::trace() const {
  if (rows_ != cols_) throw DimensionMismatch("trace of a non-square matrix");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw DimensionMismatch("matrix product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " by " +
                            std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  if (!(a.field_ == b.field_)) throw FieldMismatch("matrix product across fields");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector product shape mismatch");
  Vector out(a.rows_, Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RowEchelon row_reduce(const Matrix& m) {
  RowEchelon out{m, {}};
  Matrix& a = out.reduced;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < a.rows() && a(r, c).is_zero()) ++r;
    if (r == a.rows()) continue;
    if (r != pivot_row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pivot_row, j));
    const Scalar inv = a(pivot_row, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(pivot_row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pivot_row || a(i, c).is_zero()) continue;
      const Scalar factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(pivot_row, j);
    }
    out.pivot_columns.push_back(c);
    ++pivot_row;
  }
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_columns.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Scalar::zero(m.field()));
    v[free] = Scalar::one(m.field());
    for (std::size_t i = 0; i < ech.pivot_columns.size(); ++i) v[ech.pivot_columns[i]] = -ech.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> left_nullspace(const Matrix& m) { return nullspace(m.transpose()); }

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  const auto ech = row_reduce(aug);
  if (ech.pivot_columns.size() < n || (n > 0 && ech.pivot_columns[n - 1] != n - 1)) throw DivisionByZero();
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

std::size_t span_dimension(std::span<const Matrix> ms, std::size_t n) {
  if (ms.empty()) return 0;
  const Field field = ms.front().field();
  Matrix stacked(field, ms.size(), n * n);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].rows() != n || ms[k].cols() != n)
      throw DimensionMismatch("span_dimension expects " + std::to_string(n) + "x" + std::to_string(n) + " matrices");
    if (!(ms[k].field() == field)) throw FieldMismatch("span_dimension across fields");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(k, i * n + j) = ms[k](i, j);
  }
  return rank(stacked);
}

std::size_t vectors_rank(const Field& field, std::span<const Vector> vs, std::size_t length) {
  Matrix m(field, vs.size(), length);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != length) throw DimensionMismatch("vector length mismatch");
    for (std::size_t j = 0; j < length; ++j) m(i, j) = vs[i][j];
  }
  return rank(m);
}

}  // namespace procell
