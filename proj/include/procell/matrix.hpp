#pragma once

#include "procell/scalar.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace procell {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a single Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& field, std::size_t rows, std::size_t cols);
  /// Throws DimensionMismatch on ragged input, FieldMismatch on mixed fields.
  static Matrix from_rows(const Field& field, const std::vector<Vector>& rows);
  static Matrix identity(const Field& field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  bool is_zero() const;
  Matrix transpose() const;
  Scalar trace() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form, pivoting on the first nonzero entry of each column.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
};

RowEchelon row_reduce(const Matrix& m);

/// Row rank over the matrix's field.
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& m);

/// Basis of {x : x m = 0}, i.e. the nullspace of the transpose.
std::vector<Vector> left_nullspace(const Matrix& m);

/// Throws DivisionByZero if singular, DimensionMismatch if not square.
Matrix inverse(const Matrix& m);

/// Dimension of the linear span of `ms` inside the n^2-dimensional space of
/// n x n matrices. Throws DimensionMismatch unless every matrix is n x n.
std::size_t span_dimension(std::span<const Matrix> ms, std::size_t n);

/// Rank of the given vectors (all of one length) viewed as rows.
std::size_t vectors_rank(const Field& field, std::span<const Vector> vs, std::size_t length);

}  // namespace procell
