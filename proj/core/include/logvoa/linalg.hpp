#pragma once

#include <cstddef>
#include <vector>

#include "logvoa/rational.hpp"

namespace logvoa {

/// Dense rational matrix. Small sizes only; every routine is exact and
/// deterministic (first-nonzero pivoting, no tolerances).
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rational& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const;
  Matrix transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(Matrix a, const Matrix& b);
  friend Matrix operator-(Matrix a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<size_t> rref();
  size_t rank() const;
  /// Basis of the right kernel, one vector per free column.
  std::vector<std::vector<Rational>> kernel_basis() const;
  /// Inverse of a square invertible matrix; throws if singular.
  Matrix inverse() const;

  std::vector<Rational> apply(const std::vector<Rational>& x) const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Incrementally echelonized span of rational coordinate vectors of a
/// fixed dimension; supports membership by reduction.
class EchelonBasis {
 public:
  explicit EchelonBasis(size_t dim) : dim_(dim) {}

  size_t dim() const { return dim_; }
  size_t size() const { return rows_.size(); }

  /// Reduces v against the basis; inserts the remainder if nonzero.
  /// Returns true when the span grew.
  bool insert(std::vector<Rational> v);
  /// True iff v lies in the current span.
  bool contains(std::vector<Rational> v) const;

 private:
  void reduce(std::vector<Rational>& v) const;

  size_t dim_;
  std::vector<std::vector<Rational>> rows_;  // pivot-normalized, ascending pivot
  std::vector<size_t> pivots_;
};

}  // namespace logvoa
