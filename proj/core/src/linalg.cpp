#include "logvoa/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace logvoa {

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
  Matrix out(a.rows_, b.cols_);
  for (size_t r = 0; r < a.rows_; ++r)
    for (size_t k = 0; k < a.cols_; ++k) {
      const Rational& ark = a.at(r, k);
      if (ark.is_zero()) continue;
      for (size_t c = 0; c < b.cols_; ++c) out.at(r, c) += ark * b.at(k, c);
    }
  return out;
}

Matrix operator+(Matrix a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("Matrix: dimension mismatch in sum");
  for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
  return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("Matrix: dimension mismatch in difference");
  for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
  return a;
}

std::vector<size_t> Matrix::rref() {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < cols_ && row < rows_; ++col) {
    size_t pr = row;
    while (pr < rows_ && at(pr, col).is_zero()) ++pr;
    if (pr == rows_) continue;
    if (pr != row)
      for (size_t c = 0; c < cols_; ++c) std::swap(at(pr, c), at(row, c));
    Rational inv = Rational(1) / at(row, col);
    for (size_t c = col; c < cols_; ++c) at(row, c) *= inv;
    for (size_t r = 0; r < rows_; ++r) {
      if (r == row || at(r, col).is_zero()) continue;
      Rational f = at(r, col);
      for (size_t c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t Matrix::rank() const {
  Matrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<Rational>> Matrix::kernel_basis() const {
  Matrix r = *this;
  std::vector<size_t> pivots = r.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols_);
    v[free] = Rational(1);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("Matrix: inverse of non-square matrix");
  Matrix aug(rows_, 2 * cols_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_ + r) = Rational(1);
  }
  std::vector<size_t> pivots = aug.rref();
  // All pivots must land in the left block, else the matrix is singular.
  if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() >= cols_))
    throw std::invalid_argument("Matrix: singular");
  Matrix inv(rows_, cols_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) inv.at(r, c) = aug.at(r, cols_ + c);
  return inv;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("Matrix: dimension mismatch in apply");
  std::vector<Rational> y(rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c)
      if (!at(r, c).is_zero()) y[r] += at(r, c) * x[c];
  return y;
}

void EchelonBasis::reduce(std::vector<Rational>& v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rational& f = v[pivots_[i]];
    if (f.is_zero()) continue;
    Rational factor = f;  // rows are pivot-normalized to 1
    for (size_t c = pivots_[i]; c < dim_; ++c) v[c] -= factor * rows_[i][c];
  }
}

bool EchelonBasis::insert(std::vector<Rational> v) {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: wrong dimension");
  reduce(v);
  size_t piv = dim_;
  for (size_t c = 0; c < dim_; ++c)
    if (!v[c].is_zero()) {
      piv = c;
      break;
    }
  if (piv == dim_) return false;
  Rational inv = Rational(1) / v[piv];
  for (size_t c = piv; c < dim_; ++c) v[c] *= inv;
  // Back-eliminate to keep rows fully reduced.
  for (size_t i = 0; i < rows_.size(); ++i) {
    Rational f = rows_[i][piv];
    if (f.is_zero()) continue;
    for (size_t c = piv; c < dim_; ++c) rows_[i][c] -= f * v[c];
  }
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool EchelonBasis::contains(std::vector<Rational> v) const {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: wrong dimension");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

}  // namespace logvoa
