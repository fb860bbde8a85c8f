#pragma once

#include <optional>
#include <vector>

#include "crnf/gauss_rational.hpp"

namespace crnf {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<Rational> row(std::size_t i) const {
    return {data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)};
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(a(i, k)) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by exact Gaussian elimination. Pivots are taken
/// left to right, so earlier columns are preferred.
inline RowEchelon rref(Matrix a) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

inline std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

/// Basis of {x : A x = 0}; one vector per free column, with that free
/// variable set to 1 and the others to 0.
inline std::vector<std::vector<Rational>> nullspace(const Matrix& a) {
  RowEchelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(a.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw InternalError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw InternalError("singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// M v for a vector over any scalar type that can be scaled by rationals.
template <class S>
std::vector<S> matvec(const Matrix& m, const std::vector<S>& v) {
  if (v.size() != m.cols()) throw InternalError("matvec: shape mismatch");
  std::vector<S> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 && !v[j].is_zero()) out[i] += v[j] * S(GaussRat(m(i, j)));
  return out;
}

inline std::vector<Rational> matvec(const Matrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// Solves A x = e for e in the column space of A. Uses the leftmost
/// independent columns; the remaining unknowns are set to zero.
class ImageSolver {
 public:
  ImageSolver() = default;
  explicit ImageSolver(const Matrix& a) : cols_(a.cols()), rows_(a.rows()) {
    pivots_ = rref(a).pivots;
    if (pivots_.empty()) {
      residual_ = Matrix::identity(rows_);
      left_inverse_ = Matrix(0, rows_);
      return;
    }
    Matrix aj = a.select_columns(pivots_);
    Matrix ajt = aj.transpose();
    left_inverse_ = inverse(ajt * aj) * ajt;
    residual_ = Matrix::identity(rows_) - aj * left_inverse_;
  }

  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::size_t rank() const { return pivots_.size(); }
  /// I - (projection onto the column space); e is solvable iff residual * e == 0.
  const Matrix& residual() const { return residual_; }

  template <class S>
  std::optional<std::vector<S>> solve(const std::vector<S>& e) const {
    for (const auto& r : matvec(residual_, e))
      if (!r.is_zero()) return std::nullopt;
    std::vector<S> coeffs = matvec(left_inverse_, e);
    std::vector<S> x(cols_);
    for (std::size_t k = 0; k < pivots_.size(); ++k) x[pivots_[k]] = coeffs[k];
    return x;
  }

 private:
  std::size_t cols_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::size_t> pivots_;
  Matrix left_inverse_;
  Matrix residual_;
};

}  // namespace crnf
