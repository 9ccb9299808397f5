#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nrgit/qpoly/rational.hpp"

namespace nrgit {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Rational determinant(Matrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

inline std::size_t matrix_rank(Matrix a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[rank][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
    }
    ++rank;
  }
  return rank;
}

/// Solve the square system a·x = rhs; nullopt when a is singular.
inline std::optional<std::vector<Rational>> solve_square(Matrix a, std::vector<Rational> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
  return x;
}

/// Affine dimension of a point set (-1 for the empty set).
inline int affine_dimension(const std::vector<RationalVector>& pts) {
  if (pts.empty()) return -1;
  Matrix rows;
  for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back((pts[i] - pts[0]).entries());
  return static_cast<int>(matrix_rank(rows));
}

/// Positive definite symmetric bilinear form on a rational coordinate space.
///
/// Constructed on the cocharacter lattice from an integer Gram matrix; `dual()`
/// gives the induced form on characters (inverse Gram), which is rational.
class InnerProduct {
 public:
  InnerProduct() = default;

  explicit InnerProduct(Matrix gram) : gram_(std::move(gram)) { validate(); }

  static InnerProduct identity(std::size_t rank) { return InnerProduct(identity_matrix(rank)); }

  static InnerProduct from_integers(const std::vector<std::vector<long>>& gram) {
    Matrix m;
    for (const auto& row : gram) {
      std::vector<Rational> r;
      for (long v : row) r.emplace_back(v);
      m.push_back(std::move(r));
    }
    return InnerProduct(std::move(m));
  }

  std::size_t rank() const { return gram_.size(); }
  const Matrix& gram() const { return gram_; }

  bool is_integral() const {
    for (const auto& row : gram_)
      for (const auto& q : row)
        if (!is_integer(q)) return false;
    return true;
  }

  Rational operator()(const RationalVector& u, const RationalVector& v) const {
    if (u.dim() != rank() || v.dim() != rank()) {
      throw Error(ErrorCode::DimensionMismatch, "inner product: vector rank differs from form rank");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) s += u[i] * gram_[i][j] * v[j];
    }
    return s;
  }

  Rational norm_sq(const RationalVector& v) const { return (*this)(v, v); }

  /// G·v: the covector paired with v.
  RationalVector apply(const RationalVector& v) const {
    RationalVector out(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) out[i] += gram_[i][j] * v[j];
    return out;
  }

  InnerProduct dual() const {
    const std::size_t n = rank();
    Matrix inv(n, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> e(n, Rational(0));
      e[j] = 1;
      auto col = solve_square(gram_, e);
      for (std::size_t i = 0; i < n; ++i) inv[i][j] = (*col)[i];
    }
    return InnerProduct(std::move(inv));
  }

  /// Block-diagonal extension by `extra` new axes carrying the unit form.
  InnerProduct extended(std::size_t extra) const {
    const std::size_t n = rank() + extra;
    Matrix m = identity_matrix(n);
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) m[i][j] = gram_[i][j];
    return InnerProduct(std::move(m));
  }

  friend bool operator==(const InnerProduct& a, const InnerProduct& b) { return a.gram_ == b.gram_; }

 private:
  void validate() const {
    const std::size_t n = gram_.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "inner product: empty Gram matrix");
    for (const auto& row : gram_) {
      if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "inner product: Gram matrix is not square");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram_[i][j] != gram_[j][i]) throw Error(ErrorCode::InvalidArgument, "inner product: Gram matrix is not symmetric");
    for (std::size_t k = 1; k <= n; ++k) {
      Matrix minor(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor[i][j] = gram_[i][j];
      if (determinant(minor) <= 0) {
        throw Error(ErrorCode::InvalidArgument, "inner product: leading principal minor " + std::to_string(k) + " is not positive");
      }
    }
  }

  Matrix gram_;
};

}  // namespace nrgit
