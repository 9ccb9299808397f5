#pragma once

#include <optional>
#include <vector>

#include "nrgit/qpoly/linalg.hpp"

namespace nrgit {

struct LPResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;

  bool feasible() const { return status != Status::Infeasible; }
};

namespace detail {

// Dense tableau; the last column is the right-hand side, the last row the
// reduced costs (maximisation: entering column has a negative cost).
class Tableau {
 public:
  Tableau(Matrix rows, std::vector<std::size_t> basis) : t_(std::move(rows)), basis_(std::move(basis)) {}

  std::size_t rows() const { return t_.size() - 1; }
  std::size_t cols() const { return t_[0].size() - 1; }
  Matrix& t() { return t_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t_[r][c];
    for (auto& v : t_[r]) v /= p;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j < t_[i].size(); ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Bland's rule over the columns flagged in `allowed`; false when unbounded.
  bool optimise(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j) {
        if (allowed[j] && t_.back()[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols()) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i].back() / t_[i][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

 private:
  Matrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// maximise c·x subject to A x = b, x >= 0, exactly (two-phase simplex, Bland's rule).
inline LPResult solve_lp(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t m = a.size(), n = c.size();
  for (const auto& row : a)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "solve_lp: constraint row length");
  if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "solve_lp: right-hand side length");

  // Phase one: artificial variable per row.
  Matrix t(m + 1, std::vector<Rational>(n + m + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    t[i][n + i] = 1;
    t[i].back() = flip ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
    for (std::size_t j = 0; j < n; ++j) t[m][j] -= t[i][j];
    t[m].back() -= t[i].back();
  }
  detail::Tableau tab(std::move(t), std::move(basis));
  tab.optimise(std::vector<bool>(n + m, true));
  if (tab.t()[m].back() != 0) return {};

  // Drive artificials out of the basis, dropping redundant rows.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (tab.t()[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col < n) {
      tab.pivot(i, col);
      ++i;
    } else {
      tab.t().erase(tab.t().begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis().erase(tab.basis().begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase two objective row in terms of the current basis.
  auto& rows = tab.t();
  auto& obj = rows.back();
  std::fill(obj.begin(), obj.end(), Rational(0));
  for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const Rational f = obj[tab.basis()[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < obj.size(); ++j) obj[j] -= f * rows[i][j];
  }
  std::vector<bool> allowed(n + m, false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(n), true);

  LPResult out;
  if (!tab.optimise(allowed)) {
    out.status = LPResult::Status::Unbounded;
    return out;
  }
  out.status = LPResult::Status::Optimal;
  out.x.assign(n, Rational(0));
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (tab.basis()[i] < n) out.x[tab.basis()[i]] = rows[i].back();
  out.value = rows.back().back();
  return out;
}

}  // namespace nrgit
