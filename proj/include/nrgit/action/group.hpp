#pragma once

#include <vector>

#include "nrgit/action/torus.hpp"

namespace nrgit {

using PolyMatrix = std::vector<std::vector<BiPoly>>;

inline PolyMatrix poly_identity(std::size_t n) {
  PolyMatrix m(n, std::vector<BiPoly>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline BiPoly poly_determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BiPoly det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      minor.emplace_back();
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) minor.back().push_back(m[r][k]);
    }
    BiPoly term = m[0][c] * poly_determinant(minor);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

/// Contragredient (u⁻¹)ᵀ, for matrices of constant nonzero determinant.
inline PolyMatrix dual_of(const PolyMatrix& u) {
  const std::size_t n = u.size();
  BiPoly det = poly_determinant(u);
  if (!det.is_constant() || det.is_zero()) throw Error(ErrorCode::Validation, "dual_of: determinant is not a nonzero constant");
  const BiPoly inv_det(1 / det.constant_term());
  // (u⁻¹)ᵀ = cofactor matrix / det.
  PolyMatrix out(n, std::vector<BiPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        minor.emplace_back();
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) minor.back().push_back(u[r][c]);
      }
      BiPoly cof = poly_determinant(minor) * inv_det;
      out[i][j] = (i + j) % 2 ? -cof : cof;
    }
  return out;
}

/// A point with exact (possibly symbolic) coordinates, stored per factor.
class ExplicitPoint {
 public:
  ExplicitPoint() = default;
  explicit ExplicitPoint(std::vector<std::vector<BiPoly>> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorCode::Validation, "explicit point: no factors");
    for (std::size_t f = 0; f < coords_.size(); ++f) {
      bool nonzero = std::any_of(coords_[f].begin(), coords_[f].end(), [](const BiPoly& p) { return !p.is_zero(); });
      if (!nonzero) throw Error(ErrorCode::Validation, "explicit point: factor " + std::to_string(f) + " has all coordinates zero");
    }
  }

  static ExplicitPoint rational(const std::vector<std::vector<Rational>>& coords) {
    std::vector<std::vector<BiPoly>> c;
    for (const auto& f : coords) {
      c.emplace_back();
      for (const auto& q : f) c.back().emplace_back(q);
    }
    return ExplicitPoint(std::move(c));
  }

  const std::vector<std::vector<BiPoly>>& coords() const { return coords_; }
  std::size_t factor_count() const { return coords_.size(); }

  bool is_rational() const {
    for (const auto& f : coords_)
      for (const auto& p : f)
        if (!p.is_constant()) return false;
    return true;
  }

  /// All coordinates in global (concatenated) order.
  std::vector<BiPoly> flat() const {
    std::vector<BiPoly> out;
    for (const auto& f : coords_) out.insert(out.end(), f.begin(), f.end());
    return out;
  }

  ExplicitPoint evaluated(const Rational& b, const Rational& c) const {
    std::vector<std::vector<BiPoly>> out;
    for (const auto& f : coords_) {
      out.emplace_back();
      for (const auto& p : f) out.back().emplace_back(p(b, c));
    }
    return ExplicitPoint(std::move(out));
  }

  friend bool operator==(const ExplicitPoint&, const ExplicitPoint&) = default;

 private:
  std::vector<std::vector<BiPoly>> coords_;
};

/// Unipotent radical data: adjoint weights on Lie U and the action of U on
/// each factor as a polynomial matrix in the group parameters b, c.
class GroupSpec {
 public:
  GroupSpec() = default;
  GroupSpec(std::vector<RationalVector> adjoint_weights, int u_params, std::vector<PolyMatrix> u_matrices)
      : adjoint_(std::move(adjoint_weights)), u_params_(u_params), u_(std::move(u_matrices)) {
    if (u_params_ < 0 || u_params_ > 2) throw Error(ErrorCode::Validation, "group: u_params must be 0, 1 or 2");
    for (const auto& w : adjoint_)
      if (!w.is_integral()) throw Error(ErrorCode::Validation, "group: adjoint weights must be integral");
    bool used_b = false, used_c = false;
    for (std::size_t f = 0; f < u_.size(); ++f) {
      const auto& m = u_[f];
      for (const auto& row : m)
        if (row.size() != m.size()) throw Error(ErrorCode::Validation, "group: u_matrix " + std::to_string(f) + " is not square");
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          const BiPoly& p = m[i][j];
          if (p.uses(Param::B)) used_b = true;
          if (p.uses(Param::C)) used_c = true;
          if (p(0, 0) != (i == j ? 1 : 0))
            throw Error(ErrorCode::Validation, "group: u_matrix " + std::to_string(f) + " is not the identity at (0,0)");
        }
    }
    if (int(used_b) + int(used_c) > u_params_) throw Error(ErrorCode::Validation, "group: u_matrices use more parameters than u_params");
  }

  /// No unipotent part: identity matrices of the given factor sizes.
  static GroupSpec trivial(const std::vector<std::size_t>& factor_sizes) {
    std::vector<PolyMatrix> u;
    for (auto n : factor_sizes) u.push_back(poly_identity(n));
    return GroupSpec({}, 0, std::move(u));
  }

  const std::vector<RationalVector>& adjoint_weights() const { return adjoint_; }
  int u_params() const { return u_params_; }
  const std::vector<PolyMatrix>& u_matrices() const { return u_; }
  bool unipotent_trivial() const { return u_params_ == 0; }

  void check_against(const TorusAction& a) const {
    if (u_.size() != a.factor_count()) throw Error(ErrorCode::Validation, "group: one u_matrix per factor required");
    for (std::size_t f = 0; f < u_.size(); ++f)
      if (u_[f].size() != a.factor_partition()[f].size())
        throw Error(ErrorCode::Validation, "group: u_matrix " + std::to_string(f) + " size differs from factor size");
    for (const auto& w : adjoint_)
      if (w.dim() != a.rank()) throw Error(ErrorCode::DimensionMismatch, "group: adjoint weight dimension differs from rank");
  }

 private:
  std::vector<RationalVector> adjoint_;
  int u_params_ = 0;
  std::vector<PolyMatrix> u_;
};

/// u·x with u the generic group element, coordinates polynomial in (b, c).
inline ExplicitPoint orbit_point(const ExplicitPoint& x, const GroupSpec& g) {
  if (x.factor_count() != g.u_matrices().size()) throw Error(ErrorCode::Validation, "orbit_point: factor count differs from group");
  std::vector<std::vector<BiPoly>> out;
  for (std::size_t f = 0; f < x.factor_count(); ++f) {
    const auto& m = g.u_matrices()[f];
    const auto& v = x.coords()[f];
    if (m.size() != v.size()) throw Error(ErrorCode::Validation, "orbit_point: coordinate count differs from u_matrix size");
    out.emplace_back(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) out.back()[i] += m[i][j] * v[j];
  }
  return ExplicitPoint(std::move(out));
}

/// Indices (global) of coordinates that are not identically zero.
inline SupportPoint generic_support(const ExplicitPoint& x) {
  std::vector<std::size_t> idx;
  std::size_t k = 0;
  for (const auto& f : x.coords())
    for (const auto& p : f) {
      if (!p.is_zero()) idx.push_back(k);
      ++k;
    }
  return SupportPoint(std::move(idx));
}

}  // namespace nrgit
