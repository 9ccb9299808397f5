#pragma once

#include <vector>

#include "nrgit/polytope/hull.hpp"

namespace nrgit {

namespace detail {

/// Point of the affine hull of `pts` closest to the origin under `form`, as
/// affine coefficients; nullopt when the points are affinely dependent.
inline std::optional<std::vector<Rational>> affine_minimiser(const std::vector<RationalVector>& pts, const InnerProduct& form) {
  const std::size_t k = pts.size();
  Matrix m(k + 1, std::vector<Rational>(k + 1, Rational(0)));
  std::vector<Rational> rhs(k + 1, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) m[i][j] = m[j][i] = form(pts[i], pts[j]);
    m[i][k] = m[k][i] = 1;
  }
  rhs[k] = 1;
  auto sol = solve_square(std::move(m), std::move(rhs));
  if (!sol) return std::nullopt;
  sol->pop_back();
  return sol;
}

inline RationalVector combine(const std::vector<RationalVector>& pts, const std::vector<Rational>& coeffs) {
  RationalVector x(pts[0].dim());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (coeffs[i] != 0) x += coeffs[i] * pts[i];
  return x;
}

}  // namespace detail

/// Point of conv(S) nearest the origin under `form` (Wolfe's algorithm, exact).
inline RationalVector min_norm_point(const PointSet& s, const InnerProduct& form) {
  if (form.rank() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "min_norm_point: form rank differs from point dimension");
  const auto pts = s.distinct();

  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (form.norm_sq(pts[i]) < form.norm_sq(pts[start])) start = i;

  std::vector<std::size_t> corral{start};
  std::vector<Rational> lambda{Rational(1)};
  RationalVector x = pts[start];

  while (true) {
    const Rational xx = form.norm_sq(x);
    std::size_t best = pts.size();
    Rational best_val;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      Rational v = form(x, pts[j]);
      if (best == pts.size() || v < best_val) {
        best = j;
        best_val = v;
      }
    }
    if (best_val >= xx) return x;
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) return x;
    corral.push_back(best);
    lambda.push_back(0);

    while (true) {
      std::vector<RationalVector> cp;
      for (auto i : corral) cp.push_back(pts[i]);
      auto alpha = detail::affine_minimiser(cp, form);
      if (!alpha) throw Error(ErrorCode::InvalidArgument, "min_norm_point: corral lost affine independence");
      bool positive = std::all_of(alpha->begin(), alpha->end(), [](const Rational& a) { return a > 0; });
      if (positive) {
        lambda = *alpha;
        x = detail::combine(cp, lambda);
        break;
      }
      Rational theta = 1;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if ((*alpha)[i] <= 0) {
          Rational t = lambda[i] / (lambda[i] - (*alpha)[i]);
          theta = std::min(theta, t);
        }
      }
      for (std::size_t i = 0; i < corral.size(); ++i) lambda[i] = (1 - theta) * lambda[i] + theta * (*alpha)[i];
      std::vector<std::size_t> keep_idx;
      std::vector<Rational> keep_lambda;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (lambda[i] > 0) {
          keep_idx.push_back(corral[i]);
          keep_lambda.push_back(lambda[i]);
        }
      }
      corral = std::move(keep_idx);
      lambda = std::move(keep_lambda);
      cp.clear();
      for (auto i : corral) cp.push_back(pts[i]);
      x = detail::combine(cp, lambda);
    }
  }
}

inline RationalVector min_norm_point(const PointSet& s) { return min_norm_point(s, InnerProduct::identity(s.dim())); }

/// Independent face sweep: over all affinely independent subsets, project the
/// origin onto the affine hull and keep projections with nonnegative
/// barycentric coordinates; return the shortest.
inline RationalVector min_norm_point_oracle(const PointSet& s, const InnerProduct& form) {
  if (s.size() > 16) throw Error(ErrorCode::TooLarge, "min_norm_point_oracle: more than 16 points");
  if (form.rank() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "min_norm_point_oracle: form rank differs");
  const auto pts = s.distinct();
  const std::size_t n = pts.size(), d = s.dim();
  std::optional<RationalVector> best;
  Rational best_norm;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<RationalVector> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(pts[i]);
    if (sub.size() > d + 1) continue;
    if (affine_dimension(sub) != static_cast<int>(sub.size()) - 1) continue;
    // x = p0 + Σ t_j (p_j - p0); normal equations V^T G V t = -V^T G p0.
    const std::size_t k = sub.size() - 1;
    std::vector<RationalVector> v;
    for (std::size_t j = 1; j <= k; ++j) v.push_back(sub[j] - sub[0]);
    std::vector<Rational> t;
    if (k > 0) {
      Matrix m(k, std::vector<Rational>(k));
      std::vector<Rational> rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = form(v[i], v[j]);
        rhs[i] = -form(v[i], sub[0]);
      }
      t = *solve_square(std::move(m), std::move(rhs));
    }
    Rational t0 = 1;
    for (const auto& tj : t) t0 -= tj;
    if (t0 < 0 || std::any_of(t.begin(), t.end(), [](const Rational& q) { return q < 0; })) continue;
    RationalVector x = sub[0];
    for (std::size_t j = 0; j < k; ++j) x += t[j] * v[j];
    Rational nx = form.norm_sq(x);
    if (!best || nx < best_norm) {
      best = x;
      best_norm = nx;
    }
  }
  return *best;
}

inline RationalVector min_norm_point_oracle(const PointSet& s) { return min_norm_point_oracle(s, InnerProduct::identity(s.dim())); }

}  // namespace nrgit
