#pragma once

#include <algorithm>
#include <vector>

#include "nrgit/polytope/lp.hpp"

namespace nrgit {

/// Nonempty list of points in a common dimension; duplicates allowed.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<RationalVector> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::EmptyInput, "point set is empty");
    for (const auto& p : points_)
      if (p.dim() != points_[0].dim()) throw Error(ErrorCode::DimensionMismatch, "point set: mixed dimensions");
    if (points_[0].dim() == 0) throw Error(ErrorCode::DimensionMismatch, "point set: dimension 0");
  }
  PointSet(std::initializer_list<RationalVector> points) : PointSet(std::vector<RationalVector>(points)) {}

  std::size_t dim() const { return points_[0].dim(); }
  std::size_t size() const { return points_.size(); }
  const std::vector<RationalVector>& points() const { return points_; }
  const RationalVector& operator[](std::size_t i) const { return points_[i]; }

  /// Distinct points in ascending lexicographic order.
  std::vector<RationalVector> distinct() const {
    std::vector<RationalVector> out = points_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  PointSet translated(const RationalVector& shift) const {
    std::vector<RationalVector> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p - shift);
    return PointSet(std::move(out));
  }

 private:
  std::vector<RationalVector> points_;
};

enum class HullPosition { Outside, Boundary, Interior };

inline std::string_view to_string(HullPosition h) {
  switch (h) {
    case HullPosition::Outside: return "Outside";
    case HullPosition::Boundary: return "Boundary";
    case HullPosition::Interior: return "Interior";
  }
  return "?";
}

/// Ambient: Interior means the topological interior of conv(S) in the whole
/// space, so lower-dimensional hulls never report it. Relative: interior
/// relative to the affine hull.
enum class InteriorMode { Ambient, Relative };

/// Cross product sign of (b - a) x (c - a).
inline int orientation(const RationalVector& a, const RationalVector& b, const RationalVector& c) {
  return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

/// Vertices of the planar hull, counter-clockwise starting from the
/// lexicographically smallest; collinear points are dropped.
inline std::vector<RationalVector> convex_hull_2d(std::vector<RationalVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<RationalVector> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orientation(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i > 0; --i) {
    while (k >= lower && orientation(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

namespace detail {

inline HullPosition membership_1d(const std::vector<RationalVector>& pts, const RationalVector& q, InteriorMode) {
  Rational lo = pts.front()[0], hi = pts.front()[0];
  for (const auto& p : pts) {
    lo = std::min(lo, p[0]);
    hi = std::max(hi, p[0]);
  }
  if (q[0] < lo || q[0] > hi) return HullPosition::Outside;
  if (lo == hi) return HullPosition::Boundary;
  return (q[0] == lo || q[0] == hi) ? HullPosition::Boundary : HullPosition::Interior;
}

inline HullPosition membership_segment(const RationalVector& a, const RationalVector& b, const RationalVector& q,
                                       InteriorMode mode) {
  if (orientation(a, b, q) != 0) return HullPosition::Outside;
  // Parametrise along the dominant coordinate.
  std::size_t axis = (a[0] != b[0]) ? 0 : 1;
  Rational lo = std::min(a[axis], b[axis]), hi = std::max(a[axis], b[axis]);
  if (q[axis] < lo || q[axis] > hi) return HullPosition::Outside;
  if (mode == InteriorMode::Relative && q[axis] != lo && q[axis] != hi) return HullPosition::Interior;
  return HullPosition::Boundary;
}

inline HullPosition membership_2d(const std::vector<RationalVector>& pts, const RationalVector& q, InteriorMode mode) {
  auto hull = convex_hull_2d(pts);
  if (hull.size() == 1) return hull[0] == q ? (mode == InteriorMode::Relative ? HullPosition::Interior : HullPosition::Boundary)
                                            : HullPosition::Outside;
  if (hull.size() == 2) return membership_segment(hull[0], hull[1], q, mode);
  bool on_edge = false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    int o = orientation(hull[i], hull[(i + 1) % hull.size()], q);
    if (o < 0) return HullPosition::Outside;
    if (o == 0) on_edge = true;
  }
  return on_edge ? HullPosition::Boundary : HullPosition::Interior;
}

}  // namespace detail

/// General-dimension classification by linear programming: q = Σ λ_i p_i with
/// λ_i = s + μ_i, μ, s >= 0, Σ λ_i = 1; maximise s. Feasible means q lies in the
/// hull, and s* > 0 means some strictly positive combination exists, i.e. q
/// is in the relative interior.
inline HullPosition hull_membership_lp(const PointSet& s, const RationalVector& q, InteriorMode mode = InteriorMode::Ambient) {
  if (q.dim() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "hull_membership: query dimension differs");
  const auto pts = s.distinct();
  const std::size_t n = pts.size(), d = s.dim();
  Matrix a(d + 1, std::vector<Rational>(n + 1, Rational(0)));
  std::vector<Rational> b(d + 1, Rational(0)), c(n + 1, Rational(0));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      a[k][i] = pts[i][k];
      a[k][n] += pts[i][k];
    }
    b[k] = q[k];
  }
  for (std::size_t i = 0; i < n; ++i) a[d][i] = 1;
  a[d][n] = static_cast<long>(n);
  b[d] = 1;
  c[n] = 1;
  auto res = solve_lp(a, b, c);
  if (!res.feasible()) return HullPosition::Outside;
  if (res.value <= 0) return HullPosition::Boundary;
  if (mode == InteriorMode::Relative) return HullPosition::Interior;
  return affine_dimension(pts) == static_cast<int>(d) ? HullPosition::Interior : HullPosition::Boundary;
}

/// Exact classification of q against conv(S).
inline HullPosition hull_membership(const PointSet& s, const RationalVector& q, InteriorMode mode = InteriorMode::Ambient) {
  if (q.dim() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "hull_membership: query dimension differs");
  if (s.dim() == 1) {
    auto pts = s.points();
    auto h = detail::membership_1d(pts, q, mode);
    if (h == HullPosition::Boundary && mode == InteriorMode::Relative) {
      bool single = std::all_of(pts.begin(), pts.end(), [&](const RationalVector& p) { return p == pts[0]; });
      if (single) return HullPosition::Interior;
    }
    return h;
  }
  if (s.dim() == 2) return detail::membership_2d(s.points(), q, mode);
  return hull_membership_lp(s, q, mode);
}

/// Vertices of conv(S): points not in the hull of the others.
inline std::vector<RationalVector> hull_vertices(const PointSet& s) {
  auto pts = s.distinct();
  if (pts.size() == 1) return pts;
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<RationalVector> rest;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) rest.push_back(pts[j]);
    if (hull_membership_lp(PointSet(rest), pts[i]) == HullPosition::Outside) out.push_back(pts[i]);
  }
  return out;
}

}  // namespace nrgit
