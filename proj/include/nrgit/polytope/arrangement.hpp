#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "nrgit/polytope/cone.hpp"
#include "nrgit/polytope/hull.hpp"

namespace nrgit {

/// The line {v : <normal, v> = offset} in the plane.
struct Line2D {
  RationalVector normal;
  Rational offset;

  Rational eval(const RationalVector& v) const { return dot(normal, v) - offset; }
  int side(const RationalVector& v) const { return sign(eval(v)); }
  friend bool operator==(const Line2D&, const Line2D&) = default;
};

/// Scale to coprime integers (n0, n1, offset) with the first nonzero normal entry positive.
inline Line2D normalise_line(const RationalVector& normal, const Rational& offset) {
  if (normal.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "line: normal must have dimension 2");
  if (normal.is_zero()) throw Error(ErrorCode::InvalidArgument, "line: zero normal");
  RationalVector v = primitive_integral(RationalVector{normal[0], normal[1], offset});
  if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) v = -v;
  return Line2D{RationalVector{v[0], v[1]}, v[2]};
}

/// Line through two distinct points.
inline Line2D line_through(const RationalVector& a, const RationalVector& b) {
  RationalVector n{-(b[1] - a[1]), b[0] - a[0]};
  return normalise_line(n, dot(n, a));
}

/// {v : <normal, v> > offset} or >= offset.
struct AffineHalfplane {
  RationalVector normal;
  Rational offset;
  bool strict = false;

  bool contains(const RationalVector& v) const {
    Rational s = dot(normal, v) - offset;
    return strict ? s > 0 : s >= 0;
  }
};

/// Convex planar region cut out by affine halfplanes; no constraints is the whole plane.
class Region2D {
 public:
  Region2D() = default;
  explicit Region2D(std::vector<AffineHalfplane> constraints) : constraints_(std::move(constraints)) {}

  static Region2D whole_plane() { return Region2D(); }

  static Region2D from_cone(const Cone& cone) {
    if (cone.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "region: cone must be planar");
    std::vector<AffineHalfplane> hs;
    for (const auto& h : cone.halfspaces()) hs.push_back({h.normal, 0, h.strict});
    return Region2D(std::move(hs));
  }

  /// Closed convex polygon with the given vertices (any order; hull taken).
  static Region2D polygon(const std::vector<RationalVector>& pts) {
    auto hull = convex_hull_2d(pts);
    if (hull.size() < 3) throw Error(ErrorCode::EmptyRegion, "region: polygon has empty interior");
    std::vector<AffineHalfplane> hs;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      RationalVector n{-(b[1] - a[1]), b[0] - a[0]};
      hs.push_back({n, dot(n, a), false});
    }
    return Region2D(std::move(hs));
  }

  static Region2D box(const Rational& lo, const Rational& hi) {
    return polygon({{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}});
  }

  const std::vector<AffineHalfplane>& constraints() const { return constraints_; }

  bool contains(const RationalVector& v) const {
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const AffineHalfplane& h) { return h.contains(v); });
  }

 private:
  std::vector<AffineHalfplane> constraints_;
};

/// Finite set of lines restricted to a region; lines are stored normalised and distinct.
class Arrangement2D {
 public:
  Arrangement2D() = default;
  explicit Arrangement2D(Region2D region) : region_(std::move(region)) {}

  /// Index of the (possibly pre-existing) line.
  std::size_t add_line(const RationalVector& normal, const Rational& offset) {
    Line2D l = normalise_line(normal, offset);
    for (std::size_t i = 0; i < lines_.size(); ++i)
      if (lines_[i] == l) return i;
    lines_.push_back(std::move(l));
    return lines_.size() - 1;
  }

  const std::vector<Line2D>& lines() const { return lines_; }
  const Region2D& region() const { return region_; }

  std::vector<int> sign_vector(const RationalVector& v) const {
    std::vector<int> s;
    s.reserve(lines_.size());
    for (const auto& l : lines_) s.push_back(l.side(v));
    return s;
  }

 private:
  std::vector<Line2D> lines_;
  Region2D region_;
};

struct Face2D {
  int dim = 2;
  RationalVector sample;
  std::vector<int> signs;
  /// Arrangement lines containing the face.
  std::vector<std::size_t> on_lines;
};

struct Decomposition2D {
  std::vector<Face2D> faces;
  /// (lower-dimensional face, incident higher-dimensional face)
  std::vector<std::pair<std::size_t, std::size_t>> incidences;
  std::map<std::vector<int>, std::size_t> by_signs;

  std::size_t count(int dim) const {
    return static_cast<std::size_t>(std::count_if(faces.begin(), faces.end(), [&](const Face2D& f) { return f.dim == dim; }));
  }
  std::size_t chambers() const { return count(2); }
  std::size_t walls() const { return count(1); }
  std::size_t vertices() const { return count(0); }
};

namespace detail {

struct GenLine {
  RationalVector normal;
  Rational offset;
  bool arrangement;
  Rational eval(const RationalVector& v) const { return dot(normal, v) - offset; }
};

inline std::optional<RationalVector> intersect(const GenLine& a, const GenLine& b) {
  Rational det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
  if (det == 0) return std::nullopt;
  return RationalVector{(a.offset * b.normal[1] - a.normal[1] * b.offset) / det,
                        (a.normal[0] * b.offset - a.offset * b.normal[0]) / det};
}

}  // namespace detail

/// Every face of the arrangement inside the region, one per realised sign
/// vector (each such set is convex, hence connected), with an interior
/// sample point. Candidates: pairwise intersections; interval samples along
/// each arrangement or region-boundary line; and small offsets from those
/// samples to either side, kept short enough to cross nothing.
inline Decomposition2D chamber_decomposition_2d(const Arrangement2D& arr) {
  using detail::GenLine;
  std::vector<GenLine> gen;
  for (const auto& l : arr.lines()) gen.push_back({l.normal, l.offset, true});
  for (const auto& h : arr.region().constraints()) {
    if (h.normal.is_zero()) continue;
    gen.push_back({h.normal, h.offset, false});
  }
  const Region2D& region = arr.region();

  Decomposition2D out;
  std::vector<std::pair<std::size_t, std::size_t>> raw_incidences;
  auto record = [&](const RationalVector& p, int dim) -> std::optional<std::size_t> {
    if (!region.contains(p)) return std::nullopt;
    auto signs = arr.sign_vector(p);
    auto it = out.by_signs.find(signs);
    if (it == out.by_signs.end()) {
      Face2D f;
      f.dim = dim;
      f.sample = p;
      for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] == 0) f.on_lines.push_back(i);
      f.signs = std::move(signs);
      out.faces.push_back(std::move(f));
      out.by_signs.emplace(out.faces.back().signs, out.faces.size() - 1);
      return out.faces.size() - 1;
    }
    Face2D& f = out.faces[it->second];
    if (dim > f.dim) {
      f.dim = dim;
      f.sample = p;
    }
    return it->second;
  };

  if (gen.empty()) {
    record(RationalVector(2), 2);
    return out;
  }

  for (std::size_t i = 0; i < gen.size(); ++i)
    for (std::size_t j = i + 1; j < gen.size(); ++j)
      if (auto p = detail::intersect(gen[i], gen[j])) record(*p, 0);

  for (std::size_t i = 0; i < gen.size(); ++i) {
    const GenLine& g = gen[i];
    const RationalVector dir{-g.normal[1], g.normal[0]};
    const RationalVector base = g.normal[0] != 0 ? RationalVector{g.offset / g.normal[0], 0}
                                                 : RationalVector{0, g.offset / g.normal[1]};
    std::vector<Rational> ts;
    for (std::size_t j = 0; j < gen.size(); ++j) {
      if (j == i) continue;
      Rational nd = dot(gen[j].normal, dir);
      if (nd == 0) continue;
      ts.push_back(-gen[j].eval(base) / nd);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    struct Interval {
      Rational t;
      std::optional<Rational> left, right;
    };
    std::vector<Interval> samples;
    if (ts.empty()) {
      samples.push_back({0, std::nullopt, std::nullopt});
    } else {
      samples.push_back({ts.front() - 1, std::nullopt, ts.front()});
      for (std::size_t k = 0; k + 1 < ts.size(); ++k) samples.push_back({(ts[k] + ts[k + 1]) / 2, ts[k], ts[k + 1]});
      samples.push_back({ts.back() + 1, ts.back(), std::nullopt});
    }

    for (const auto& s : samples) {
      const RationalVector p = base + s.t * dir;
      std::optional<std::size_t> edge;
      if (g.arrangement) {
        edge = record(p, 1);
        if (edge) {
          for (const auto& end : {s.left, s.right}) {
            if (!end) continue;
            if (auto v = record(base + *end * dir, 0); v && *v != *edge) raw_incidences.emplace_back(*v, *edge);
          }
        }
      }
      std::optional<Rational> delta;
      for (std::size_t j = 0; j < gen.size(); ++j) {
        Rational nn = dot(gen[j].normal, g.normal);
        Rational e = gen[j].eval(p);
        if (nn == 0 || e == 0) continue;
        Rational r = abs(e / nn);
        if (!delta || r < *delta) delta = r;
      }
      const Rational step = delta ? Rational(*delta / 2) : Rational(1);
      for (int side : {1, -1}) {
        auto cell = record(p + (step * side) * g.normal, 2);
        if (cell && edge && *cell != *edge) raw_incidences.emplace_back(*edge, *cell);
      }
    }
  }

  if (out.chambers() == 0) throw Error(ErrorCode::EmptyRegion, "chamber decomposition: region has empty interior");
  std::sort(raw_incidences.begin(), raw_incidences.end());
  raw_incidences.erase(std::unique(raw_incidences.begin(), raw_incidences.end()), raw_incidences.end());
  for (const auto& [a, b] : raw_incidences)
    if (out.faces[a].dim < out.faces[b].dim) out.incidences.emplace_back(a, b);
  return out;
}

/// Face containing v, if v lies in the region.
inline std::optional<std::size_t> locate(const Decomposition2D& d, const Arrangement2D& arr, const RationalVector& v) {
  if (!arr.region().contains(v)) return std::nullopt;
  auto it = d.by_signs.find(arr.sign_vector(v));
  if (it == d.by_signs.end()) return std::nullopt;
  return it->second;
}

/// Connected components of faces under the incidences accepted by `joinable`;
/// component ids are dense and numbered in order of first face.
inline std::vector<std::size_t> merge_components(const Decomposition2D& d,
                                                 const std::function<bool(std::size_t, std::size_t)>& joinable) {
  std::vector<std::size_t> parent(d.faces.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (const auto& [lo, hi] : d.incidences)
    if (joinable(lo, hi)) parent[find(lo)] = find(hi);
  std::vector<std::size_t> id(d.faces.size()), root_id(d.faces.size(), d.faces.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < d.faces.size(); ++i) {
    std::size_t r = find(i);
    if (root_id[r] == d.faces.size()) root_id[r] = next++;
    id[i] = root_id[r];
  }
  return id;
}

}  // namespace nrgit
