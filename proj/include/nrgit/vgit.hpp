#pragma once

// Variation of GIT over the space of character twists.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "nrgit/action.hpp"
#include "nrgit/polytope.hpp"
#include "nrgit/stability.hpp"

namespace nrgit {

/// Hull position of a twist against each support's Segre weight hull, with
/// the hulls computed once (rank ≤ 2) so that many twists are cheap.
class SupportClassifier {
 public:
  SupportClassifier(const TorusAction& a, std::vector<SupportPoint> supports) : rank_(a.rank()), supports_(std::move(supports)) {
    for (const auto& s : supports_) {
      a.validate(s);
      auto w = a.segre_weights(s);
      if (rank_ <= 2) {
        hulls_.push_back(rank_ == 1 ? interval(w) : convex_hull_2d(w));
      } else {
        sets_.emplace_back(std::move(w));
      }
    }
  }
  explicit SupportClassifier(const TorusAction& a) : SupportClassifier(a, a.all_supports()) {}

  const std::vector<SupportPoint>& supports() const { return supports_; }
  std::size_t size() const { return supports_.size(); }

  HullPosition position(std::size_t k, const RationalVector& chi) const {
    if (chi.dim() != rank_) throw Error(ErrorCode::DimensionMismatch, "twist dimension differs from rank");
    if (rank_ > 2) return hull_membership(sets_[k], chi);
    const auto& h = hulls_[k];
    if (rank_ == 1) {
      if (chi[0] < h[0][0] || chi[0] > h[1][0]) return HullPosition::Outside;
      if (h[0][0] < chi[0] && chi[0] < h[1][0]) return HullPosition::Interior;
      return HullPosition::Boundary;
    }
    if (h.size() == 1) return h[0] == chi ? HullPosition::Boundary : HullPosition::Outside;
    if (h.size() == 2) {
      if (orientation(h[0], h[1], chi) != 0) return HullPosition::Outside;
      if (dot(chi - h[0], h[1] - h[0]) < 0 || dot(chi - h[1], h[0] - h[1]) < 0) return HullPosition::Outside;
      return HullPosition::Boundary;
    }
    bool interior = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
      int o = orientation(h[i], h[(i + 1) % h.size()], chi);
      if (o < 0) return HullPosition::Outside;
      if (o == 0) interior = false;
    }
    return interior ? HullPosition::Interior : HullPosition::Boundary;
  }

 private:
  static std::vector<RationalVector> interval(const std::vector<RationalVector>& w) {
    auto [lo, hi] = std::minmax_element(w.begin(), w.end(), [](const RationalVector& x, const RationalVector& y) { return x[0] < y[0]; });
    return {*lo, *hi};
  }

  std::size_t rank_;
  std::vector<SupportPoint> supports_;
  std::vector<std::vector<RationalVector>> hulls_;
  std::vector<PointSet> sets_;
};

/// Semistable (and stable) support families at a twist.
struct GitClass {
  std::vector<SupportPoint> semistable;
  std::vector<SupportPoint> stable;

  bool contains(const SupportPoint& s) const { return std::binary_search(semistable.begin(), semistable.end(), s); }
  /// GIT equivalence compares semistable loci.
  friend bool operator==(const GitClass& a, const GitClass& b) { return a.semistable == b.semistable; }
};

inline GitClass classify(const SupportClassifier& sc, const RationalVector& chi) {
  GitClass g;
  for (std::size_t k = 0; k < sc.size(); ++k) {
    HullPosition p = sc.position(k, chi);
    if (p == HullPosition::Outside) continue;
    g.semistable.push_back(sc.supports()[k]);
    if (p == HullPosition::Interior) g.stable.push_back(sc.supports()[k]);
  }
  std::sort(g.semistable.begin(), g.semistable.end());
  std::sort(g.stable.begin(), g.stable.end());
  return g;
}

/// Effective twists: the hull of all Segre weights.
class EffectiveRegion {
 public:
  EffectiveRegion() = default;
  explicit EffectiveRegion(const TorusAction& a) : weights_(a.segre_weights()), rank_(a.rank()) {
    if (rank_ == 1) {
      auto [lo, hi] = std::minmax_element(weights_.begin(), weights_.end());
      vertices_ = *lo == *hi ? std::vector<RationalVector>{*lo} : std::vector<RationalVector>{*lo, *hi};
    } else if (rank_ == 2) {
      vertices_ = convex_hull_2d(weights_);
    } else {
      vertices_ = hull_vertices(PointSet(weights_));
    }
  }

  std::size_t rank() const { return rank_; }
  /// Hull vertices (rank 1: the interval ends; rank 2: counter-clockwise).
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  bool contains(const RationalVector& chi) const {
    if (chi.dim() != rank_) throw Error(ErrorCode::DimensionMismatch, "twist dimension differs from rank");
    return hull_membership(PointSet(weights_), chi) != HullPosition::Outside;
  }

 private:
  std::vector<RationalVector> weights_;
  std::vector<RationalVector> vertices_;
  std::size_t rank_ = 0;
};

inline EffectiveRegion effective_cone(const TorusAction& a) { return EffectiveRegion(a); }

/// Semistable family at the twist χ (which replaces the action's own twist).
inline GitClass git_class(const TorusAction& a, const RationalVector& chi) {
  if (chi.dim() != a.rank()) throw Error(ErrorCode::DimensionMismatch, "git_class: twist dimension differs from rank");
  GitClass g = classify(SupportClassifier(a), chi);
  if (g.semistable.empty()) throw Error(ErrorCode::IneffectiveTwist, "git_class: twist lies outside the effective region");
  return g;
}

struct ComplexFace {
  int dim = 0;
  RationalVector sample;
  GitClass family;
  /// Arrangement lines (rank 2) containing the face; empty for chambers.
  std::vector<std::size_t> lines;
};

struct Wall {
  /// Rank 1: the wall point. Rank 2: the supporting line.
  std::optional<RationalVector> point;
  std::optional<Line2D> line;
  /// Faces of the complex making up the wall, in face order.
  std::vector<std::size_t> cells;
};

class ChamberComplex;
inline ChamberComplex wall_chamber_decomposition(const TorusAction& a);

class ChamberComplex {
 public:
  std::size_t rank = 0;
  EffectiveRegion region;
  std::vector<ComplexFace> faces;
  std::vector<Wall> walls;
  /// (lower-dimensional face, incident higher-dimensional face), deduplicated.
  std::vector<std::pair<std::size_t, std::size_t>> incidences;

  std::vector<std::size_t> of_dim(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].dim == d) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> chambers() const { return of_dim(static_cast<int>(rank)); }
  bool adjacent(std::size_t lower, std::size_t higher) const {
    return std::binary_search(incidences.begin(), incidences.end(), std::make_pair(lower, higher));
  }

  std::optional<std::size_t> locate(const RationalVector& chi) const {
    if (chi.dim() != rank) throw Error(ErrorCode::DimensionMismatch, "locate: twist dimension differs from rank");
    if (rank == 1) {
      for (std::size_t k = 0; k < values_.size(); ++k) {
        if (chi[0] == values_[k]) return raw_to_face_[2 * k];
        if (k + 1 < values_.size() && values_[k] < chi[0] && chi[0] < values_[k + 1]) return raw_to_face_[2 * k + 1];
      }
      return std::nullopt;
    }
    auto raw = nrgit::locate(dec_, arr_, chi);
    if (!raw) return std::nullopt;
    return raw_to_face_[*raw];
  }

 private:
  friend ChamberComplex wall_chamber_decomposition(const TorusAction& a);
  std::vector<Rational> values_;
  Arrangement2D arr_;
  Decomposition2D dec_;
  std::vector<std::size_t> raw_to_face_;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Walls, chambers and cells in twist space. Candidate walls are over-generated
/// (every line through two Segre weights) and faces with equal semistable
/// families are merged afterwards, which removes the spurious ones.
inline ChamberComplex wall_chamber_decomposition(const TorusAction& a) {
  if (a.rank() > 2) throw Error(ErrorCode::RankUnsupported, "wall_chamber_decomposition: rank above 2");
  ChamberComplex cc;
  cc.rank = a.rank();
  cc.region = EffectiveRegion(a);
  const SupportClassifier sc(a);
  const auto weights = a.segre_weights();

  // Raw faces: dimension, sample, lines, and raw incidences.
  std::vector<int> dim;
  std::vector<RationalVector> sample;
  std::vector<std::vector<std::size_t>> lines;
  std::vector<std::pair<std::size_t, std::size_t>> inc;
  if (a.rank() == 1) {
    std::vector<Rational> vals;
    for (const auto& w : weights) vals.push_back(w[0]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    cc.values_ = vals;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      dim.push_back(0);
      sample.push_back(RationalVector{vals[k]});
      lines.emplace_back();
      if (k + 1 == vals.size()) break;
      dim.push_back(1);
      sample.push_back(RationalVector{(vals[k] + vals[k + 1]) / 2});
      lines.emplace_back();
      inc.emplace_back(2 * k, 2 * k + 1);
      inc.emplace_back(2 * k + 2, 2 * k + 1);
    }
  } else {
    cc.arr_ = Arrangement2D(Region2D::polygon(weights));
    for (std::size_t i = 0; i < weights.size(); ++i)
      for (std::size_t j = i + 1; j < weights.size(); ++j)
        if (weights[i] != weights[j]) {
          Line2D l = line_through(weights[i], weights[j]);
          cc.arr_.add_line(l.normal, l.offset);
        }
    cc.dec_ = chamber_decomposition_2d(cc.arr_);
    for (const auto& f : cc.dec_.faces) {
      dim.push_back(f.dim);
      sample.push_back(f.sample);
      lines.push_back(f.on_lines);
    }
    inc = cc.dec_.incidences;
  }

  const std::size_t n = dim.size();
  const int top = static_cast<int>(a.rank());
  std::vector<GitClass> fam;
  fam.reserve(n);
  for (std::size_t k = 0; k < n; ++k) fam.push_back(classify(sc, sample[k]));

  detail::UnionFind uf(n);
  for (const auto& [lo, hi] : inc)
    if (dim[hi] == top && dim[lo] == top - 1 && fam[lo] == fam[hi]) uf.join(lo, hi);
  if (top == 2) {
    std::map<std::size_t, std::vector<std::size_t>> equal_edges;
    for (const auto& [lo, hi] : inc)
      if (dim[lo] == 0 && dim[hi] == 1 && fam[lo] == fam[hi]) equal_edges[lo].push_back(hi);
    std::set<std::size_t> chamber_roots;
    for (std::size_t k = 0; k < n; ++k)
      if (dim[k] == top) chamber_roots.insert(uf.find(k));
    for (const auto& [v, edges] : equal_edges) {
      auto in_chamber = std::find_if(edges.begin(), edges.end(), [&](std::size_t e) { return chamber_roots.count(uf.find(e)) > 0; });
      if (in_chamber != edges.end()) {
        uf.join(v, *in_chamber);
        continue;
      }
      std::set<std::size_t> ls;
      for (auto e : edges) ls.insert(lines[e].begin(), lines[e].end());
      if (ls.size() == 1)
        for (auto e : edges) uf.join(v, e);
    }
  }

  std::map<std::size_t, std::size_t> id;
  cc.raw_to_face_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto [it, fresh] = id.emplace(uf.find(k), cc.faces.size());
    if (fresh) cc.faces.push_back({dim[k], sample[k], fam[k], lines[k]});
    ComplexFace& f = cc.faces[it->second];
    if (dim[k] > f.dim) {
      f.dim = dim[k];
      f.sample = sample[k];
      f.lines = lines[k];
    }
    cc.raw_to_face_[k] = it->second;
  }
  for (auto& f : cc.faces)
    if (f.dim == top) f.lines.clear();
  for (const auto& [lo, hi] : inc) {
    std::size_t a_id = cc.raw_to_face_[lo], b_id = cc.raw_to_face_[hi];
    if (a_id != b_id && cc.faces[a_id].dim < cc.faces[b_id].dim) cc.incidences.emplace_back(a_id, b_id);
  }
  std::sort(cc.incidences.begin(), cc.incidences.end());
  cc.incidences.erase(std::unique(cc.incidences.begin(), cc.incidences.end()), cc.incidences.end());

  if (top == 1) {
    for (std::size_t k = 0; k < cc.values_.size(); ++k)
      cc.walls.push_back({RationalVector{cc.values_[k]}, std::nullopt, {cc.raw_to_face_[2 * k]}});
  } else {
    for (std::size_t l = 0; l < cc.arr_.lines().size(); ++l) {
      Wall w{std::nullopt, cc.arr_.lines()[l], {}};
      bool genuine = false;
      for (std::size_t f = 0; f < cc.faces.size(); ++f) {
        const auto& fl = cc.faces[f].lines;
        if (cc.faces[f].dim >= top || std::find(fl.begin(), fl.end(), l) == fl.end()) continue;
        w.cells.push_back(f);
        genuine = genuine || cc.faces[f].dim == top - 1;
      }
      if (genuine) cc.walls.push_back(std::move(w));
    }
  }
  return cc;
}

struct FlipReport {
  std::size_t wall = 0;
  /// Semistable on the right chamber but not the left, and conversely.
  std::vector<SupportPoint> gained, lost;
  /// Semistable on the wall but in neither chamber.
  std::vector<SupportPoint> wall_only;
  /// The two chambers carry the same family.
  bool degenerate = false;
};

inline std::vector<SupportPoint> set_minus(const std::vector<SupportPoint>& a, const std::vector<SupportPoint>& b) {
  std::vector<SupportPoint> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline FlipReport crossing_report(const ChamberComplex& cc, std::size_t wall, std::size_t left, std::size_t right) {
  const int top = static_cast<int>(cc.rank);
  auto check = [&](std::size_t i) {
    if (i >= cc.faces.size()) throw Error(ErrorCode::NotAdjacent, "crossing_report: face index out of range");
  };
  check(wall);
  check(left);
  check(right);
  if (cc.faces[wall].dim != top - 1 || cc.faces[left].dim != top || cc.faces[right].dim != top || left == right ||
      !cc.adjacent(wall, left) || !cc.adjacent(wall, right))
    throw Error(ErrorCode::NotAdjacent, "crossing_report: chambers are not adjacent across this wall cell");
  const auto& l = cc.faces[left].family.semistable;
  const auto& r = cc.faces[right].family.semistable;
  FlipReport rep;
  rep.wall = wall;
  rep.gained = set_minus(r, l);
  rep.lost = set_minus(l, r);
  rep.wall_only = set_minus(set_minus(cc.faces[wall].family.semistable, l), r);
  rep.degenerate = l == r;
  return rep;
}

struct ExternalChangeReport {
  bool lambda_ok = false;
  bool mu_ok = false;
  long r_lambda = 0, r_mu = 0;
  /// Semistable supports of the double extension at each twist, and of the single extensions.
  std::vector<SupportPoint> double_lambda, double_mu, single_lambda, single_mu;
  bool passed() const { return lambda_ok && mu_ok; }
};

namespace detail {

/// Semistable family of the double extension at `twist` against the single
/// extension's family lifted by requiring both coordinates of the other P¹.
inline bool external_slice_matches(const TorusAction& dbl, const RationalVector& twist, const TorusAction& single,
                                   const RationalVector& single_twist, bool lambda_side, std::vector<SupportPoint>& dfam,
                                   std::vector<SupportPoint>& sfam) {
  dfam = classify(SupportClassifier(dbl), twist).semistable;
  sfam = classify(SupportClassifier(single), single_twist).semistable;
  const std::size_t nx = single.coordinate_count() - 2;
  const std::size_t py = nx, pz = nx + 2;
  std::vector<SupportPoint> lifted;
  for (const auto& s : sfam) {
    std::vector<std::size_t> idx;
    for (auto i : s.indices()) {
      if (i < nx) idx.push_back(i);
      else idx.push_back((lambda_side ? py : pz) + (i - nx));
    }
    for (std::size_t k = 0; k < 2; ++k) idx.push_back((lambda_side ? pz : py) + k);
    std::sort(idx.begin(), idx.end());
    lifted.emplace_back(std::move(idx));
  }
  std::sort(lifted.begin(), lifted.end());
  return lifted == dfam;
}

}  // namespace detail

/// Changing the external grading as a change of twist: the double extension
/// at each of its two twists must reproduce the corresponding single
/// extension's semistable family, with the other P¹ forced into A¹ \ {0}.
/// `lambda_twist_override` replaces the λ-side twist (for negative controls).
inline ExternalChangeReport verify_external_change(const TorusAction& a, const std::vector<long>& m_lambda, const std::vector<long>& m_mu,
                                                   long n, const Rational& eps,
                                                   const std::optional<RationalVector>& lambda_twist_override = std::nullopt) {
  ExternalChangeReport rep;
  rep.r_lambda = detail::segre_minimum(a, m_lambda);
  rep.r_mu = detail::segre_minimum(a, m_mu);
  auto dbl = build_double_extension(a, m_lambda, m_mu, n, rep.r_lambda, rep.r_mu, eps);
  auto single_l = build_external_extension(a, m_lambda, n);
  auto single_m = build_external_extension(a, m_mu, n);
  RationalVector tl = lambda_twist_override.value_or(dbl.twist_lambda);
  if (tl.dim() != dbl.action.rank()) throw Error(ErrorCode::DimensionMismatch, "verify_external_change: twist override dimension");
  rep.lambda_ok = detail::external_slice_matches(dbl.action, tl, single_l, single_l.twist(), true, rep.double_lambda, rep.single_lambda);
  rep.mu_ok = detail::external_slice_matches(dbl.action, dbl.twist_mu, single_m, single_m.twist(), false, rep.double_mu, rep.single_mu);
  return rep;
}

}  // namespace nrgit
