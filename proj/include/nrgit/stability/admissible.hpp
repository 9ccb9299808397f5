#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "nrgit/stability/hm.hpp"

namespace nrgit {

struct AdmissibleCone {
  Cone cone;
  /// No adjoint weights: U is trivial and every cocharacter is admissible.
  bool full_space = false;
};

/// {λ : <λ, w> > 0 for every adjoint weight w of Lie U}.
inline AdmissibleCone admissible_cone(const GroupSpec& g, std::size_t rank) {
  std::vector<Halfspace> hs;
  for (const auto& w : g.adjoint_weights()) {
    if (w.dim() != rank) throw Error(ErrorCode::DimensionMismatch, "admissible_cone: adjoint weight dimension differs from rank");
    if (w.is_zero()) throw Error(ErrorCode::EmptyCone, "admissible_cone: zero adjoint weight");
    Halfspace h{w, true};
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(std::move(h));
  }
  Cone c(rank, std::move(hs));
  if (c.is_empty()) throw Error(ErrorCode::EmptyCone, "admissible_cone: no cocharacter pairs positively with every adjoint weight");
  const bool full = c.is_full_space();
  return {std::move(c), full};
}

struct XMin {
  /// Coordinates of minimal λ-weight in each factor (global indices).
  std::vector<std::vector<std::size_t>> per_factor;
  /// Minimal λ-weight over Segre coordinates (sum of the per-factor minima).
  Rational min_weight;

  /// The minimal weight space as a support: union of the per-factor argmins.
  SupportPoint min_support() const {
    std::vector<std::size_t> all;
    for (const auto& f : per_factor) all.insert(all.end(), f.begin(), f.end());
    return SupportPoint(std::move(all));
  }
  /// Segre coordinates achieving the minimum.
  std::vector<std::vector<std::size_t>> segre_argmin(const TorusAction& a) const { return a.segre_tuples(min_support()); }

  /// Basin of attraction: a minimal-weight coordinate is nonzero in every factor.
  bool in_basin(const TorusAction& a, const SupportPoint& x) const {
    for (std::size_t f = 0; f < per_factor.size(); ++f) {
      auto sf = a.in_factor(x, f);
      bool hit = std::any_of(sf.begin(), sf.end(), [&](std::size_t i) {
        return std::binary_search(per_factor[f].begin(), per_factor[f].end(), i);
      });
      if (!hit) return false;
    }
    return true;
  }
  /// x lies in X_min itself.
  bool in_xmin(const TorusAction& a, const SupportPoint& x) const { return x.subset_of(min_support()) && in_basin(a, x); }

  friend bool operator==(const XMin&, const XMin&) = default;
};

/// Minimal weight space of the untwisted λ-weights.
inline XMin x_min(const TorusAction& a, const OneParamSubgroup& lambda) {
  if (lambda.rank() != a.rank()) throw Error(ErrorCode::DimensionMismatch, "x_min: 1PS rank differs from action rank");
  XMin out;
  out.min_weight = 0;
  for (const auto& block : a.factor_partition()) {
    std::optional<Rational> best;
    std::vector<std::size_t> arg;
    for (auto i : block) {
      Rational w = dot(lambda.cochar(), a.weight(i));
      if (!best || w < *best) {
        best = w;
        arg = {i};
      } else if (w == *best) {
        arg.push_back(i);
      }
    }
    out.min_weight += *best;
    out.per_factor.push_back(std::move(arg));
  }
  return out;
}

/// X^{s,G_m} = p⁻¹(X_min) \ X_min.
inline bool gm_stable_support(const TorusAction& a, const OneParamSubgroup& lambda, const SupportPoint& x) {
  a.validate(x);
  XMin m = x_min(a, lambda);
  return m.in_basin(a, x) && !x.subset_of(m.min_support());
}

struct AdaptedRegion {
  Rational lower, upper;
  OneParamSubgroup lambda;
  Rational epsilon;

  Rational pairing(const RationalVector& chi) const { return dot(lambda.cochar(), chi); }
  bool is_adapted(const RationalVector& chi) const {
    Rational t = pairing(chi);
    return lower < t && t < upper;
  }
  bool is_well_adapted(const RationalVector& chi) const {
    Rational t = pairing(chi);
    return lower < t && t < lower + epsilon;
  }
};

/// Twists χ for which the minimal λ-weight of the twisted action is the only
/// negative one, as a slab in t = <λ, χ>.
inline AdaptedRegion adapted_region(const TorusAction& a, const OneParamSubgroup& lambda,
                                    std::optional<Rational> epsilon = std::nullopt) {
  if (lambda.rank() != a.rank()) throw Error(ErrorCode::DimensionMismatch, "adapted_region: 1PS rank differs from action rank");
  std::vector<Rational> ws;
  for (const auto& w : a.segre_weights()) ws.push_back(dot(lambda.cochar(), w));
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  if (ws.size() < 2) throw Error(ErrorCode::NoAdaptedTwist, "adapted_region: λ-weights take a single value");
  AdaptedRegion r{ws[0], ws[1], lambda, epsilon.value_or((ws[1] - ws[0]) / 1000)};
  if (r.epsilon <= 0 || r.epsilon >= r.upper - r.lower)
    throw Error(ErrorCode::InvalidArgument, "adapted_region: epsilon must lie strictly between 0 and the slab width");
  return r;
}

struct FanPiece {
  /// Highest face dimension in the piece (1 = a ray, 2 = open planar sector).
  int dim = 0;
  OneParamSubgroup sample;
  std::vector<OneParamSubgroup> face_samples;
  XMin label;
};

struct CocharacterFan {
  std::vector<FanPiece> pieces;
};

/// Pieces of the cone on which the minimal weight space stays constant.
inline CocharacterFan cocharacter_fan(const TorusAction& a, const Cone& cone) {
  if (cone.dim() != a.rank()) throw Error(ErrorCode::DimensionMismatch, "cocharacter_fan: cone dimension differs from rank");
  CocharacterFan out;
  if (a.rank() == 1) {
    for (long s : {1L, -1L}) {
      RationalVector v = RationalVector::from_ints({s});
      if (!cone.contains(v)) continue;
      OneParamSubgroup l(v);
      out.pieces.push_back({1, l, {l}, x_min(a, l)});
    }
    if (out.pieces.empty()) throw Error(ErrorCode::EmptyCone, "cocharacter_fan: cone is empty");
    return out;
  }
  if (a.rank() > 2) throw Error(ErrorCode::RankUnsupported, "cocharacter_fan: rank above 2");

  Arrangement2D arr(Region2D::from_cone(cone));
  for (const auto& block : a.factor_partition())
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        RationalVector d = a.weight(block[j]) - a.weight(block[i]);
        if (!d.is_zero()) arr.add_line(d, 0);
      }
  Decomposition2D dec = chamber_decomposition_2d(arr);

  std::vector<std::optional<XMin>> labels(dec.faces.size());
  for (std::size_t k = 0; k < dec.faces.size(); ++k)
    if (!dec.faces[k].sample.is_zero()) labels[k] = x_min(a, OneParamSubgroup::primitive_along(dec.faces[k].sample));
  auto comp = merge_components(dec, [&](std::size_t lo, std::size_t hi) { return labels[lo] && labels[hi] && labels[lo]->per_factor == labels[hi]->per_factor; });

  std::map<std::size_t, std::size_t> piece_of;
  for (std::size_t k = 0; k < dec.faces.size(); ++k) {
    if (!labels[k]) continue;
    OneParamSubgroup s = OneParamSubgroup::primitive_along(dec.faces[k].sample);
    auto [it, fresh] = piece_of.emplace(comp[k], out.pieces.size());
    if (fresh) {
      out.pieces.push_back({dec.faces[k].dim, s, {s}, *labels[k]});
      continue;
    }
    FanPiece& p = out.pieces[it->second];
    p.face_samples.push_back(s);
    if (dec.faces[k].dim > p.dim) {
      p.dim = dec.faces[k].dim;
      p.sample = s;
    }
  }
  return out;
}

struct Universal1PS {
  /// Set when the fan has a single piece.
  std::optional<FanPiece> unique;
  std::vector<FanPiece> pieces;
  bool is_unique() const { return unique.has_value(); }
};

inline Universal1PS universal_1ps(const TorusAction& a, const Cone& cone) {
  CocharacterFan fan = cocharacter_fan(a, cone);
  Universal1PS out;
  out.pieces = fan.pieces;
  if (fan.pieces.size() == 1) out.unique = fan.pieces.front();
  return out;
}

}  // namespace nrgit
