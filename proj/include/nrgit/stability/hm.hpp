#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "nrgit/action.hpp"
#include "nrgit/polytope.hpp"

namespace nrgit {

/// Integral cocharacter, not all zero.
class OneParamSubgroup {
 public:
  OneParamSubgroup() = default;
  explicit OneParamSubgroup(RationalVector cochar) : v_(std::move(cochar)) {
    if (!v_.is_integral()) throw Error(ErrorCode::Validation, "1PS: entries must be integers");
    if (v_.is_zero()) throw Error(ErrorCode::Validation, "1PS: zero cocharacter");
  }
  static OneParamSubgroup from_ints(std::initializer_list<long> v) { return OneParamSubgroup(RationalVector::from_ints(v)); }
  /// Smallest positive integral multiple of a nonzero rational direction.
  static OneParamSubgroup primitive_along(const RationalVector& dir) { return OneParamSubgroup(primitive_integral(dir)); }

  const RationalVector& cochar() const { return v_; }
  std::size_t rank() const { return v_.dim(); }
  bool is_primitive() const { return primitive_integral(v_) == v_; }
  OneParamSubgroup scaled(long n) const {
    if (n <= 0) throw Error(ErrorCode::InvalidArgument, "1PS: scale must be positive");
    return OneParamSubgroup(v_ * Rational(n));
  }
  friend bool operator==(const OneParamSubgroup&, const OneParamSubgroup&) = default;

 private:
  RationalVector v_;
};

/// M = mu / sqrt(norm_sq), kept without square roots.
struct HMValue {
  Rational mu;
  Rational norm_sq;

  friend std::strong_ordering operator<=>(const HMValue& a, const HMValue& b) {
    const int sa = sign(a.mu), sb = sign(b.mu);
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same sign: compare mu^2 / norm_sq, reversed for negatives.
    Rational lhs = a.mu * a.mu * b.norm_sq, rhs = b.mu * b.mu * a.norm_sq;
    const int c = cmp(lhs, rhs) * sa;
    return c == 0 ? std::strong_ordering::equal : (c < 0 ? std::strong_ordering::less : std::strong_ordering::greater);
  }
  friend bool operator==(const HMValue& a, const HMValue& b) { return (a <=> b) == 0; }
};

/// μ(x, ρ) = max over nonzero Segre coordinates of −<ρ, α − χ>.
inline Rational hm_mu(const TorusAction& a, const SupportPoint& x, const OneParamSubgroup& rho) {
  a.validate(x);
  if (rho.rank() != a.rank()) throw Error(ErrorCode::DimensionMismatch, "hm_mu: 1PS rank differs from action rank");
  std::optional<Rational> best;
  for (const auto& w : a.twisted_weights(x)) {
    Rational v = -dot(rho.cochar(), w);
    if (!best || v > *best) best = v;
  }
  return *best;
}

inline HMValue hm_M(const TorusAction& a, const SupportPoint& x, const OneParamSubgroup& rho) {
  return {hm_mu(a, x, rho), a.ip().norm_sq(rho.cochar())};
}

enum class TorusStatus { Stable, StrictlySemistable, Unstable };

inline std::string_view to_string(TorusStatus s) {
  switch (s) {
    case TorusStatus::Stable: return "Stable";
    case TorusStatus::StrictlySemistable: return "StrictlySemistable";
    case TorusStatus::Unstable: return "Unstable";
  }
  return "?";
}

inline PointSet twisted_point_set(const TorusAction& a, const SupportPoint& x) {
  a.validate(x);
  return PointSet(a.twisted_weights(x));
}

/// Origin against the hull of the twisted support weights.
inline TorusStatus torus_status(const TorusAction& a, const SupportPoint& x, InteriorMode mode = InteriorMode::Ambient) {
  switch (hull_membership(twisted_point_set(a, x), RationalVector(a.rank()), mode)) {
    case HullPosition::Interior: return TorusStatus::Stable;
    case HullPosition::Boundary: return TorusStatus::StrictlySemistable;
    case HullPosition::Outside: return TorusStatus::Unstable;
  }
  return TorusStatus::Unstable;
}

struct Destabilising {
  /// Closest point to the origin of the twisted hull, in character space.
  RationalVector beta;
  /// The cocharacter dual to beta under the inner product, made primitive;
  /// empty when beta = 0.
  std::optional<OneParamSubgroup> lambda_beta;
  /// ‖beta‖² for the induced form on characters.
  Rational norm_sq;
};

/// λ_β: primitive integral cocharacter along G⁻¹β, which pairs with weights
/// as β does under the induced form.
inline std::optional<OneParamSubgroup> lambda_of_beta(const TorusAction& a, const RationalVector& beta) {
  if (beta.is_zero()) return std::nullopt;
  return OneParamSubgroup::primitive_along(a.ip().dual().apply(beta));
}

inline Destabilising destabilising_beta(const TorusAction& a, const SupportPoint& x, bool require_unstable = false) {
  const InnerProduct form = a.ip().dual();
  RationalVector beta = min_norm_point(twisted_point_set(a, x), form);
  if (require_unstable && beta.is_zero()) throw Error(ErrorCode::ZeroBeta, "destabilising_beta: point is semistable");
  return {beta, lambda_of_beta(a, beta), form.norm_sq(beta)};
}

/// Candidate inner facet normals for hulls of the given points: ±e_i, and in
/// the plane the perpendiculars, differences and points themselves.
inline std::vector<OneParamSubgroup> facet_normal_candidates(const std::vector<RationalVector>& pts) {
  const std::size_t r = pts.empty() ? 0 : pts[0].dim();
  std::vector<RationalVector> dirs;
  for (std::size_t i = 0; i < r; ++i) {
    dirs.push_back(RationalVector::unit(r, i));
    dirs.push_back(-RationalVector::unit(r, i));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    dirs.push_back(pts[i]);
    dirs.push_back(-pts[i]);
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      RationalVector d = pts[j] - pts[i];
      dirs.push_back(d);
      dirs.push_back(-d);
      if (r == 2) {
        RationalVector perp{-d[1], d[0]};
        dirs.push_back(perp);
        dirs.push_back(-perp);
      }
    }
  }
  std::vector<OneParamSubgroup> out;
  std::vector<RationalVector> seen;
  for (const auto& d : dirs) {
    if (d.is_zero()) continue;
    RationalVector p = primitive_integral(d);
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    out.emplace_back(p);
  }
  return out;
}

}  // namespace nrgit
