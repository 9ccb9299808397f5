#pragma once

#include <optional>
#include <vector>

#include "nrgit/polytope/lp.hpp"

namespace nrgit {

struct Halfspace {
  RationalVector normal;
  bool strict = true;

  bool contains(const RationalVector& v) const {
    Rational s = dot(normal, v);
    return strict ? s > 0 : s >= 0;
  }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Polyhedral cone {v : <n, v> > 0 (strict) or >= 0}. No halfspaces means the whole space.
class Cone {
 public:
  Cone() = default;
  Cone(std::size_t dim, std::vector<Halfspace> halfspaces) : dim_(dim), halfspaces_(std::move(halfspaces)) {
    for (const auto& h : halfspaces_)
      if (h.normal.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "cone: halfspace normal dimension");
  }

  static Cone full(std::size_t dim) { return Cone(dim, {}); }

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  bool is_full_space() const { return halfspaces_.empty(); }

  bool contains(const RationalVector& v) const {
    return std::all_of(halfspaces_.begin(), halfspaces_.end(), [&](const Halfspace& h) { return h.contains(v); });
  }

  /// A nonzero integral vector in the cone, if any. By homogeneity strict
  /// inequalities can be scaled to <n, v> >= 1.
  std::optional<RationalVector> interior_point() const {
    if (halfspaces_.empty()) {
      return dim_ == 0 ? std::nullopt : std::optional<RationalVector>(RationalVector::unit(dim_, 0));
    }
    auto try_with = [&](const std::optional<RationalVector>& extra) -> std::optional<RationalVector> {
      // v = u - w with u, w >= 0; one slack per inequality: <n, v> - s = rhs.
      std::vector<Halfspace> hs = halfspaces_;
      if (extra) hs.push_back({*extra, true});
      const std::size_t k = hs.size(), n = 2 * dim_ + k;
      Matrix a(k, std::vector<Rational>(n, Rational(0)));
      std::vector<Rational> b(k, Rational(0));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
          a[i][j] = hs[i].normal[j];
          a[i][dim_ + j] = -hs[i].normal[j];
        }
        a[i][2 * dim_ + i] = -1;
        b[i] = hs[i].strict ? 1 : 0;
      }
      auto res = solve_lp(a, b, std::vector<Rational>(n, Rational(0)));
      if (!res.feasible()) return std::nullopt;
      RationalVector v(dim_);
      for (std::size_t j = 0; j < dim_; ++j) v[j] = res.x[j] - res.x[dim_ + j];
      return v;
    };
    auto v = try_with(std::nullopt);
    if (!v) return std::nullopt;
    if (v->is_zero()) {
      // Only non-strict constraints were active; look for a nonzero point along some axis direction.
      v.reset();
      for (std::size_t j = 0; j < dim_ && !v; ++j)
        for (int s : {1, -1}) {
          RationalVector e = RationalVector::unit(dim_, j);
          if (s < 0) e = -e;
          if ((v = try_with(e))) break;
        }
      if (!v) return std::nullopt;
    }
    return primitive_integral(*v);
  }

  bool is_empty() const { return !interior_point().has_value(); }

 private:
  std::size_t dim_ = 0;
  std::vector<Halfspace> halfspaces_;
};

}  // namespace nrgit
