#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nrgit/stability/admissible.hpp"

namespace nrgit {

using ParamPoint = std::pair<Rational, Rational>;

enum class SweepVerdict { Stable, StrictlySemistable, Unstable, Undecided };

inline std::string_view to_string(SweepVerdict v) {
  switch (v) {
    case SweepVerdict::Stable: return "Stable";
    case SweepVerdict::StrictlySemistable: return "StrictlySemistable";
    case SweepVerdict::Unstable: return "Unstable";
    case SweepVerdict::Undecided: return "Undecided";
  }
  return "?";
}

struct SweepResult {
  SweepVerdict verdict = SweepVerdict::Undecided;
  /// Group parameters (b, c) exhibiting the failure, when a rational one is known.
  std::optional<ParamPoint> witness;
  /// For H-stability: the support bound S' (u·x has support inside S') behind the verdict.
  std::optional<SupportPoint> support;
};

namespace detail {

inline void require_rational(const ExplicitPoint& x, const char* who) {
  if (!x.is_rational()) throw Error(ErrorCode::Validation, std::string(who) + ": point coordinates must be rational");
}

inline std::vector<BiPoly> pick(const std::vector<BiPoly>& polys, const std::vector<std::size_t>& idx) {
  std::vector<BiPoly> out;
  for (auto i : idx) out.push_back(polys[i]);
  return out;
}

}  // namespace detail

/// Û-stability: every point of the U-orbit is G_m-stable for λ. Unstable
/// happens at parameters where all minimal coordinates of some factor vanish
/// or all non-minimal coordinates vanish, so two kinds of common-zero test decide it.
inline SweepResult uhat_stable_explicit(const ExplicitPoint& x, const TorusAction& a, const GroupSpec& g, const OneParamSubgroup& lambda) {
  detail::require_rational(x, "uhat_stable_explicit");
  g.check_against(a);
  const std::vector<BiPoly> polys = orbit_point(x, g).flat();
  const XMin m = x_min(a, lambda);
  const SupportPoint ms = m.min_support();

  bool undecided = false;
  auto test = [&](const std::vector<BiPoly>& eqs) -> std::optional<SweepResult> {
    CommonZero z = common_zero_exists(eqs);
    if (z.verdict == CommonZero::Verdict::Yes) return SweepResult{SweepVerdict::Unstable, z.witness, std::nullopt};
    if (z.verdict == CommonZero::Verdict::Undecided) undecided = true;
    return std::nullopt;
  };

  for (const auto& f : m.per_factor)
    if (auto r = test(detail::pick(polys, f))) return *r;

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (!ms.contains(i)) rest.push_back(i);
  if (rest.empty()) return {SweepVerdict::Unstable, ParamPoint{0, 0}, std::nullopt};
  if (auto r = test(detail::pick(polys, rest))) return *r;

  if (undecided) return {SweepVerdict::Undecided, std::nullopt, std::nullopt};
  return {SweepVerdict::Stable, std::nullopt, std::nullopt};
}

/// H-stability with H = U ⋊ T: u·x must be T-stable for every u. Torus
/// stability only grows with the support, so it is enough to ask, for each
/// maximal unstable (or non-stable) support S' between the constant and
/// generic supports of the orbit, whether the coordinates outside S' can
/// vanish together.
inline SweepResult h_stable_explicit(const ExplicitPoint& x, const TorusAction& a, const GroupSpec& g,
                                     std::size_t limit = std::size_t{1} << 14) {
  detail::require_rational(x, "h_stable_explicit");
  g.check_against(a);
  const std::vector<BiPoly> polys = orbit_point(x, g).flat();

  std::vector<std::size_t> common, optional_idx;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].is_zero()) continue;
    if (polys[i].is_constant()) common.push_back(i);
    else optional_idx.push_back(i);
  }
  if (optional_idx.size() >= 63 || (std::size_t{1} << optional_idx.size()) > limit)
    throw Error(ErrorCode::TooLarge, "h_stable_explicit: too many nonconstant orbit coordinates");

  struct Candidate {
    SupportPoint s;
    std::vector<std::size_t> off;
    TorusStatus status;
  };
  std::vector<Candidate> cands;
  const std::size_t n = optional_idx.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> on = common, off;
    for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1 ? on : off).push_back(optional_idx[k]);
    std::sort(on.begin(), on.end());
    if (on.empty()) continue;
    SupportPoint s(on);
    bool valid = true;
    for (std::size_t f = 0; f < a.factor_count() && valid; ++f) valid = !a.in_factor(s, f).empty();
    if (!valid) continue;
    cands.push_back({s, off, torus_status(a, s)});
  }

  // Maximal candidates (under inclusion) among those satisfying pred.
  auto maximal = [&](auto pred) {
    std::vector<const Candidate*> out;
    for (const auto& c : cands) {
      if (!pred(c)) continue;
      bool dominated = std::any_of(cands.begin(), cands.end(), [&](const Candidate& d) {
        return pred(d) && d.s.size() > c.s.size() && c.s.subset_of(d.s);
      });
      if (!dominated) out.push_back(&c);
    }
    return out;
  };
  struct Search {
    std::optional<SweepResult> hit;
    bool undecided = false;
  };
  auto search = [&](auto pred, SweepVerdict v) {
    Search r;
    for (const Candidate* c : maximal(pred)) {
      CommonZero z = c->off.empty() ? CommonZero::yes(ParamPoint{0, 0}) : common_zero_exists(detail::pick(polys, c->off));
      if (z.verdict == CommonZero::Verdict::Yes) {
        r.hit = SweepResult{v, z.witness, c->s};
        return r;
      }
      if (z.verdict == CommonZero::Verdict::Undecided) r.undecided = true;
    }
    return r;
  };

  Search uns = search([](const Candidate& c) { return c.status == TorusStatus::Unstable; }, SweepVerdict::Unstable);
  if (uns.hit) return *uns.hit;
  if (uns.undecided) return {SweepVerdict::Undecided, std::nullopt, std::nullopt};
  Search nst = search([](const Candidate& c) { return c.status != TorusStatus::Stable; }, SweepVerdict::StrictlySemistable);
  if (nst.hit) return *nst.hit;
  if (nst.undecided) return {SweepVerdict::Undecided, std::nullopt, std::nullopt};
  return {SweepVerdict::Stable, std::nullopt, std::nullopt};
}

enum class StabDimension { Zero, Positive, Undecided };

inline std::string_view to_string(StabDimension d) {
  switch (d) {
    case StabDimension::Zero: return "0";
    case StabDimension::Positive: return "Positive";
    case StabDimension::Undecided: return "Undecided";
  }
  return "?";
}

/// Dimension of Stab_U(x): u·x = x projectively in each factor, written as
/// the 2×2 minors (u·x)_i x_j − (u·x)_j x_i.
inline StabDimension stab_u_dimension(const ExplicitPoint& x, const GroupSpec& g) {
  detail::require_rational(x, "stab_u_dimension");
  const ExplicitPoint ux = orbit_point(x, g);
  std::vector<BiPoly> minors;
  for (std::size_t f = 0; f < x.factor_count(); ++f) {
    const auto& p = ux.coords()[f];
    const auto& v = x.coords()[f];
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        BiPoly m = p[i] * v[j] - p[j] * v[i];
        if (!m.is_zero()) minors.push_back(std::move(m));
      }
  }
  if (g.u_params() == 0) return StabDimension::Zero;
  if (minors.empty()) return StabDimension::Positive;
  if (g.u_params() == 1) return StabDimension::Zero;
  BiPoly h = minors.front();
  for (std::size_t k = 1; k < minors.size(); ++k) h = gcd(h, minors[k]);
  // Coprime equations in two unknowns meet in finitely many points.
  return h.is_constant() ? StabDimension::Zero : StabDimension::Positive;
}

}  // namespace nrgit
