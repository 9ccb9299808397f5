#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrgit/stability.hpp"

namespace nrgit {

struct BetaIndex {
  RationalVector beta;
  Rational norm_sq;
  std::optional<OneParamSubgroup> lambda_beta;
  /// First support (in sweep order) whose twisted hull has beta as closest point.
  SupportPoint generating_support;

  friend bool operator==(const BetaIndex& a, const BetaIndex& b) { return a.beta == b.beta; }
};

struct StratumLabel {
  BetaIndex beta;
  bool in_Z = false;
  bool in_Y = false;
  bool in_Yss = false;
};

namespace detail {

inline void require_small(const TorusAction& a, const char* who) {
  if (a.coordinate_count() > 14)
    throw Error(ErrorCode::TooManyWeights, std::string(who) + ": more than 14 weights");
}

inline BetaIndex make_beta(const Destabilising& d, const SupportPoint& s) {
  return {d.beta, d.norm_sq, d.lambda_beta, s};
}

/// Per-factor minimum of (β, w) over the support, and the coordinates attaining it.
struct FactorMinima {
  Rational total;
  std::vector<std::size_t> argmin;
};

inline FactorMinima factor_minima(const TorusAction& a, const SupportPoint& x, const RationalVector& beta) {
  const InnerProduct form = a.ip().dual();
  FactorMinima out;
  for (std::size_t f = 0; f < a.factor_count(); ++f) {
    std::optional<Rational> best;
    std::vector<std::size_t> arg;
    for (std::size_t i : a.in_factor(x, f)) {
      Rational v = form(beta, a.weight(i));
      if (!best || v < *best) {
        best = v;
        arg = {i};
      } else if (v == *best) {
        arg.push_back(i);
      }
    }
    out.total += *best;
    out.argmin.insert(out.argmin.end(), arg.begin(), arg.end());
  }
  std::sort(out.argmin.begin(), out.argmin.end());
  return out;
}

inline Rational twisted_level(const TorusAction& a, const RationalVector& beta) { return a.ip().dual()(beta, a.twist()); }

}  // namespace detail

/// Distinct closest points over every valid support. A torus has no Weyl
/// chamber to restrict to; `chamber` keeps only the β inside a supplied cone
/// for callers that want one.
inline std::vector<BetaIndex> beta_index_set(const TorusAction& a, const std::optional<Cone>& chamber = std::nullopt) {
  detail::require_small(a, "beta_index_set");
  std::vector<BetaIndex> out;
  for (const auto& s : a.all_supports()) {
    Destabilising d = destabilising_beta(a, s);
    if (chamber && !chamber->contains(d.beta)) continue;
    if (std::none_of(out.begin(), out.end(), [&](const BetaIndex& b) { return b.beta == d.beta; }))
      out.push_back(detail::make_beta(d, s));
  }
  std::sort(out.begin(), out.end(), [](const BetaIndex& x, const BetaIndex& y) {
    if (x.norm_sq != y.norm_sq) return x.norm_sq < y.norm_sq;
    return x.beta < y.beta;
  });
  return out;
}

/// Z_β: every twisted weight of x lies on H_β.
inline bool in_Z(const TorusAction& a, const SupportPoint& x, const BetaIndex& b) {
  for (const auto& w : a.twisted_weights(x))
    if (a.ip().dual()(b.beta, w) != b.norm_sq) return false;
  return true;
}

/// Y_β: every twisted weight of x lies in H_β⁺ and one lies on H_β.
inline bool in_Y(const TorusAction& a, const SupportPoint& x, const BetaIndex& b) {
  a.validate(x);
  return detail::factor_minima(a, x, b.beta).total - detail::twisted_level(a, b.beta) == b.norm_sq;
}

/// Limit under λ_β: keep, in each factor, the coordinates of least β-pairing.
inline SupportPoint p_beta(const TorusAction& a, const SupportPoint& x, const BetaIndex& b) {
  if (!in_Y(a, x, b)) throw Error(ErrorCode::NotInY, "p_beta: support " + to_string(x) + " is not in Y_beta");
  return SupportPoint(detail::factor_minima(a, x, b.beta).argmin);
}

/// Semistability on Z_β for the twist shifted by β: β lies in the hull of the weights.
inline bool z_ss_check(const TorusAction& a, const SupportPoint& x, const BetaIndex& b) {
  if (!in_Z(a, x, b)) throw Error(ErrorCode::NotInZ, "z_ss_check: support " + to_string(x) + " is not in Z_beta");
  return hull_membership(PointSet(a.twisted_weights(x)), b.beta) != HullPosition::Outside;
}

/// Labels of x against a given β; in_Yss means p_β(x) ∈ Z_β^ss.
inline StratumLabel label_against(const TorusAction& a, const SupportPoint& x, const BetaIndex& b) {
  StratumLabel l{b, in_Z(a, x, b), in_Y(a, x, b), false};
  if (l.in_Y) l.in_Yss = z_ss_check(a, p_beta(a, x, b), b);
  return l;
}

inline StratumLabel stratum_of(const TorusAction& a, const SupportPoint& x) {
  Destabilising d = destabilising_beta(a, x);
  return label_against(a, x, detail::make_beta(d, x));
}

struct StratificationViolation {
  std::string kind;
  SupportPoint support;
  std::string detail;
};

struct StratificationReport {
  std::vector<BetaIndex> betas;
  std::vector<SupportPoint> supports;
  /// Index into betas for each support.
  std::vector<std::size_t> stratum;
  std::vector<StratificationViolation> violations;

  bool ok() const { return violations.empty(); }
  std::vector<SupportPoint> members(std::size_t k) const {
    std::vector<SupportPoint> out;
    for (std::size_t i = 0; i < supports.size(); ++i)
      if (stratum[i] == k) out.push_back(supports[i]);
    return out;
  }
};

/// Exhaustive check over valid supports: the S_β cover disjointly, support
/// shrinking never lowers ‖β‖², and Y_β^ss = p_β⁻¹(Z_β^ss).
inline StratificationReport verify_stratification(const TorusAction& a) {
  StratificationReport rep;
  rep.betas = beta_index_set(a);
  rep.supports = a.all_supports();
  auto violate = [&](std::string kind, const SupportPoint& s, std::string why) {
    rep.violations.push_back({std::move(kind), s, std::move(why)});
  };
  auto index_of = [&](const RationalVector& beta) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < rep.betas.size(); ++k)
      if (rep.betas[k].beta == beta) return k;
    return std::nullopt;
  };

  for (const auto& s : rep.supports) {
    Destabilising d = destabilising_beta(a, s);
    auto own = index_of(d.beta);
    if (!own) {
      violate("cover", s, "closest point " + to_string(d.beta) + " missing from the index set");
      rep.stratum.push_back(rep.betas.size());
      continue;
    }
    rep.stratum.push_back(*own);
    if (d.beta.is_zero() != (torus_status(a, s) != TorusStatus::Unstable))
      violate("open-stratum", s, "beta = 0 disagrees with torus semistability");

    std::size_t hits = 0;
    for (std::size_t k = 0; k < rep.betas.size(); ++k) {
      const BetaIndex& b = rep.betas[k];
      StratumLabel l = label_against(a, s, b);
      if (l.in_Z && !l.in_Y) violate("labels", s, "in Z but not in Y for beta " + to_string(b.beta));
      if (!l.in_Y) continue;
      SupportPoint p = p_beta(a, s, b);
      if (!in_Z(a, p, b) || p_beta(a, p, b) != p) violate("retraction", s, "p_beta not idempotent onto Z for beta " + to_string(b.beta));
      if (l.in_Yss) ++hits;
      if (l.in_Yss != (k == *own))
        violate("yss", s, "p_beta preimage test disagrees with closest point for beta " + to_string(b.beta));
    }
    if (hits != 1) violate("cover", s, "lies in " + std::to_string(hits) + " strata");
  }

  for (std::size_t i = 0; i < rep.supports.size(); ++i) {
    if (rep.stratum[i] >= rep.betas.size()) continue;
    for (std::size_t j = 0; j < rep.supports.size(); ++j) {
      if (i == j || !rep.supports[j].subset_of(rep.supports[i]) || rep.stratum[j] >= rep.betas.size()) continue;
      if (rep.betas[rep.stratum[j]].norm_sq < rep.betas[rep.stratum[i]].norm_sq)
        violate("closure", rep.supports[j], "sub-support of " + to_string(rep.supports[i]) + " has smaller norm");
    }
  }
  return rep;
}

}  // namespace nrgit
