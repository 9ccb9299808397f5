#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nrgit/qpoly/bipoly.hpp"

namespace nrgit {

namespace detail {

/// Polynomial in a main parameter with coefficients in Q[other], ascending.
using Recursive = std::vector<UPoly>;

inline void trim(Recursive& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int rdeg(const Recursive& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::InvalidArgument, "internal: inexact polynomial division");
  return q;
}

inline UPoly content(const Recursive& p) {
  UPoly g;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

inline Recursive divide_coefficients(const Recursive& p, const UPoly& d) {
  Recursive out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(exact_quotient(c, d));
  return out;
}

inline Recursive primitive_part(const Recursive& p) {
  if (p.empty()) return p;
  return divide_coefficients(p, content(p));
}

/// Pseudo-remainder of a by b (deg b >= 0, b nonzero).
inline Recursive pseudo_remainder(Recursive a, const Recursive& b) {
  const int db = rdeg(b);
  const UPoly& lb = b.back();
  while (!a.empty() && rdeg(a) >= db) {
    const int shift = rdeg(a) - db;
    UPoly la = a.back();
    for (auto& c : a) c = c * lb;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= la * b[static_cast<std::size_t>(k)];
    trim(a);
  }
  return a;
}

/// Exact quotient a / b in Q[other][main], or nullopt if b does not divide a.
inline std::optional<Recursive> divide_exact(Recursive a, const Recursive& b) {
  const int db = rdeg(b);
  if (db < 0) return std::nullopt;
  if (a.empty()) return Recursive{};
  if (rdeg(a) < db) return std::nullopt;
  Recursive q(static_cast<std::size_t>(rdeg(a) - db + 1));
  while (!a.empty() && rdeg(a) >= db) {
    const int shift = rdeg(a) - db;
    auto [lead, rem] = divmod(a.back(), b.back());
    if (!rem.is_zero()) return std::nullopt;
    q[static_cast<std::size_t>(shift)] = lead;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= lead * b[static_cast<std::size_t>(k)];
    trim(a);
  }
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

/// Fraction-free (Bareiss) determinant over Q[x].
inline UPoly polynomial_determinant(std::vector<std::vector<UPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return UPoly(Rational(1));
  bool negate = false;
  UPoly prev(Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
      m[i][k] = UPoly();
    }
    prev = m[k][k];
  }
  UPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace detail

/// Sylvester resultant eliminating `eliminate`.
///
/// The Sylvester matrix has the p-block rows first, then the q-block rows, and
/// columns indexed by ascending powers of the eliminated parameter. If either
/// argument is free of the eliminated parameter it is returned unchanged (p is
/// checked first). The result is univariate in the remaining parameter.
inline BiPoly resultant(const BiPoly& p, const BiPoly& q, Param eliminate) {
  if (p.is_zero() || q.is_zero()) return BiPoly();
  const int dp = p.degree_in(eliminate), dq = q.degree_in(eliminate);
  if (dp <= 0) return p;
  if (dq <= 0) return q;
  const auto pc = p.coefficients_in(eliminate);
  const auto qc = q.coefficients_in(eliminate);
  const std::size_t n = static_cast<std::size_t>(dp + dq);
  std::vector<std::vector<UPoly>> m(n, std::vector<UPoly>(n));
  for (std::size_t r = 0; r < static_cast<std::size_t>(dq); ++r)
    for (std::size_t k = 0; k <= static_cast<std::size_t>(dp); ++k) m[r][r + k] = pc[k];
  for (std::size_t r = 0; r < static_cast<std::size_t>(dp); ++r)
    for (std::size_t k = 0; k <= static_cast<std::size_t>(dq); ++k) m[static_cast<std::size_t>(dq) + r][r + k] = qc[k];
  return BiPoly::from_upoly(detail::polynomial_determinant(std::move(m)), other(eliminate));
}

/// Greatest common divisor in Q[b, c], normalised so that its
/// lexicographically largest term has coefficient 1. gcd(0, 0) = 0.
inline BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  using namespace detail;
  if (a.is_zero() && b.is_zero()) return BiPoly();
  const Param main = Param::C;
  Recursive ra = a.coefficients_in(main), rb = b.coefficients_in(main);
  trim(ra);
  trim(rb);
  BiPoly g;
  if (ra.empty()) {
    g = b;
  } else if (rb.empty()) {
    g = a;
  } else {
    UPoly cont = gcd(content(ra), content(rb));
    Recursive pa = primitive_part(ra), pb = primitive_part(rb);
    if (rdeg(pa) < rdeg(pb)) std::swap(pa, pb);
    while (true) {
      if (rdeg(pb) == 0) {
        pb = Recursive{UPoly(Rational(1))};
        break;
      }
      Recursive r = pseudo_remainder(pa, pb);
      if (r.empty()) break;
      pa = std::move(pb);
      pb = primitive_part(r);
    }
    for (auto& coeff : pb) coeff = coeff * cont;
    g = BiPoly::from_coefficients_in(main, pb);
  }
  Rational lead = g.terms().rbegin()->second;
  BiPoly out;
  for (const auto& [e, q] : g.terms()) out.add_term(e.first, e.second, q / lead);
  return out;
}

/// a / b when b divides a exactly in Q[b, c].
inline std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
  auto q = detail::divide_exact(a.coefficients_in(Param::C), b.coefficients_in(Param::C));
  if (!q) return std::nullopt;
  return BiPoly::from_coefficients_in(Param::C, *q);
}

struct CommonZero {
  enum class Verdict { Yes, No, Undecided };
  Verdict verdict = Verdict::Undecided;
  /// A rational common zero (b, c), when one was found.
  std::optional<std::pair<Rational, Rational>> witness;

  static CommonZero yes(std::optional<std::pair<Rational, Rational>> w = std::nullopt) { return {Verdict::Yes, std::move(w)}; }
  static CommonZero no() { return {Verdict::No, std::nullopt}; }
  static CommonZero undecided() { return {Verdict::Undecided, std::nullopt}; }
};

inline std::string_view to_string(CommonZero::Verdict v) {
  switch (v) {
    case CommonZero::Verdict::Yes: return "Yes";
    case CommonZero::Verdict::No: return "No";
    case CommonZero::Verdict::Undecided: return "Undecided";
  }
  return "?";
}

namespace detail {

inline std::pair<Rational, Rational> make_point(Param fixed, const Rational& fixed_value, const Rational& other_value) {
  return fixed == Param::B ? std::pair{fixed_value, other_value} : std::pair{other_value, fixed_value};
}

/// A rational zero of a single nonconstant polynomial, searched along small
/// integer slices in either parameter.
inline std::optional<std::pair<Rational, Rational>> find_rational_zero(const BiPoly& p) {
  for (Param fixed : {Param::B, Param::C}) {
    for (int k = 0; k <= 12; ++k) {
      Rational v = (k % 2 == 0) ? Rational(k / 2) : Rational(-(k + 1) / 2);
      UPoly slice = p.substitute(fixed, v);
      if (slice.is_zero()) return make_point(fixed, v, 0);
      auto roots = rational_roots(slice);
      if (!roots.roots.empty()) return make_point(fixed, v, roots.roots.front());
    }
  }
  return std::nullopt;
}

/// All polynomials restricted to fixed = value: common root in the other parameter?
inline std::optional<CommonZero> probe_slice(const std::vector<BiPoly>& polys, Param fixed, const Rational& value) {
  UPoly g;
  for (const auto& p : polys) g = gcd(g, p.substitute(fixed, value));
  if (g.is_zero()) return CommonZero::yes(make_point(fixed, value, 0));
  if (g.degree() < 1) return std::nullopt;
  auto roots = rational_roots(g);
  if (!roots.roots.empty()) return CommonZero::yes(make_point(fixed, value, roots.roots.front()));
  return CommonZero::yes();
}

inline UPoly derivative(const UPoly& p) {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) d.push_back(p.coeffs()[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

inline UPoly squarefree_part(const UPoly& p) { return divmod(p, gcd(p, derivative(p))).first.monic(); }

/// Inverse of a modulo m, given gcd(a, m) = 1.
inline UPoly inverse_mod(const UPoly& a, const UPoly& m) {
  UPoly r0 = m, r1 = divmod(a, m).second, s0, s1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant here.
  return divmod(s0 * UPoly(1 / r0.leading()), m).second;
}

/// Over each root t of the squarefree m, do the polynomials (coefficients in
/// the kept parameter, indexed by powers of the other) share a root once the
/// kept parameter is set to t? Euclid over Q[x]/(m), splitting m whenever a
/// coefficient is a zero divisor.
inline bool fibre_has_common_root(UPoly m, std::vector<Recursive> polys) {
  if (m.degree() < 1) return false;
  // Classify c mod m: 0 = zero, 1 = unit, 2 = split found (stored in split).
  UPoly split;
  auto classify = [&](const UPoly& c) {
    UPoly r = divmod(c, m).second;
    if (r.is_zero()) return 0;
    UPoly g = gcd(r, m);
    if (g.degree() < 1) return 1;
    split = g;
    return 2;
  };
  auto recurse = [&]() {
    UPoly other_part = divmod(m, split).first;
    return fibre_has_common_root(split, polys) || fibre_has_common_root(other_part, polys);
  };
  while (true) {
    for (auto& p : polys) {
      for (auto& c : p) c = divmod(c, m).second;
      while (!p.empty()) {
        int k = classify(p.back());
        if (k == 2) return recurse();
        if (k == 1) break;
        p.pop_back();
      }
    }
    std::erase_if(polys, [](const Recursive& p) { return p.empty(); });
    if (polys.empty()) return true;
    std::sort(polys.begin(), polys.end(), [](const Recursive& a, const Recursive& b) { return a.size() < b.size(); });
    if (polys.front().size() == 1) return false;
    if (polys.size() == 1) return true;
    // Reduce polys[1] modulo the monic form of polys[0].
    Recursive& d = polys[0];
    Recursive& n = polys[1];
    const UPoly inv = inverse_mod(d.back(), m);
    for (auto& c : d) c = divmod(c * inv, m).second;
    while (n.size() >= d.size()) {
      const UPoly f = n.back();
      const std::size_t shift = n.size() - d.size();
      for (std::size_t k = 0; k < d.size(); ++k) n[shift + k] = divmod(n[shift + k] - f * d[k], m).second;
      n.pop_back();
      while (!n.empty()) {
        int cls = classify(n.back());
        if (cls == 2) return recurse();
        if (cls == 1) break;
        n.pop_back();
      }
    }
  }
}

/// Project the common zero set onto the axis of `keep` by eliminating the
/// other parameter; then test every rational point of the projection.
/// Returns Yes/No when decided along this axis, Undecided otherwise.
inline CommonZero decide_along(const std::vector<BiPoly>& polys, Param keep) {
  const Param elim = other(keep);
  UPoly proj;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      proj = gcd(proj, resultant(polys[i], polys[j], elim).as_upoly_without(elim));
    }
  }
  if (proj.is_zero()) return CommonZero::undecided();
  if (proj.degree() < 1) return CommonZero::no();
  auto roots = rational_roots(proj);
  for (const auto& r : roots.roots) {
    if (auto hit = probe_slice(polys, keep, r)) return *hit;
    strip_root(proj, r);
  }
  if (proj.degree() < 1) return roots.complete ? CommonZero::no() : CommonZero::undecided();
  std::vector<Recursive> fibres;
  for (const auto& p : polys) fibres.push_back(p.coefficients_in(elim));
  return fibre_has_common_root(squarefree_part(proj), std::move(fibres)) ? CommonZero::yes() : CommonZero::no();
}

inline CommonZero combine_split(const CommonZero& a, const CommonZero& b) {
  if (a.verdict == CommonZero::Verdict::Yes && a.witness) return a;
  if (b.verdict == CommonZero::Verdict::Yes && b.witness) return b;
  if (a.verdict == CommonZero::Verdict::Yes) return a;
  if (b.verdict == CommonZero::Verdict::Yes) return b;
  if (a.verdict == CommonZero::Verdict::No && b.verdict == CommonZero::Verdict::No) return CommonZero::no();
  return CommonZero::undecided();
}

inline CommonZero common_zero_impl(std::vector<BiPoly> polys) {
  std::erase_if(polys, [](const BiPoly& p) { return p.is_zero(); });
  if (polys.empty()) return CommonZero::yes(std::pair{Rational(0), Rational(0)});
  for (const auto& p : polys)
    if (p.is_constant()) return CommonZero::no();
  if (polys.size() == 1) return CommonZero::yes(find_rational_zero(polys[0]));

  // Split off shared factors: V(p, q) = V(g) ∪ V(p/g, q/g).
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      BiPoly g = gcd(polys[i], polys[j]);
      if (g.is_constant()) continue;
      std::vector<BiPoly> with_factor, without_factor;
      for (std::size_t k = 0; k < polys.size(); ++k) {
        if (k == i || k == j) continue;
        with_factor.push_back(polys[k]);
        without_factor.push_back(polys[k]);
      }
      with_factor.push_back(g);
      without_factor.push_back(*divide_exact(polys[i], g));
      without_factor.push_back(*divide_exact(polys[j], g));
      return combine_split(common_zero_impl(std::move(with_factor)), common_zero_impl(std::move(without_factor)));
    }
  }

  // Pairwise coprime from here on, so every pairwise resultant is nonzero.
  CommonZero along_b = decide_along(polys, Param::B);
  if (along_b.verdict != CommonZero::Verdict::Undecided) return along_b;
  return decide_along(polys, Param::C);
}

}  // namespace detail

/// Decide whether the polynomials share a zero over the algebraic closure of Q.
///
/// Strategy: constant check, shared-factor splitting via bivariate gcd, then
/// pairwise resultants eliminating c and the gcd of those univariates in b.
/// Rational roots are back-substituted directly (giving witnesses); the
/// remaining irrational roots are handled by a gcd over Q[b]/(m) that splits m
/// on zero divisors. Undecided only if a projection degenerates.
inline CommonZero common_zero_exists(const std::vector<BiPoly>& polys) {
  if (polys.empty()) throw Error(ErrorCode::EmptyInput, "common_zero_exists: empty polynomial set");
  return detail::common_zero_impl(polys);
}

}  // namespace nrgit
