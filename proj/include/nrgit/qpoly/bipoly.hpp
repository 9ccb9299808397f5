#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nrgit/qpoly/upoly.hpp"

namespace nrgit {

/// The two unipotent group parameters.
enum class Param { B, C };

inline Param other(Param p) { return p == Param::B ? Param::C : Param::B; }
inline char param_name(Param p) { return p == Param::B ? 'b' : 'c'; }

/// Sparse polynomial in the parameters b and c over Q.
/// Keys are exponent pairs (e_b, e_c); zero coefficients are never stored.
class BiPoly {
 public:
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, Rational>;

  BiPoly() = default;
  BiPoly(const Rational& constant) { add_term(0, 0, constant); }  // NOLINT(google-explicit-constructor)
  BiPoly(int constant) : BiPoly(Rational(constant)) {}             // NOLINT(google-explicit-constructor)

  static BiPoly b() { return monomial(1, 1, 0); }
  static BiPoly c() { return monomial(1, 0, 1); }
  static BiPoly var(Param p) { return p == Param::B ? b() : c(); }
  static BiPoly monomial(const Rational& coeff, int eb, int ec) {
    BiPoly p;
    p.add_term(eb, ec, coeff);
    return p;
  }

  /// Embed a univariate polynomial in parameter `p`.
  static BiPoly from_upoly(const UPoly& u, Param p) {
    BiPoly out;
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
      int e = static_cast<int>(i);
      out.add_term(p == Param::B ? e : 0, p == Param::B ? 0 : e, u.coeffs()[i]);
    }
    return out;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0}); }
  Rational constant_term() const {
    auto it = terms_.find({0, 0});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int degree_in(Param p) const {
    int d = -1;
    for (const auto& [e, q] : terms_) d = std::max(d, p == Param::B ? e.first : e.second);
    return d;
  }
  bool uses(Param p) const { return degree_in(p) > 0; }

  void add_term(int eb, int ec, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(Exponent{eb, ec}, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational operator()(const Rational& bv, const Rational& cv) const {
    Rational acc = 0;
    for (const auto& [e, q] : terms_) {
      Rational t = q;
      for (int i = 0; i < e.first; ++i) t *= bv;
      for (int i = 0; i < e.second; ++i) t *= cv;
      acc += t;
    }
    return acc;
  }

  /// Substitute a value for `p`, leaving a polynomial in the other parameter.
  UPoly substitute(Param p, const Rational& value) const {
    std::vector<Rational> coeffs;
    for (const auto& [e, q] : terms_) {
      int ep = p == Param::B ? e.first : e.second;
      int eo = p == Param::B ? e.second : e.first;
      if (coeffs.size() <= static_cast<std::size_t>(eo)) coeffs.resize(static_cast<std::size_t>(eo) + 1, Rational(0));
      Rational t = q;
      for (int i = 0; i < ep; ++i) t *= value;
      coeffs[static_cast<std::size_t>(eo)] += t;
    }
    return UPoly(std::move(coeffs));
  }

  /// Coefficients with respect to `p`: entry k is the coefficient of p^k,
  /// a univariate polynomial in the other parameter.
  std::vector<UPoly> coefficients_in(Param p) const {
    const int d = degree_in(p);
    std::vector<std::vector<Rational>> raw(static_cast<std::size_t>(std::max(d + 1, 0)));
    for (const auto& [e, q] : terms_) {
      int ep = p == Param::B ? e.first : e.second;
      int eo = p == Param::B ? e.second : e.first;
      auto& slot = raw[static_cast<std::size_t>(ep)];
      if (slot.size() <= static_cast<std::size_t>(eo)) slot.resize(static_cast<std::size_t>(eo) + 1, Rational(0));
      slot[static_cast<std::size_t>(eo)] += q;
    }
    std::vector<UPoly> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.emplace_back(std::move(r));
    return out;
  }

  static BiPoly from_coefficients_in(Param p, const std::vector<UPoly>& coeffs) {
    BiPoly out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const auto& u = coeffs[k];
      for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
        int ep = static_cast<int>(k), eo = static_cast<int>(i);
        out.add_term(p == Param::B ? ep : eo, p == Param::B ? eo : ep, u.coeffs()[i]);
      }
    }
    return out;
  }

  /// The polynomial as a univariate one when it does not involve `p`.
  UPoly as_upoly_without(Param p) const { return substitute(p, 0); }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [e, q] : o.terms_) add_term(e.first, e.second, q);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [e, q] : o.terms_) add_term(e.first, e.second, -q);
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(const BiPoly& a) { return BiPoly() - a; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ea, qa] : a.terms_)
      for (const auto& [eb, qb] : b.terms_) out.add_term(ea.first + eb.first, ea.second + eb.second, qa * qb);
    return out;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

inline bool poly_is_zero(const BiPoly& p) { return p.is_zero(); }

/// Canonical form: terms "q*b^i*c^j" joined by "+", exponents descending
/// lexicographically in (i, j); the zero polynomial prints as "0".
inline std::string to_string(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!out.empty()) out += "+";
    out += to_string(it->second) + "*b^" + std::to_string(it->first.first) + "*c^" + std::to_string(it->first.second);
  }
  return out;
}

/// Parse a polynomial. Accepts the canonical form and the usual shorthand
/// ("b", "-c", "1 - b*c", "3/2*b^2*c"): terms separated by '+' or '-',
/// factors separated by '*', each factor a rational, b, c, b^k or c^k.
inline BiPoly parse_bipoly(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty polynomial");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "polynomial '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits at offset " + std::to_string(start));
    return s.substr(start, pos - start);
  };
  BiPoly result;
  bool first = true;
  while (pos < s.size()) {
    int term_sign = 1;
    if (!first) {
      if (s[pos] != '+' && s[pos] != '-') fail("expected '+' or '-' at offset " + std::to_string(pos));
    }
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') term_sign = -term_sign;
      ++pos;
    }
    first = false;
    Rational coeff = term_sign;
    int eb = 0, ec = 0;
    bool need_factor = true;
    while (need_factor) {
      if (pos >= s.size()) fail("unexpected end");
      char ch = s[pos];
      if (ch == 'b' || ch == 'c') {
        ++pos;
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = std::stoi(read_uint());
        }
        (ch == 'b' ? eb : ec) += e;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string num = read_uint();
        std::string den = "1";
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          den = read_uint();
        }
        coeff *= make_rational(Integer(num), Integer(den));
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      need_factor = pos < s.size() && s[pos] == '*';
      if (need_factor) ++pos;
    }
    result.add_term(eb, ec, coeff);
  }
  return result;
}

}  // namespace nrgit
