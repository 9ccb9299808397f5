#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nrgit/error.hpp"

namespace nrgit {

/// Arbitrary-precision integer and rational scalars. mpq_class values are kept
/// in canonical form (reduced, positive denominator) by every helper below.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Canonical text form: "num/den", or "num" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return ch == ' '; }), s.end());
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  auto valid_int = [](std::string_view part) {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                       [](unsigned char ch) { return ch >= '0' && ch <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  return make_rational(Integer(num), Integer(den));
}

/// Exact point of a character or cocharacter space.
class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::size_t dim) : entries_(dim, Rational(0)) {}
  explicit RationalVector(std::vector<Rational> entries) : entries_(std::move(entries)) { canonicalize_all(); }
  RationalVector(std::initializer_list<Rational> entries) : entries_(entries) { canonicalize_all(); }

  static RationalVector from_ints(std::initializer_list<long> values) {
    RationalVector v;
    for (long x : values) v.entries_.emplace_back(x);
    return v;
  }

  void canonicalize_all() {
    for (auto& e : entries_) e.canonicalize();
  }

  static RationalVector unit(std::size_t dim, std::size_t axis) {
    RationalVector v(dim);
    v[axis] = 1;
    return v;
  }

  std::size_t dim() const { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  Rational& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Rational>& entries() const { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
  }

  bool is_integral() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return is_integer(q); });
  }

  RationalVector& operator+=(const RationalVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  RationalVector& operator-=(const RationalVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  RationalVector& operator*=(const Rational& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
  friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
  friend RationalVector operator-(RationalVector a) {
    for (auto& e : a.entries_) e = -e;
    return a;
  }
  friend RationalVector operator*(const Rational& s, RationalVector a) { return a *= s; }
  friend RationalVector operator*(RationalVector a, const Rational& s) { return a *= s; }

  friend bool operator==(const RationalVector& a, const RationalVector& b) {
    return a.entries_ == b.entries_;
  }

  /// Lexicographic order; used to sort and deduplicate point sets.
  friend bool operator<(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                        b.entries_.end());
  }

  /// Append the entries of `tail`.
  RationalVector concat(const RationalVector& tail) const {
    RationalVector out = *this;
    out.entries_.insert(out.entries_.end(), tail.entries_.begin(), tail.entries_.end());
    return out;
  }

  RationalVector head(std::size_t n) const {
    return RationalVector(std::vector<Rational>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

 private:
  void check_dim(const RationalVector& o) const {
    if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
  }

  std::vector<Rational> entries_;
};

/// Standard coordinate pairing; this is the pairing between cocharacters and characters.
inline Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "dot: dimensions differ");
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline std::string to_string(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RationalVector& v) { return os << to_string(v); }

/// Parse "q1,q2,..." into a vector.
inline RationalVector parse_rational_vector(std::string_view text) {
  std::vector<Rational> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    entries.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return RationalVector(std::move(entries));
}

inline Integer lcm_of_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) {
    Integer d = q.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

/// Smallest positive multiple of `v` with integer, coprime entries. Zero stays zero.
inline RationalVector primitive_integral(const RationalVector& v) {
  if (v.is_zero()) return v;
  Integer l = lcm_of_denominators(v);
  Integer g = 0;
  std::vector<Integer> ints;
  for (const auto& q : v) {
    Integer n = q.get_num() * (l / q.get_den());
    ints.push_back(n);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  RationalVector out(v.dim());
  for (std::size_t i = 0; i < ints.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

}  // namespace nrgit
