#pragma once

#include <utility>
#include <vector>

#include "nrgit/qpoly/rational.hpp"

namespace nrgit {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// Trailing zeros are trimmed; the zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(const Rational& constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) c_.push_back(constant);
  }

  static UPoly monomial(const Rational& coeff, std::size_t degree) {
    std::vector<Rational> c(degree + 1, Rational(0));
    c[degree] = coeff;
    return UPoly(std::move(c));
  }
  /// x - root
  static UPoly linear_root(const Rational& root) { return UPoly(std::vector<Rational>{-root, Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) {
    for (auto& q : a.c_) q = -q;
    return a;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(out));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly monic() const {
    if (is_zero()) return {};
    UPoly out = *this;
    Rational lc = leading();
    for (auto& q : out.c_) q /= lc;
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Euclidean division a = q·b + r with deg r < deg b.
inline std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lb = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational f = rem[static_cast<std::size_t>(k + db)] / lb;
    quot[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Divide out every factor (x - root); returns the multiplicity removed.
inline int strip_root(UPoly& p, const Rational& root) {
  int mult = 0;
  const UPoly lin = UPoly::linear_root(root);
  while (!p.is_zero() && p.degree() >= 1 && p(root) == 0) {
    p = divmod(p, lin).first;
    ++mult;
  }
  return mult;
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n, bool& complete) {
  // Trial division; values beyond the bound are not enumerated and `complete` is cleared.
  static const Integer kBound("1000000000000");
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  complete = true;
  if (n > kBound) {
    complete = false;
    return {};
  }
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

struct RationalRoots {
  std::vector<Rational> roots;  // distinct, ascending
  bool complete = true;         // false if candidate enumeration was cut short
};

/// Rational roots by the rational root theorem on the integer-scaled polynomial.
inline RationalRoots rational_roots(const UPoly& input) {
  RationalRoots out;
  if (input.is_zero() || input.degree() < 1) return out;
  UPoly p = input;
  if (p.coeff(0) == 0) {
    out.roots.push_back(0);
    strip_root(p, 0);
  }
  if (p.degree() >= 1) {
    Integer l = 1;
    for (const auto& q : p.coeffs()) {
      Integer d = q.get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    Integer a0 = Rational(p.coeff(0) * Rational(l)).get_num();
    Integer an = Rational(p.leading() * Rational(l)).get_num();
    bool c0 = true, c1 = true;
    auto num_divs = detail::positive_divisors(a0, c0);
    auto den_divs = detail::positive_divisors(an, c1);
    out.complete = c0 && c1;
    for (const auto& n : num_divs) {
      for (const auto& d : den_divs) {
        for (int s : {1, -1}) {
          Rational cand = make_rational(Integer(s) * n, d);
          if (p(cand) == 0) out.roots.push_back(cand);
        }
      }
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

}  // namespace nrgit
