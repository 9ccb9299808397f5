#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "nrgit/qpoly.hpp"

namespace nrgit {

class TorusAction;

/// A point of X recorded by its nonzero homogeneous coordinates (global
/// indices into the concatenated factor coordinates).
class SupportPoint {
 public:
  SupportPoint() = default;
  explicit SupportPoint(std::vector<std::size_t> indices) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    if (idx_.empty()) throw Error(ErrorCode::Validation, "support point: empty support");
  }
  SupportPoint(std::initializer_list<std::size_t> indices) : SupportPoint(std::vector<std::size_t>(indices)) {}

  const std::vector<std::size_t>& indices() const { return idx_; }
  std::size_t size() const { return idx_.size(); }
  bool contains(std::size_t i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }
  bool subset_of(const SupportPoint& o) const { return std::includes(o.idx_.begin(), o.idx_.end(), idx_.begin(), idx_.end()); }

  friend bool operator==(const SupportPoint&, const SupportPoint&) = default;
  friend auto operator<=>(const SupportPoint&, const SupportPoint&) = default;

 private:
  std::vector<std::size_t> idx_;
};

inline std::string to_string(const SupportPoint& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s.indices()[i]);
  return out + "}";
}

/// Rank-r torus acting diagonally on a product of projective spaces.
///
/// Coordinates are stored per factor; the Segre coordinates of the product
/// are tuples with one coordinate per factor and weight equal to the sum.
class TorusAction {
 public:
  TorusAction() = default;

  TorusAction(std::vector<std::vector<RationalVector>> factors, RationalVector twist, InnerProduct ip)
      : twist_(std::move(twist)), ip_(std::move(ip)) {
    if (factors.empty()) throw Error(ErrorCode::EmptyInput, "torus action: no factors");
    rank_ = ip_.rank();
    if (twist_.dim() != rank_) throw Error(ErrorCode::DimensionMismatch, "torus action: twist dimension differs from rank");
    for (auto& f : factors) {
      if (f.empty()) throw Error(ErrorCode::Validation, "torus action: factor without coordinates");
      std::vector<std::size_t> block;
      for (auto& w : f) {
        if (w.dim() != rank_) throw Error(ErrorCode::DimensionMismatch, "torus action: weight dimension differs from rank");
        if (!w.is_integral()) throw Error(ErrorCode::Validation, "torus action: weights must be integral");
        block.push_back(weights_.size());
        factor_of_.push_back(partition_.size());
        weights_.push_back(std::move(w));
      }
      partition_.push_back(std::move(block));
    }
  }

  /// One projective factor, zero twist, unit inner product.
  static TorusAction single(std::vector<RationalVector> weights) {
    if (weights.empty()) throw Error(ErrorCode::EmptyInput, "torus action: no weights");
    const std::size_t r = weights[0].dim();
    return TorusAction({std::move(weights)}, RationalVector(r), InnerProduct::identity(r));
  }

  std::size_t rank() const { return rank_; }
  std::size_t factor_count() const { return partition_.size(); }
  std::size_t coordinate_count() const { return weights_.size(); }
  const std::vector<RationalVector>& weights() const { return weights_; }
  const RationalVector& weight(std::size_t i) const { return weights_[i]; }
  const std::vector<std::vector<std::size_t>>& factor_partition() const { return partition_; }
  std::size_t factor_of(std::size_t i) const { return factor_of_[i]; }
  const RationalVector& twist() const { return twist_; }
  const InnerProduct& ip() const { return ip_; }

  std::vector<std::vector<RationalVector>> factor_weights() const {
    std::vector<std::vector<RationalVector>> out;
    for (const auto& block : partition_) {
      out.emplace_back();
      for (auto i : block) out.back().push_back(weights_[i]);
    }
    return out;
  }

  TorusAction with_twist(RationalVector chi) const { return TorusAction(factor_weights(), std::move(chi), ip_); }

  std::size_t segre_count() const {
    std::size_t n = 1;
    for (const auto& b : partition_) n *= b.size();
    return n;
  }

  void validate(const SupportPoint& s) const {
    std::vector<bool> hit(partition_.size(), false);
    for (auto i : s.indices()) {
      if (i >= weights_.size()) throw Error(ErrorCode::Validation, "support point: coordinate index out of range");
      hit[factor_of_[i]] = true;
    }
    for (std::size_t f = 0; f < hit.size(); ++f)
      if (!hit[f]) throw Error(ErrorCode::Validation, "support point: no nonzero coordinate in factor " + std::to_string(f));
  }

  /// Support indices lying in factor f.
  std::vector<std::size_t> in_factor(const SupportPoint& s, std::size_t f) const {
    std::vector<std::size_t> out;
    for (auto i : s.indices())
      if (factor_of_[i] == f) out.push_back(i);
    return out;
  }

  /// Segre tuples (one coordinate index per factor) inside the support.
  std::vector<std::vector<std::size_t>> segre_tuples(const SupportPoint& s) const {
    std::vector<std::vector<std::size_t>> per;
    for (std::size_t f = 0; f < partition_.size(); ++f) per.push_back(in_factor(s, f));
    std::vector<std::vector<std::size_t>> out{{}};
    for (const auto& choices : per) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& t : out)
        for (auto c : choices) {
          next.push_back(t);
          next.back().push_back(c);
        }
      out = std::move(next);
    }
    return out;
  }

  RationalVector segre_weight(const std::vector<std::size_t>& tuple) const {
    RationalVector w(rank_);
    for (auto i : tuple) w += weights_[i];
    return w;
  }

  /// Weights of the Segre coordinates in the support, in tuple order.
  std::vector<RationalVector> segre_weights(const SupportPoint& s) const {
    std::vector<RationalVector> out;
    for (const auto& t : segre_tuples(s)) out.push_back(segre_weight(t));
    return out;
  }
  std::vector<RationalVector> segre_weights() const { return segre_weights(full_support()); }

  /// Segre weights minus the twist: the weights whose hull is tested against the origin.
  std::vector<RationalVector> twisted_weights(const SupportPoint& s) const {
    auto w = segre_weights(s);
    for (auto& v : w) v -= twist_;
    return w;
  }

  SupportPoint full_support() const {
    std::vector<std::size_t> all(weights_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return SupportPoint(std::move(all));
  }

  std::size_t support_count() const {
    std::size_t n = 1;
    for (const auto& b : partition_) n *= (std::size_t{1} << b.size()) - 1;
    return n;
  }

  /// Every valid support (nonempty in each factor), ordered by factor masks.
  std::vector<SupportPoint> all_supports(std::size_t limit = std::size_t{1} << 14) const {
    if (support_count() > limit) throw Error(ErrorCode::TooLarge, "torus action: too many supports to enumerate");
    std::vector<std::vector<std::size_t>> out{{}};
    for (const auto& block : partition_) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& partial : out) {
        for (unsigned mask = 1; mask < (1u << block.size()); ++mask) {
          auto s = partial;
          for (std::size_t k = 0; k < block.size(); ++k)
            if (mask & (1u << k)) s.push_back(block[k]);
          next.push_back(std::move(s));
        }
      }
      out = std::move(next);
    }
    std::vector<SupportPoint> res;
    res.reserve(out.size());
    for (auto& s : out) res.emplace_back(std::move(s));
    std::sort(res.begin(), res.end());
    return res;
  }

  friend bool operator==(const TorusAction& a, const TorusAction& b) {
    return a.weights_ == b.weights_ && a.partition_ == b.partition_ && a.twist_ == b.twist_ && a.ip_ == b.ip_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<RationalVector> weights_;
  std::vector<std::vector<std::size_t>> partition_;
  std::vector<std::size_t> factor_of_;
  RationalVector twist_;
  InnerProduct ip_;
};

/// Product of actions sharing rank and inner product; twists add.
inline TorusAction build_product_action(const std::vector<TorusAction>& factors) {
  if (factors.empty()) throw Error(ErrorCode::EmptyInput, "product action: no factors");
  std::vector<std::vector<RationalVector>> blocks;
  RationalVector twist(factors[0].rank());
  for (const auto& f : factors) {
    if (f.rank() != factors[0].rank()) throw Error(ErrorCode::RankMismatch, "product action: factor ranks differ");
    if (!(f.ip() == factors[0].ip())) throw Error(ErrorCode::RankMismatch, "product action: factor inner products differ");
    for (auto& b : f.factor_weights()) blocks.push_back(std::move(b));
    twist += f.twist();
  }
  return TorusAction(std::move(blocks), twist, factors[0].ip());
}

namespace detail {

inline std::vector<RationalVector> extended_block(const std::vector<RationalVector>& block,
                                                  const std::vector<std::vector<long>>& extra) {
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < block.size(); ++i) {
    std::vector<Rational> e = block[i].entries();
    for (const auto& col : extra) e.emplace_back(col[i]);
    out.emplace_back(std::move(e));
  }
  return out;
}

inline std::vector<std::vector<long>> split_by_factor(const TorusAction& a, const std::vector<long>& m, std::size_t f) {
  std::vector<long> out;
  for (auto i : a.factor_partition()[f]) out.push_back(m[i]);
  return {out};
}

/// Minimum over Segre coordinates of the summed per-coordinate values.
inline long segre_minimum(const TorusAction& a, const std::vector<long>& m) {
  long total = 0;
  for (const auto& block : a.factor_partition()) {
    long best = m[block[0]];
    for (auto i : block) best = std::min(best, m[i]);
    total += best;
  }
  return total;
}

}  // namespace detail

/// X × P¹ with the extra torus factor: coordinate i of X gets the extra weight
/// m_i, and the P¹ coordinates get 0 and N.
inline TorusAction build_external_extension(const TorusAction& a, const std::vector<long>& m, long n) {
  if (m.size() != a.coordinate_count()) throw Error(ErrorCode::LengthMismatch, "external extension: one weight per coordinate required");
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "external extension: N must be positive");
  std::vector<std::vector<RationalVector>> blocks;
  const auto fw = a.factor_weights();
  for (std::size_t f = 0; f < fw.size(); ++f) blocks.push_back(detail::extended_block(fw[f], detail::split_by_factor(a, m, f)));
  RationalVector zero(a.rank() + 1), top(a.rank() + 1);
  top[a.rank()] = n;
  blocks.push_back({zero, top});
  return TorusAction(std::move(blocks), a.twist().concat(RationalVector(1)), a.ip().extended(1));
}

/// Drop the last `axes` character coordinates together with the last `axes`
/// factors; undoes an extension.
inline TorusAction forget_extension(const TorusAction& ext, std::size_t axes) {
  if (axes >= ext.rank() || axes >= ext.factor_count()) throw Error(ErrorCode::InvalidArgument, "forget_extension: too many axes");
  const std::size_t r = ext.rank() - axes;
  auto fw = ext.factor_weights();
  fw.resize(fw.size() - axes);
  for (auto& block : fw)
    for (auto& w : block) w = w.head(r);
  Matrix g(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g[i][j] = ext.ip().gram()[i][j];
  return TorusAction(std::move(fw), ext.twist().head(r), InnerProduct(std::move(g)));
}

struct DoubleExtension {
  TorusAction action;
  RationalVector twist_lambda;
  RationalVector twist_mu;
};

/// X × P¹_λ × P¹_μ: weights (α_i, m_λ,i + N j, m_μ,i + N k) on Segre tuples,
/// with the two twists (χ, 0, N + r_λ − ε) and (χ, N + r_μ − ε, 0).
inline DoubleExtension build_double_extension(const TorusAction& a, const std::vector<long>& m_lambda, const std::vector<long>& m_mu,
                                              long n, long r_lambda, long r_mu, const Rational& eps) {
  if (m_lambda.size() != a.coordinate_count() || m_mu.size() != a.coordinate_count())
    throw Error(ErrorCode::LengthMismatch, "double extension: one weight per coordinate required");
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "double extension: N must be positive");
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "double extension: epsilon must be positive");
  if (detail::segre_minimum(a, m_lambda) != r_lambda)
    throw Error(ErrorCode::BadMinimalWeight, "double extension: r_lambda is not the minimal lambda weight");
  if (detail::segre_minimum(a, m_mu) != r_mu)
    throw Error(ErrorCode::BadMinimalWeight, "double extension: r_mu is not the minimal mu weight");
  const std::size_t r = a.rank();
  std::vector<std::vector<RationalVector>> blocks;
  const auto fw = a.factor_weights();
  for (std::size_t f = 0; f < fw.size(); ++f) {
    auto lam = detail::split_by_factor(a, m_lambda, f)[0];
    auto mu = detail::split_by_factor(a, m_mu, f)[0];
    blocks.push_back(detail::extended_block(fw[f], {lam, mu}));
  }
  RationalVector zero(r + 2), py(r + 2), pz(r + 2);
  py[r] = n;
  pz[r + 1] = n;
  blocks.push_back({zero, py});
  blocks.push_back({zero, pz});
  TorusAction act(std::move(blocks), a.twist().concat(RationalVector(2)), a.ip().extended(2));
  RationalVector tl = a.twist().concat(RationalVector{Rational(0), Rational(n + r_lambda) - eps});
  RationalVector tm = a.twist().concat(RationalVector{Rational(n + r_mu) - eps, Rational(0)});
  return {std::move(act), std::move(tl), std::move(tm)};
}

}  // namespace nrgit
