#pragma once

// Countable products of metric spaces with the weighted metric
// d(x, y) = sum_{i >= 1} 2^-i * d_i(x_i, y_i) / (1 + d_i(x_i, y_i)).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaoslab/rational.hpp"

namespace chaoslab {

/// Factor count of a countably infinite product.
inline constexpr std::size_t kCountable = std::numeric_limits<std::size_t>::max();

/// d / (1 + d): a bounded metric with the same topology. Throws NegativeDistance.
Rat tilde(const Rat& d);
ExactDist tilde(const ExactDist& d);

/// Inverse of tilde on [0, 1): the base distance whose bounded value is b.
Rat tilde_inverse(const Rat& b);

/// 2^-m, an upper bound on sum_{i > m} 2^-i * tilde(d_i).
Rat truncation_bound(std::int64_t m);

/// Width budget handed to factor i (1-based) when the product is evaluated
/// with tolerance tol.
Rat factor_tolerance(const Rat& tol, std::size_t factor);

/// A point of a product space: explicit coordinates on a finite support,
/// every other coordinate is the factor's designated default point.
/// Factor indices are 1-based.
template <class P>
class ProductPoint {
public:
  explicit ProductPoint(std::size_t factor_count = kCountable) : count_(factor_count) {}

  std::size_t factor_count() const noexcept { return count_; }
  const std::vector<std::size_t>& support() const noexcept { return index_; }
  const std::vector<P>& values() const noexcept { return value_; }
  bool empty() const noexcept { return index_.empty(); }

  const P* find(std::size_t factor) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), factor);
    if (it == index_.end() || *it != factor) return nullptr;
    return &value_[static_cast<std::size_t>(it - index_.begin())];
  }

  /// Copy with coordinate `factor` set to `value`.
  ProductPoint with(std::size_t factor, P value) const {
    check_index(factor);
    ProductPoint out = *this;
    auto it = std::lower_bound(out.index_.begin(), out.index_.end(), factor);
    auto pos = it - out.index_.begin();
    if (it != out.index_.end() && *it == factor) {
      out.value_[static_cast<std::size_t>(pos)] = std::move(value);
    } else {
      out.index_.insert(it, factor);
      out.value_.insert(out.value_.begin() + pos, std::move(value));
    }
    return out;
  }

  /// Copy with coordinate `factor` reset to the default point.
  ProductPoint without(std::size_t factor) const {
    ProductPoint out = *this;
    auto it = std::lower_bound(out.index_.begin(), out.index_.end(), factor);
    if (it != out.index_.end() && *it == factor) {
      auto pos = it - out.index_.begin();
      out.index_.erase(it);
      out.value_.erase(out.value_.begin() + pos);
    }
    return out;
  }

  friend bool operator==(const ProductPoint& a, const ProductPoint& b) {
    return a.count_ == b.count_ && a.index_ == b.index_ && a.value_ == b.value_;
  }

private:
  void check_index(std::size_t factor) const {
    if (factor == 0 || (count_ != kCountable && factor > count_))
      throw Error(ErrorCode::factor_mismatch,
                  "factor index " + std::to_string(factor) + " outside the product");
  }

  std::size_t count_;
  std::vector<std::size_t> index_;
  std::vector<P> value_;
};

/// Union of the supports of x and y, ascending.
template <class P>
std::vector<std::size_t> joint_support(const ProductPoint<P>& x, const ProductPoint<P>& y) {
  std::vector<std::size_t> out;
  std::set_union(x.support().begin(), x.support().end(), y.support().begin(), y.support().end(),
                 std::back_inserter(out));
  return out;
}

/// Weighted product distance. `factor_dist(i, a, b, tol_i)` evaluates the
/// metric of factor i, `default_of(i)` returns its default point and
/// `bounded_of(i)` tells whether that metric is already bounded by 1, in
/// which case it enters unchanged instead of through tilde. Beyond the joint
/// support both points sit on the defaults, so the tail is exactly 0 and the
/// result is exact unless a factor returns an enclosure.
template <class P, class FactorDist, class DefaultOf, class BoundedOf>
ExactDist product_dist(const ProductPoint<P>& x, const ProductPoint<P>& y, const Rat& tol,
                       FactorDist&& factor_dist, DefaultOf&& default_of, BoundedOf&& bounded_of) {
  if (x.factor_count() != y.factor_count())
    throw Error(ErrorCode::factor_mismatch, "points belong to products of different length");
  if (sgn(tol) <= 0) throw Error(ErrorCode::negative_tolerance, "tolerance must be positive");
  ExactDist total = ExactDist::exact(Rat(0));
  for (std::size_t i : joint_support(x, y)) {
    const P* a = x.find(i);
    const P* b = y.find(i);
    std::optional<P> fallback_a, fallback_b;
    if (!a) a = &fallback_a.emplace(default_of(i));
    if (!b) b = &fallback_b.emplace(default_of(i));
    ExactDist d = factor_dist(i, *a, *b, factor_tolerance(tol, i));
    total += pow2(-static_cast<std::int64_t>(i)) * (bounded_of(i) ? d : tilde(d));
  }
  return total;
}

/// Same with every factor metric passed through tilde.
template <class P, class FactorDist, class DefaultOf>
ExactDist product_dist(const ProductPoint<P>& x, const ProductPoint<P>& y, const Rat& tol,
                       FactorDist&& factor_dist, DefaultOf&& default_of) {
  return product_dist(x, y, tol, std::forward<FactorDist>(factor_dist),
                      std::forward<DefaultOf>(default_of), [](std::size_t) { return false; });
}

}  // namespace chaoslab
