#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "chaoslab/error.hpp"

namespace chaoslab {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);

/// Parses "p/q", "p" or "-p/q". Whitespace around the value is ignored.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& value);
double to_double(const Rat& value);

/// 2^e for any integer e (negative exponents give dyadic fractions).
Rat pow2(std::int64_t e);

mpz_class floor(const Rat& value);

/// Representative of value mod 1 in [-1/2, 1/2).
Rat wrap_centered(const Rat& value);

/// Distance from value to the nearest integer, in [0, 1/2].
Rat dist_to_integer(const Rat& value);

/// Smallest m >= 0 with 2^-m <= bound (bound > 0).
std::int64_t dyadic_exponent_at_most(const Rat& bound);

/// Smallest m >= 0 with 2^-m < bound (bound > 0).
std::int64_t dyadic_exponent_below(const Rat& bound);

/// Certified enclosure [lo, hi] of sqrt(value) with hi - lo <= tol.
struct SqrtEnclosure {
  Rat lo;
  Rat hi;
};
SqrtEnclosure sqrt_enclosure(const Rat& value, const Rat& tol);

/// A distance that is either known exactly or enclosed in [lo, hi].
class ExactDist {
public:
  enum class Kind { exact, interval };

  ExactDist() = default;

  static ExactDist exact(Rat value);
  static ExactDist interval(Rat lo, Rat hi);

  Kind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ == Kind::exact; }

  /// Exact value, or the midpoint of the enclosure.
  Rat value() const;
  const Rat& lo() const noexcept { return lo_; }
  const Rat& hi() const noexcept { return hi_; }
  Rat width() const { return hi_ - lo_; }

  /// True when every value in the enclosure is < bound.
  bool certainly_less(const Rat& bound) const { return hi_ < bound; }
  /// True when every value in the enclosure is >= bound.
  bool certainly_at_least(const Rat& bound) const { return lo_ >= bound; }

  ExactDist& operator+=(const ExactDist& other);
  friend ExactDist operator+(ExactDist a, const ExactDist& b) { return a += b; }
  friend ExactDist operator*(const Rat& scale, const ExactDist& d);

  friend bool operator==(const ExactDist&, const ExactDist&) = default;

private:
  Kind kind_ = Kind::exact;
  Rat lo_;
  Rat hi_;
};

std::string to_string(const ExactDist& d);

}  // namespace chaoslab
