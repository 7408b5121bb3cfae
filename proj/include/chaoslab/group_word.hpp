#pragma once

// Elements of (countable) direct products of finitely generated groups,
// written as one reduced word per factor on a finite support.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaoslab/metric_product.hpp"

namespace chaoslab {

struct Syllable {
  std::uint32_t generator = 0;
  std::int64_t power = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Reduced word in a free group: adjacent syllables use different
/// generators and no power is zero. A cyclic factor uses generator 0 only.
class FreeWord {
public:
  FreeWord() = default;
  static FreeWord power(std::uint32_t generator, std::int64_t exponent);

  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  bool is_identity() const noexcept { return syllables_.empty(); }
  /// Number of letters: sum of |power|.
  std::int64_t length() const;

  FreeWord inverse() const;
  friend FreeWord operator*(const FreeWord& u, const FreeWord& v);

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

private:
  void push(Syllable s);
  std::vector<Syllable> syllables_;
};

/// Element of a product of `rank` groups (kCountable for countably many).
/// Factors are 1-based; absent factors carry the identity.
class GroupWord {
public:
  explicit GroupWord(std::size_t rank = 1) : rank_(rank) {}

  static GroupWord identity(std::size_t rank = 1) { return GroupWord(rank); }
  /// Word with a cyclic exponent per factor, e.g. {{1, 3}, {2, -1}}.
  static GroupWord cyclic(std::size_t rank, std::initializer_list<std::pair<std::size_t, std::int64_t>> exps);
  static GroupWord single(std::size_t rank, std::size_t factor, FreeWord word);

  std::size_t rank() const noexcept { return rank_; }
  const std::map<std::size_t, FreeWord>& factors() const noexcept { return factors_; }
  bool is_identity() const noexcept { return factors_.empty(); }
  /// Word on `factor`, identity when absent.
  FreeWord factor(std::size_t factor) const;
  std::int64_t length() const;

  GroupWord with_factor(std::size_t factor, FreeWord word) const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

private:
  std::size_t rank_;
  std::map<std::size_t, FreeWord> factors_;
};

/// Componentwise product u * v (apply v first). Throws SignatureMismatch.
GroupWord compose(const GroupWord& u, const GroupWord& v);
GroupWord inverse(const GroupWord& u);

/// g2 * g1^-1: carries the point g1.x to g2.x, so two visits of one orbit
/// to U and V give a word moving part of U into V.
GroupWord birkhoff_witness(const GroupWord& g1, const GroupWord& g2);

/// Text form `{1:+3, 2:-1}`. Free words with several generators are written
/// as dot-separated syllables `g0^2.g1^-1`.
std::string to_string(const FreeWord& w);
std::string to_string(const GroupWord& w);
GroupWord parse_group_word(std::string_view text, std::size_t rank);

}  // namespace chaoslab
