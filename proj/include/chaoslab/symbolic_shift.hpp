#pragma once

// Exact points of the full shift space over the alphabet {1..N}, indexed by
// all of Z, together with the shift map, the weighted metric and the
// periodic / dense-orbit constructions used to show the shift is chaotic.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaoslab/rational.hpp"

namespace chaoslab {

using Symbol = int;
using Word = std::vector<Symbol>;

/// A bi-infinite sequence over {1..N}.
///
/// Two representations exist:
///  - eventually periodic: `left_word` repeated towards -inf, a finite
///    `center_word` starting at `offset`, then `right_word` repeated towards
///    +inf. Values are always in canonical form (primitive tails, maximal
///    absorption of the center into the tails, a unique offset), so
///    structural equality is sequence equality.
///  - dense tail: constant 1 on the left and, from index -shift onwards, the
///    concatenation of all words over {1..N} in length-lexicographic order.
///    This point has a dense orbit and is not eventually periodic.
class BiSeq {
public:
  /// Builds and canonicalizes an eventually periodic sequence.
  /// Throws InvalidArgument on empty tails, N < 2 or symbols out of range.
  static BiSeq periodic_tails(int alphabet_size, Word left, Word center, std::int64_t offset,
                              Word right);
  static BiSeq constant(int alphabet_size, Symbol s);
  /// Purely periodic sequence with `word` occupying indices [start, start + |word|).
  static BiSeq periodic(int alphabet_size, const Word& word, std::int64_t start = 0);
  static BiSeq dense_tail(int alphabet_size, std::int64_t shift = 0);

  int alphabet_size() const noexcept { return n_; }
  bool eventually_periodic() const noexcept { return !dense_; }

  const Word& left_word() const noexcept { return left_; }
  const Word& center_word() const noexcept { return center_; }
  const Word& right_word() const noexcept { return right_; }
  std::int64_t offset() const noexcept { return offset_; }
  /// Shift applied to the dense-tail sequence (0 for dense_orbit_seed).
  std::int64_t dense_shift() const noexcept { return dense_shift_; }

  Symbol at(std::int64_t i) const;

  friend bool operator==(const BiSeq&, const BiSeq&) = default;

private:
  BiSeq() = default;
  void canonicalize();

  int n_ = 2;
  bool dense_ = false;
  Word left_;
  Word center_;
  Word right_;
  std::int64_t offset_ = 0;
  std::int64_t dense_shift_ = 0;
};

Symbol symbol_at(const BiSeq& s, std::int64_t i);

/// k-fold shift: result.at(i) == s.at(i + k).
BiSeq shift(const BiSeq& s, std::int64_t k);

/// The shift-space metric sum_i 2^-|i| d_i/(1 + d_i) with the discrete
/// symbol metric, so every differing index contributes 2^-|i| / 2.
/// Exact for eventually periodic pairs; otherwise an enclosure of width <= tol.
ExactDist rho(const BiSeq& s, const BiSeq& t, const Rat& tol);

/// Truncated sum over |i| <= radius with exact dyadic arithmetic. Used as the
/// lower end of the enclosure and by tests as an independent check.
Rat rho_window(const BiSeq& s, const BiSeq& t, std::int64_t radius);

/// Smallest m >= 0 with 2^-m < eps.
std::int64_t periodic_window_radius(const Rat& eps);

/// Periodic point whose block on [-m, m] copies s, repeated with period
/// 2m+1, where m = periodic_window_radius(eps). rho(s, result) <= 2^-m < eps.
BiSeq periodic_point_near(const BiSeq& s, const Rat& eps);

BiSeq dense_orbit_seed(int alphabet_size);

/// Index at which `word` starts as its own entry in the dense-tail
/// concatenation, or nullopt when that index does not fit in 63 bits.
std::optional<std::int64_t> dense_word_position(int alphabet_size, const Word& word);

/// Encodes s as a point of the (2N-1)-ary Cantor set using the first
/// `digits` digits. Z is folded onto 1, 2, 3, ... in the order 0, 1, -1, 2, -2, ...
/// and symbol k becomes the even digit 2(k - 1).
Rat cantor_encode(const BiSeq& s, int digits);

/// Index of Z read by the d-th Cantor digit (d >= 1).
std::int64_t cantor_fold_index(int digit);

/// Closed intervals kept after `stage` steps of the M-ary Cantor construction
/// (M odd, >= 3): each interval is cut into M parts and the parts with even
/// 1-based position are removed.
std::vector<std::pair<Rat, Rat>> cantor_stage_intervals(int arity, int stage);

/// Text form `N | left | center @ offset | right`, words comma separated.
/// The dense-tail sequence is written `N | 1 | @ o | *`.
std::string to_string(const BiSeq& s);
BiSeq parse_biseq(std::string_view text);

}  // namespace chaoslab
