#pragma once

// Orbit machinery: word enumeration, orbit balls and finite-orbit closure.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "chaoslab/report.hpp"

namespace chaoslab {

/// A single generator or its inverse on one factor.
struct Letter {
  std::size_t factor;
  std::uint32_t generator;
  std::int64_t sign;
};

/// Letters a search from x may use, ordered by factor, then generator,
/// then + before -. Product systems expose the factors from active_factors.
std::vector<Letter> letters(const System& sys, const Point& x);
GroupWord letter_word(const System& sys, const Letter& l);

struct OrbitEntry {
  GroupWord word;
  Point point;
};

/// Points act(w, x) for words of length <= word_len_max, one entry per
/// point with the first (shortest, then lexicographically first) word
/// reaching it. Systems without exact equality merge points closer than tol.
/// Throws BudgetTooLarge past `cap` points (0 means the global cap).
std::vector<OrbitEntry> orbit_ball(const System& sys, const Point& x, std::int64_t word_len_max,
                                   const Rat& tol, std::int64_t cap = 0);

/// FOUND with the orbit as `points` when closing {x} under the generators
/// takes at most `budget` generator applications, EXHAUSTED otherwise.
/// Throws ExactEqualityUnsupported for systems without exact equality.
WitnessReport is_finite_orbit(const System& sys, const Point& x, std::int64_t budget);

/// Breadth-first search over words applied simultaneously to every point of
/// `start`. Returns the first word (by length, then letter order) whose
/// images satisfy `accept`. States are deduplicated exactly.
std::optional<GroupWord> search_words(const System& sys, const std::vector<Point>& start,
                                      const SearchBudget& budget,
                                      const std::function<bool(const std::vector<Point>&)>& accept,
                                      Counters& counters);

}  // namespace chaoslab
