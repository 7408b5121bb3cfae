#pragma once

// Search budgets, checkable claims and the report returned by every checker.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chaoslab/system.hpp"

namespace chaoslab {

enum class Status { found, certified_bound, exhausted };

std::string to_string(Status s);
Status parse_status(std::string_view text);

/// Limits for one search. max_states bounds the distinct states a single
/// breadth-first search may visit.
struct SearchBudget {
  std::int64_t word_len_max = 32;
  std::int64_t samples = 16;
  std::int64_t max_states = 200000;
  /// Generator applications allowed when closing an orbit.
  std::int64_t orbit_budget = 200000;
};

/// Global cap from CHAOSLAB_MAX_BUDGET (default 10^8).
std::int64_t global_budget_cap();
/// Throws BudgetTooLarge when any limit exceeds the global cap.
void check_budget(const SearchBudget& budget);

using Counters = std::map<std::string, std::int64_t>;
void merge_counters(Counters& into, const Counters& from);

/// One re-checkable statement about exact data:
///   less      dist(word_a.a, word_b.b) < bound
///   at_least  dist(word_a.a, word_b.b) >= bound
///   equal     word_a.a == word_b.b
///   orbit     the orbit of a is finite with exactly `size` points
struct Claim {
  enum class Kind { less, at_least, equal, orbit };

  Kind kind;
  GroupWord word_a;
  Point a;
  GroupWord word_b;
  Point b;
  Rat bound;
  std::int64_t size = 0;
  /// Distance seen when the claim was made (less / at_least only).
  ExactDist observed;

  static Claim less(const System& sys, GroupWord wa, Point a, GroupWord wb, Point b, Rat bound);
  static Claim at_least(const System& sys, GroupWord wa, Point a, GroupWord wb, Point b,
                        Rat bound);
  static Claim orbit(Point a, std::int64_t size, std::size_t rank);
};

std::string to_string(Claim::Kind k);
Claim::Kind parse_claim_kind(std::string_view text);

/// Evaluates dist(a, b), tightening the tolerance until the enclosure lies
/// entirely on one side of `bound` (or a fixed number of rounds ran out).
ExactDist decide_dist(const System& sys, const Point& a, const Point& b, const Rat& bound);

/// Re-evaluates the claim from scratch.
bool recheck(const System& sys, const Claim& claim);

struct WitnessReport {
  std::string property;
  Status status = Status::exhausted;
  std::optional<GroupWord> witness;
  std::vector<Claim> certificate;
  /// Orbit members, candidates or the witness point, depending on the check.
  std::vector<Point> points;
  std::int64_t probes = 0;
  std::int64_t successes = 0;
  Counters budget_used;
  std::uint64_t seed = 0;
  std::string note;
};

/// True when every claim of the certificate re-checks.
bool recheck(const System& sys, const WitnessReport& report);

}  // namespace chaoslab
