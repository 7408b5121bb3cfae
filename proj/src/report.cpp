#include "chaoslab/report.hpp"

#include <cstdlib>

#include "chaoslab/group_action.hpp"
#include "chaoslab/text.hpp"

namespace chaoslab {

std::string to_string(Status s) {
  switch (s) {
    case Status::found: return "FOUND";
    case Status::certified_bound: return "CERTIFIED_BOUND";
    case Status::exhausted: return "EXHAUSTED";
  }
  return "EXHAUSTED";
}

Status parse_status(std::string_view text) {
  text = trim(text);
  if (text == "FOUND") return Status::found;
  if (text == "CERTIFIED_BOUND") return Status::certified_bound;
  if (text == "EXHAUSTED") return Status::exhausted;
  throw Error(ErrorCode::parse, "unknown status '" + std::string(text) + "'");
}

std::int64_t global_budget_cap() {
  if (const char* env = std::getenv("CHAOSLAB_MAX_BUDGET")) {
    try {
      std::int64_t v = parse_int(env);
      if (v > 0) return v;
    } catch (const Error&) {
    }
    throw Error(ErrorCode::invalid_argument, "CHAOSLAB_MAX_BUDGET must be a positive integer");
  }
  return 100000000;
}

void check_budget(const SearchBudget& b) {
  const std::int64_t cap = global_budget_cap();
  for (std::int64_t v : {b.word_len_max, b.samples, b.max_states, b.orbit_budget}) {
    if (v < 0) throw Error(ErrorCode::invalid_argument, "budgets must be non-negative");
    if (v > cap)
      throw Error(ErrorCode::budget_too_large,
                  "budget " + std::to_string(v) + " exceeds the cap " + std::to_string(cap));
  }
}

void merge_counters(Counters& into, const Counters& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

ExactDist decide_dist(const System& sys, const Point& a, const Point& b, const Rat& bound) {
  Rat tol = sgn(bound) > 0 ? Rat(bound / 16) : pow2(-16);
  ExactDist d;
  for (int round = 0; round < 24; ++round) {
    d = sys.dist(a, b, tol);
    if (d.certainly_less(bound) || d.certainly_at_least(bound)) break;
    tol /= 16;
  }
  return d;
}

Claim Claim::less(const System& sys, GroupWord wa, Point a, GroupWord wb, Point b, Rat bound) {
  ExactDist d = decide_dist(sys, sys.act(wa, a), sys.act(wb, b), bound);
  return Claim{Kind::less, std::move(wa), std::move(a), std::move(wb), std::move(b),
               std::move(bound), 0, std::move(d)};
}

Claim Claim::at_least(const System& sys, GroupWord wa, Point a, GroupWord wb, Point b,
                      Rat bound) {
  ExactDist d = decide_dist(sys, sys.act(wa, a), sys.act(wb, b), bound);
  return Claim{Kind::at_least, std::move(wa), std::move(a), std::move(wb), std::move(b),
               std::move(bound), 0, std::move(d)};
}

Claim Claim::orbit(Point a, std::int64_t size, std::size_t rank) {
  Point b = a;
  return Claim{Kind::orbit, GroupWord(rank), std::move(a), GroupWord(rank), std::move(b), Rat(0),
               size, ExactDist{}};
}

std::string to_string(Claim::Kind k) {
  switch (k) {
    case Claim::Kind::less: return "less";
    case Claim::Kind::at_least: return "at_least";
    case Claim::Kind::equal: return "equal";
    case Claim::Kind::orbit: return "orbit";
  }
  return "less";
}

Claim::Kind parse_claim_kind(std::string_view text) {
  if (text == "less") return Claim::Kind::less;
  if (text == "at_least") return Claim::Kind::at_least;
  if (text == "equal") return Claim::Kind::equal;
  if (text == "orbit") return Claim::Kind::orbit;
  throw Error(ErrorCode::parse, "unknown claim kind '" + std::string(text) + "'");
}

bool recheck(const System& sys, const Claim& c) {
  switch (c.kind) {
    case Claim::Kind::less:
      return decide_dist(sys, sys.act(c.word_a, c.a), sys.act(c.word_b, c.b), c.bound)
          .certainly_less(c.bound);
    case Claim::Kind::at_least:
      return decide_dist(sys, sys.act(c.word_a, c.a), sys.act(c.word_b, c.b), c.bound)
          .certainly_at_least(c.bound);
    case Claim::Kind::equal:
      return sys.act(c.word_a, c.a) == sys.act(c.word_b, c.b);
    case Claim::Kind::orbit: {
      std::int64_t forward = 0;
      for (const auto& l : letters(sys, c.a)) forward += l.sign > 0;
      auto r = is_finite_orbit(sys, c.a, c.size * forward + 1);
      return r.status == Status::found && static_cast<std::int64_t>(r.points.size()) == c.size;
    }
  }
  return false;
}

bool recheck(const System& sys, const WitnessReport& report) {
  for (const auto& c : report.certificate)
    if (!recheck(sys, c)) return false;
  return true;
}

}  // namespace chaoslab
