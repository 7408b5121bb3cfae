#include "chaoslab/group_action.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace chaoslab {

std::vector<Letter> letters(const System& sys, const Point& x) {
  std::vector<std::size_t> factors{1};
  if (const auto* p = dynamic_cast<const ProductSystem*>(&sys))
    factors = p->active_factors(x.as<ProductCoords>());
  std::vector<Letter> out;
  for (std::size_t f : factors) {
    const auto gens = sys.generator_names(f);
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      out.push_back({f, g, +1});
      out.push_back({f, g, -1});
    }
  }
  return out;
}

GroupWord letter_word(const System& sys, const Letter& l) {
  return GroupWord::single(sys.rank(), l.factor, FreeWord::power(l.generator, l.sign));
}

namespace {

std::string state_key(const std::vector<Point>& pts) {
  std::string key;
  for (const auto& p : pts) {
    key += to_string(p);
    key += '\n';
  }
  return key;
}

}  // namespace

std::vector<OrbitEntry> orbit_ball(const System& sys, const Point& x, std::int64_t word_len_max,
                                   const Rat& tol, std::int64_t cap) {
  if (word_len_max < 0) throw Error(ErrorCode::invalid_argument, "word_len_max must be >= 0");
  if (sgn(tol) <= 0) throw Error(ErrorCode::negative_tolerance, "tolerance must be positive");
  const std::int64_t limit = cap > 0 ? std::min(cap, global_budget_cap()) : global_budget_cap();
  std::vector<OrbitEntry> out{{GroupWord(sys.rank()), x}};
  std::unordered_set<std::string> seen{to_string(x)};
  auto is_new = [&](const Point& p) {
    if (sys.exact_equality()) return seen.insert(to_string(p)).second;
    for (const auto& e : out)
      if (sys.dist(e.point, p, tol / 4).certainly_less(tol)) return false;
    return true;
  };
  std::size_t level_begin = 0;
  for (std::int64_t len = 1; len <= word_len_max; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const auto& l : letters(sys, out[i].point)) {
        const GroupWord lw = letter_word(sys, l);
        Point p = sys.act(lw, out[i].point);
        if (!is_new(p)) continue;
        if (static_cast<std::int64_t>(out.size()) >= limit)
          throw Error(ErrorCode::budget_too_large,
                      "orbit ball exceeds " + std::to_string(limit) + " points");
        out.push_back({compose(lw, out[i].word), std::move(p)});
      }
    }
    if (out.size() == level_end) break;
    level_begin = level_end;
  }
  return out;
}

WitnessReport is_finite_orbit(const System& sys, const Point& x, std::int64_t budget) {
  if (!sys.exact_equality())
    throw Error(ErrorCode::exact_equality_unsupported, sys.name() + " compares points only up to tolerance");
  WitnessReport r;
  r.property = "finite_orbit";
  std::vector<Point> orbit{x};
  std::unordered_set<std::string> seen{to_string(x)};
  std::int64_t applications = 0;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& l : letters(sys, orbit[i])) {
      if (l.sign < 0) continue;
      if (applications >= budget) {
        r.budget_used["applications"] = applications;
        r.budget_used["points"] = static_cast<std::int64_t>(orbit.size());
        r.note = "orbit not closed within budget";
        return r;
      }
      ++applications;
      Point p = sys.act(letter_word(sys, l), orbit[i]);
      if (seen.insert(to_string(p)).second) orbit.push_back(std::move(p));
    }
  }
  r.status = Status::found;
  r.budget_used["applications"] = applications;
  r.budget_used["points"] = static_cast<std::int64_t>(orbit.size());
  r.certificate.push_back(Claim::orbit(x, static_cast<std::int64_t>(orbit.size()), sys.rank()));
  r.points = std::move(orbit);
  return r;
}

std::optional<GroupWord> search_words(const System& sys, const std::vector<Point>& start,
                                      const SearchBudget& budget,
                                      const std::function<bool(const std::vector<Point>&)>& accept,
                                      Counters& counters) {
  check_budget(budget);
  counters["states"] += 1;
  if (accept(start)) return GroupWord(sys.rank());
  struct State {
    GroupWord word;
    std::vector<Point> pts;
  };
  std::unordered_set<std::string> seen{state_key(start)};
  std::vector<State> level{{GroupWord(sys.rank()), start}};
  for (std::int64_t len = 1; len <= budget.word_len_max && !level.empty(); ++len) {
    std::vector<State> next;
    for (const auto& s : level) {
      for (const auto& l : letters(sys, s.pts.front())) {
        const GroupWord lw = letter_word(sys, l);
        std::vector<Point> pts;
        pts.reserve(s.pts.size());
        for (const auto& p : s.pts) pts.push_back(sys.act(lw, p));
        if (!seen.insert(state_key(pts)).second) continue;
        counters["states"] += 1;
        GroupWord w = compose(lw, s.word);
        if (accept(pts)) return w;
        if (static_cast<std::int64_t>(seen.size()) >= budget.max_states) {
          counters["truncated"] += 1;
          return std::nullopt;
        }
        next.push_back({std::move(w), std::move(pts)});
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace chaoslab
