#include "chaoslab/chaos_lab.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace chaoslab {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct ProbeResult {
  bool ok = false;
  std::vector<Claim> claims;
  Counters counters;
  std::string note;
};

// Runs the probes and merges them in index order.
void run_probes(WitnessReport& r, std::int64_t probes, unsigned jobs,
                const std::function<ProbeResult(std::size_t)>& probe) {
  if (probes < 0) throw Error(ErrorCode::invalid_argument, "probe count must be >= 0");
  std::vector<ProbeResult> results(static_cast<std::size_t>(probes));
  parallel_for(results.size(), jobs, [&](std::size_t i) { results[i] = probe(i); });
  r.probes = probes;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto& p = results[i];
    r.successes += p.ok;
    merge_counters(r.budget_used, p.counters);
    for (auto& c : p.claims) r.certificate.push_back(std::move(c));
    if (!p.ok && r.note.empty())
      r.note = "probe " + std::to_string(i) + " failed" + (p.note.empty() ? "" : ": " + p.note);
  }
}

const ProductSystem* as_product(const System& sys) {
  return dynamic_cast<const ProductSystem*>(&sys);
}

bool record_transit(const System& sys, const Ball& U, const Ball& V, const GroupWord& g,
                    const Point& u, WitnessReport& r) {
  const GroupWord id(sys.rank());
  Claim in_u = Claim::less(sys, id, u, id, U.center, U.radius);
  if (!in_u.observed.certainly_less(U.radius)) return false;
  Claim in_v = Claim::less(sys, g, u, id, V.center, V.radius);
  if (!in_v.observed.certainly_less(V.radius)) return false;
  r.status = Status::found;
  r.witness = g;
  r.certificate = {std::move(in_u), std::move(in_v)};
  r.points = {u};
  return true;
}

WitnessReport product_transitivity(const ProductSystem& sys, const Ball& U, const Ball& V,
                                   const SearchBudget& budget, std::uint64_t seed) {
  WitnessReport r;
  r.property = "transitivity";
  r.seed = seed;
  const auto& uc = U.center.as<ProductCoords>();
  const auto& vc = V.center.as<ProductCoords>();
  std::size_t k = sys.factor_count();
  if (sys.cyclic()) {
    auto joint = joint_support(uc, vc);
    k = joint.empty() ? 1 : joint.back();
  }
  // Factor points within factor_radius(r) keep the weighted sum below r.
  std::vector<GroupWord> witnesses;
  std::vector<std::pair<std::size_t, Point>> coords;
  for (std::size_t i = 1; i <= k; ++i) {
    Point ui = sys.coordinate(uc, i);
    auto rv = sys.factor_radius(i, V.radius);
    if (!rv) {
      witnesses.emplace_back(1);
      coords.emplace_back(i, ui);
      continue;
    }
    const Rat ru = sys.factor_radius(i, U.radius).value_or(Rat(1));
    WitnessReport sub = transitivity_witness(*sys.factor(i), Ball{ui, ru},
                                             Ball{sys.coordinate(vc, i), *rv}, budget,
                                             derive_seed(seed, i));
    merge_counters(r.budget_used, sub.budget_used);
    if (sub.status != Status::found) {
      r.note = "factor " + std::to_string(i) + " exhausted";
      return r;
    }
    witnesses.push_back(*sub.witness);
    coords.emplace_back(i, sub.points.front());
  }
  GroupWord g = product_transitivity_witness(witnesses, sys.rank());
  if (!record_transit(sys, U, V, g, sys.make_point(coords), r))
    r.note = "assembled witness failed re-verification";
  return r;
}

bool certain_less(const System& sys, const Point& a, const Point& b, const Rat& bound) {
  return decide_dist(sys, a, b, bound).certainly_less(bound);
}

}  // namespace

WitnessReport transitivity_witness(const System& sys, const Ball& U, const Ball& V,
                                   const SearchBudget& budget, std::uint64_t seed) {
  check_budget(budget);
  if (sgn(U.radius) <= 0 || sgn(V.radius) <= 0)
    throw Error(ErrorCode::invalid_argument, "ball radius must be positive");
  if (const auto* p = as_product(sys)) return product_transitivity(*p, U, V, budget, seed);

  WitnessReport r;
  r.property = "transitivity";
  r.seed = seed;
  if (record_transit(sys, U, V, GroupWord(sys.rank()), U.center, r)) return r;

  Rng rng(seed);
  auto accept = [&](const std::vector<Point>& pts) {
    return certain_less(sys, pts.front(), V.center, V.radius);
  };
  for (std::int64_t s = 0; s < std::max<std::int64_t>(budget.samples, 1); ++s) {
    Point u = s == 0 ? U.center : sys.sample_ball(U.center, U.radius, rng);
    r.budget_used["samples"] += 1;
    auto w = search_words(sys, {u}, budget, accept, r.budget_used);
    if (w && record_transit(sys, U, V, *w, u, r)) return r;
  }
  if (auto h = sys.transit_hint(U.center, U.radius, V.center, V.radius)) {
    r.budget_used["constructions"] += 1;
    if (record_transit(sys, U, V, h->first, h->second, r)) {
      r.note = "constructed";
      return r;
    }
  }
  r.note = "no word found";
  return r;
}

GroupWord product_transitivity_witness(const std::vector<GroupWord>& factor_witnesses,
                                       std::size_t rank) {
  if (rank == 0) rank = factor_witnesses.size();
  if (rank != kCountable && factor_witnesses.size() > rank)
    throw Error(ErrorCode::signature_mismatch, "more witnesses than factors");
  GroupWord out(rank);
  for (std::size_t i = 0; i < factor_witnesses.size(); ++i) {
    const GroupWord& w = factor_witnesses[i];
    if (w.rank() != 1 || (!w.is_identity() && w.factors().begin()->first != 1))
      throw Error(ErrorCode::signature_mismatch, "factor witnesses must be single-factor words");
    out = out.with_factor(i + 1, w.factor(1));
  }
  return out;
}

WitnessReport closed_orbit_density(const System& sys, const Rat& eps, std::int64_t probes,
                                   const SearchBudget& budget, std::uint64_t seed,
                                   unsigned jobs) {
  check_budget(budget);
  if (!sys.has_periodic_oracle())
    throw Error(ErrorCode::no_oracle, sys.name() + " has no periodic-point oracle");
  if (sgn(eps) <= 0) throw Error(ErrorCode::invalid_argument, "eps must be positive");
  WitnessReport r;
  r.property = "closed_orbit_density";
  r.seed = seed;
  const GroupWord id(sys.rank());
  run_probes(r, probes, jobs, [&](std::size_t i) {
    ProbeResult p;
    Rng rng(derive_seed(seed, i));
    Point x = sys.sample_point(rng);
    auto y = sys.periodic_point_near(x, eps);
    if (!y) {
      p.note = "oracle declined";
      return p;
    }
    Claim near = Claim::less(sys, id, *y, id, x, eps);
    if (!near.observed.certainly_less(eps)) {
      p.note = "oracle point not within eps";
      return p;
    }
    WitnessReport orbit = is_finite_orbit(sys, *y, budget.orbit_budget);
    merge_counters(p.counters, orbit.budget_used);
    if (orbit.status != Status::found) {
      p.note = "orbit not closed within budget";
      return p;
    }
    p.claims.push_back(std::move(near));
    p.claims.push_back(std::move(orbit.certificate.front()));
    p.ok = true;
    return p;
  });
  r.status = r.successes == r.probes ? Status::certified_bound : Status::exhausted;
  return r;
}

Point product_periodic_point(const ProductSystem& sys,
                             const std::vector<std::pair<std::size_t, Point>>& active) {
  const std::size_t n = sys.cyclic() ? sys.cycle_length() : sys.factor_count();
  std::vector<std::pair<std::size_t, Point>> coords;
  for (std::size_t i = 1; i <= n; ++i) {
    auto fp = sys.factor(i)->fixed_point();
    if (!fp) throw Error(ErrorCode::missing_fixed_point, sys.factor(i)->name() + " has no fixed point");
    // Unlisted factors of a countable product sit on their base points.
    if (sys.cyclic() && !(*fp == sys.factor(i)->base_point()))
      throw Error(ErrorCode::missing_fixed_point,
                  sys.factor(i)->name() + " has no fixed point at its base point");
    if (!sys.cyclic()) coords.emplace_back(i, *fp);
  }
  for (const auto& [i, p] : active) {
    sys.factor(i);
    coords.emplace_back(i, p);
  }
  return sys.make_point(coords);
}

std::optional<GroupWord> separation_witness(const System& sys, const Point& a, const Point& b,
                                            const Rat& delta, const SearchBudget& budget,
                                            Counters& counters) {
  return search_words(
      sys, {a, b}, budget,
      [&](const std::vector<Point>& pts) {
        return decide_dist(sys, pts[0], pts[1], delta).certainly_at_least(delta);
      },
      counters);
}

Rat lift_sensitivity_constant(int n, const Rat& sigma) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "factor index starts at 1");
  if (sgn(sigma) <= 0) throw Error(ErrorCode::invalid_argument, "sensitivity constant must be positive");
  return sigma * pow2(-(n + 1));
}

namespace {

// u = x, v in D_eps(x) and g with dist(g.x, g.v) >= delta, appended as claims.
bool sensitivity_probe(const System& sys, const Point& x, const Rat& delta, const Rat& eps,
                       const SearchBudget& budget, Rng& rng, ProbeResult& p) {
  const GroupWord id(sys.rank());
  auto certify = [&](const GroupWord& g, const Point& v) {
    Claim in_ball = Claim::less(sys, id, v, id, x, eps);
    if (!in_ball.observed.certainly_less(eps)) return false;
    Claim apart = Claim::at_least(sys, g, x, g, v, delta);
    if (!apart.observed.certainly_at_least(delta)) return false;
    p.claims.push_back(std::move(in_ball));
    p.claims.push_back(std::move(apart));
    return true;
  };

  if (const auto* prod = as_product(sys)) {
    const auto& xc = x.as<ProductCoords>();
    for (std::size_t n : prod->active_factors(xc)) {
      auto separation = prod->factor_separation(n, delta * pow2(static_cast<std::int64_t>(n)));
      if (!separation) continue;
      const Rat& target = *separation;
      const Rat eps_n = eps * pow2(static_cast<std::int64_t>(n));
      const System& f = *prod->factor(n);
      const Point xn = prod->coordinate(xc, n);
      for (std::int64_t s = 0; s < budget.samples; ++s) {
        Point vn = f.sample_ball(xn, eps_n, rng);
        p.counters["samples"] += 1;
        if (vn == xn) continue;
        auto w = separation_witness(f, xn, vn, target, budget, p.counters);
        if (!w) continue;
        Point v = prod->normalize(xc.with(n, vn));
        if (certify(GroupWord::single(sys.rank(), n, w->factor(1)), v)) {
          p.counters["lifted"] += 1;
          return true;
        }
      }
    }
  }

  for (std::int64_t s = 0; s < budget.samples; ++s) {
    Point v = sys.sample_ball(x, eps, rng);
    p.counters["samples"] += 1;
    if (v == x) continue;
    auto w = separation_witness(sys, x, v, delta, budget, p.counters);
    if (w && certify(*w, v)) return true;
  }
  return false;
}

}  // namespace

WitnessReport sensitivity_lower_bound(const System& sys, const Rat& delta,
                                      const std::vector<Rat>& eps_list, std::int64_t probes,
                                      const SearchBudget& budget, std::uint64_t seed,
                                      unsigned jobs) {
  check_budget(budget);
  if (sgn(delta) <= 0) throw Error(ErrorCode::invalid_argument, "delta must be positive");
  for (const auto& e : eps_list)
    if (sgn(e) <= 0) throw Error(ErrorCode::invalid_argument, "eps must be positive");
  WitnessReport r;
  r.property = "sensitivity";
  r.seed = seed;
  run_probes(r, probes, jobs, [&](std::size_t i) {
    ProbeResult p;
    Rng rng(derive_seed(seed, i));
    Point x = sys.sample_point(rng);
    p.ok = true;
    for (const auto& eps : eps_list) {
      if (!sensitivity_probe(sys, x, delta, eps, budget, rng, p)) {
        p.ok = false;
        p.note = "no separating word at eps " + to_string(eps);
        break;
      }
    }
    return p;
  });
  r.status = r.successes == r.probes ? Status::certified_bound : Status::exhausted;
  return r;
}

std::vector<Point> equicontinuity_candidates(const System& sys, std::int64_t n,
                                             std::int64_t word_len_max, std::int64_t probes,
                                             std::uint64_t seed, unsigned jobs) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  if (probes < 0) throw Error(ErrorCode::invalid_argument, "probe count must be >= 0");
  SearchBudget budget;
  budget.word_len_max = word_len_max;
  budget.max_states = 20000;
  check_budget(budget);
  const Rat bound(1, static_cast<unsigned long>(n));
  const std::vector<Rat> eps_list{bound / 4, bound / 32};
  std::vector<std::optional<Point>> found(static_cast<std::size_t>(probes));
  parallel_for(found.size(), jobs, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    Point x = sys.sample_point(rng);
    for (const auto& eps : eps_list) {
      std::vector<Point> pts{x};
      for (int k = 0; k < 4; ++k) pts.push_back(sys.sample_ball(x, eps, rng));
      Counters c;
      auto wide = search_words(
          sys, pts, budget,
          [&](const std::vector<Point>& img) {
            for (std::size_t a = 0; a < img.size(); ++a)
              for (std::size_t b = a + 1; b < img.size(); ++b)
                if (!decide_dist(sys, img[a], img[b], bound).certainly_less(bound)) return true;
            return false;
          },
          c);
      if (!wide && c["truncated"] == 0) {
        found[i] = x;
        return;
      }
    }
  });
  std::vector<Point> out;
  for (auto& f : found)
    if (f) out.push_back(std::move(*f));
  return out;
}

WitnessReport dense_orbit_check(const System& sys, const Rat& eps, std::int64_t probes,
                                const SearchBudget& budget, std::uint64_t seed, unsigned jobs) {
  check_budget(budget);
  if (sgn(eps) <= 0) throw Error(ErrorCode::invalid_argument, "eps must be positive");
  WitnessReport r;
  r.seed = seed;
  const auto start = sys.dense_orbit_seed();
  if (!start) {
    r.property = "transitivity";
    run_probes(r, probes, jobs, [&](std::size_t i) {
      ProbeResult p;
      Rng rng(derive_seed(seed, i));
      Point a = sys.sample_point(rng);
      Point b = sys.sample_point(rng);
      WitnessReport t = transitivity_witness(sys, Ball{a, eps}, Ball{b, eps}, budget,
                                             derive_seed(seed, i + probes));
      p.counters = t.budget_used;
      p.ok = t.status == Status::found;
      p.claims = std::move(t.certificate);
      p.note = t.note;
      return p;
    });
    r.status = r.successes == r.probes ? Status::found : Status::exhausted;
    return r;
  }

  r.property = "dense_orbit";
  r.points = {*start};
  const GroupWord id(sys.rank());
  run_probes(r, probes, jobs, [&](std::size_t i) {
    ProbeResult p;
    Rng rng(derive_seed(seed, i));
    Point c = sys.sample_point(rng);
    std::optional<GroupWord> w = sys.orbit_hint(*start, c, eps);
    if (w) p.counters["hints"] += 1;
    if (!w || !certain_less(sys, sys.act(*w, *start), c, eps)) {
      w = search_words(
          sys, {*start}, budget,
          [&](const std::vector<Point>& pts) { return certain_less(sys, pts.front(), c, eps); },
          p.counters);
    }
    if (!w) {
      p.note = "no orbit point within eps";
      return p;
    }
    Claim hit = Claim::less(sys, *w, *start, id, c, eps);
    p.ok = hit.observed.certainly_less(eps);
    p.claims.push_back(std::move(hit));
    return p;
  });
  r.status = r.successes == r.probes ? Status::found : Status::exhausted;
  return r;
}

ChaosReport chaos_check(const System& sys, const Rat& eps, std::int64_t probes,
                        const SearchBudget& budget, std::uint64_t seed, unsigned jobs) {
  ChaosReport c;
  c.system = sys.name();
  c.dense = dense_orbit_check(sys, eps, probes, budget, derive_seed(seed, 1), jobs);
  if (sys.has_periodic_oracle()) {
    c.closed = closed_orbit_density(sys, eps, probes, budget, derive_seed(seed, 2), jobs);
  } else {
    c.closed.property = "closed_orbit_density";
    c.closed.note = "no periodic-point oracle";
  }
  if (auto sigma = sys.sensitivity_constant()) {
    c.sensitivity = sensitivity_lower_bound(sys, *sigma, {eps}, probes, budget,
                                            derive_seed(seed, 3), jobs);
  } else {
    c.sensitivity_skipped = true;
    c.sensitivity.property = "sensitivity";
    c.sensitivity.note = "no declared constant";
  }
  c.pass = c.dense.status == Status::found && c.closed.status == Status::certified_bound &&
           (c.sensitivity_skipped || c.sensitivity.status == Status::certified_bound);
  if (const auto* p = as_product(sys)) {
    const std::size_t n = p->cyclic() ? p->cycle_length() : p->factor_count();
    bool all = true;
    for (std::size_t i = 1; i <= n; ++i) {
      c.factors.push_back(chaos_check(*p->factor(i), eps, probes, budget, seed, jobs));
      all = all && c.factors.back().pass;
    }
    c.factors_consistent = c.pass == all;
  }
  return c;
}

}  // namespace chaoslab
