#pragma once

// Budgeted checkers for transitivity, dense orbits, density of closed
// orbits, sensitivity and equicontinuity, plus the product constructions.
// Every checker is a pure function of its inputs and seed; probes run in
// parallel with per-probe seeds and are merged in probe order.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chaoslab/group_action.hpp"
#include "chaoslab/report.hpp"

namespace chaoslab {

/// Open ball D_r(center).
struct Ball {
  Point center;
  Rat radius;
};

/// Runs fn(0..n-1) on up to `jobs` threads (0 = hardware concurrency).
/// The first exception by index is rethrown after all threads finish.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// A word g and u in U with g.u in V. Products are split into factor
/// searches and reassembled; other systems try the identity, a breadth-first
/// search from sampled points of U and finally the system's own construction.
WitnessReport transitivity_witness(const System& sys, const Ball& U, const Ball& V,
                                   const SearchBudget& budget, std::uint64_t seed);

/// Product word carrying factor_witnesses[i - 1] on factor i. Each witness
/// must be a single-factor word. rank 0 means the number of witnesses.
GroupWord product_transitivity_witness(const std::vector<GroupWord>& factor_witnesses,
                                       std::size_t rank = 0);

/// For each probe x, the system's oracle gives y with dist(x, y) < eps and
/// the orbit of y is closed within budget.orbit_budget. CERTIFIED_BOUND
/// when every probe succeeds. Throws NoOracle.
WitnessReport closed_orbit_density(const System& sys, const Rat& eps, std::int64_t probes,
                                   const SearchBudget& budget, std::uint64_t seed,
                                   unsigned jobs = 1);

/// Finite-orbit point of a product: the given points on the active factors,
/// each factor's fixed point elsewhere. Throws MissingFixedPoint.
Point product_periodic_point(const ProductSystem& sys,
                             const std::vector<std::pair<std::size_t, Point>>& active);

/// A word g with dist(g.a, g.b) >= delta, searched breadth-first.
std::optional<GroupWord> separation_witness(const System& sys, const Point& a, const Point& b,
                                            const Rat& delta, const SearchBudget& budget,
                                            Counters& counters);

/// sigma / 2^(n + 1).
Rat lift_sensitivity_constant(int n, const Rat& sigma);

/// For every probe x and eps in eps_list: points u = x, v in D_eps(x) and a
/// word g with dist(g.u, g.v) >= delta. Products first try the lifted
/// construction on each factor n: a factor pair from a ball of radius
/// eps 2^n whose bounded distance reaches delta 2^n.
WitnessReport sensitivity_lower_bound(const System& sys, const Rat& delta,
                                      const std::vector<Rat>& eps_list, std::int64_t probes,
                                      const SearchBudget& budget, std::uint64_t seed,
                                      unsigned jobs = 1);

/// Probe points x for which some tested eps keeps every sampled image
/// g.D_eps(x), |g| <= word_len_max, of diameter below 1/n.
std::vector<Point> equicontinuity_candidates(const System& sys, std::int64_t n,
                                             std::int64_t word_len_max, std::int64_t probes,
                                             std::uint64_t seed, unsigned jobs = 1);

/// The orbit of the dense-orbit seed meets D_eps(c) for every probe center
/// c. Systems without a seed fall back to transitivity between pairs of
/// probe balls.
WitnessReport dense_orbit_check(const System& sys, const Rat& eps, std::int64_t probes,
                                const SearchBudget& budget, std::uint64_t seed,
                                unsigned jobs = 1);

struct ChaosReport {
  std::string system;
  WitnessReport dense;
  WitnessReport closed;
  WitnessReport sensitivity;
  bool sensitivity_skipped = false;
  bool pass = false;
  /// Products: one report per factor and whether product pass agrees with
  /// every factor passing.
  std::vector<ChaosReport> factors;
  std::optional<bool> factors_consistent;
};

/// Dense orbit (or transitivity), density of closed orbits and sensitivity
/// at the declared constant. pass requires the first two and the third
/// unless the system declares no constant.
ChaosReport chaos_check(const System& sys, const Rat& eps, std::int64_t probes,
                        const SearchBudget& budget, std::uint64_t seed, unsigned jobs = 1);

}  // namespace chaoslab
