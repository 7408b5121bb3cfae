#pragma once

// Dynamical systems as group actions: a point universe, the action of
// GroupWord elements, a metric with certified error, and samplers.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chaoslab/group_word.hpp"
#include "chaoslab/metric_product.hpp"
#include "chaoslab/rational.hpp"
#include "chaoslab/symbolic_shift.hpp"
#include "chaoslab/torus.hpp"

namespace chaoslab {

struct AffinePoint {
  std::vector<Rat> coords;

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

struct Point;
using ProductCoords = ProductPoint<Point>;

/// Any point handled by a system.
struct Point {
  std::variant<BiSeq, TorusPoint, PillowPoint, AffinePoint, ProductCoords> value;

  Point(BiSeq s) : value(std::move(s)) {}
  Point(TorusPoint p) : value(std::move(p)) {}
  Point(PillowPoint p) : value(std::move(p)) {}
  Point(AffinePoint p) : value(std::move(p)) {}
  Point(ProductCoords p) : value(std::move(p)) {}

  template <class T>
  const T& as() const;
  template <class T>
  bool holds() const noexcept {
    return std::holds_alternative<T>(value);
  }

  friend bool operator==(const Point&, const Point&) = default;
};

/// Canonical text of a point; equal points give equal text.
std::string to_string(const Point& p);

using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class System {
public:
  virtual ~System() = default;

  /// Canonical spec string, e.g. "shift(2)" or "product(shift(2),anosov(3,3))".
  virtual std::string name() const = 0;

  /// Number of direct factors of the acting group (1 unless a product).
  virtual std::size_t rank() const { return 1; }
  virtual std::vector<std::string> generator_names(std::size_t factor) const = 0;

  /// Throws SignatureMismatch when the word does not fit the group.
  virtual Point act(const GroupWord& word, const Point& x) const = 0;
  virtual ExactDist dist(const Point& a, const Point& b, const Rat& tol) const = 0;

  /// A point with dist(center, result) < radius, certified by construction.
  virtual Point sample_ball(const Point& center, const Rat& radius, Rng& rng) const = 0;
  /// A random point of the universe (used as probe centers).
  virtual Point sample_point(Rng& rng) const = 0;
  virtual Point parse_point(std::string_view text) const = 0;

  /// Designated base point (defaults of product coordinates).
  virtual Point base_point() const = 0;
  virtual std::optional<Point> fixed_point() const { return std::nullopt; }
  virtual std::optional<Point> dense_orbit_seed() const { return std::nullopt; }
  /// A point with finite orbit within eps of x, if the system has an oracle.
  virtual std::optional<Point> periodic_point_near(const Point&, const Rat&) const {
    return std::nullopt;
  }
  virtual bool has_periodic_oracle() const { return false; }
  /// Declared sensitivity constant for pair distances, if any.
  virtual std::optional<Rat> sensitivity_constant() const { return std::nullopt; }
  virtual bool exact_equality() const { return true; }
  /// True when dist never exceeds 1, so products use it without tilde.
  virtual bool bounded_metric() const { return false; }

  /// Candidate word moving `from` to within eps of `target`. Callers verify it.
  virtual std::optional<GroupWord> orbit_hint(const Point&, const Point&, const Rat&) const {
    return std::nullopt;
  }
  /// Candidate (g, u) with u in D_ur(uc) and g.u in D_vr(vc). Callers verify it.
  virtual std::optional<std::pair<GroupWord, Point>> transit_hint(const Point&, const Rat&,
                                                                  const Point&, const Rat&) const {
    return std::nullopt;
  }
  /// Float coordinates for plot output.
  virtual std::vector<double> render(const Point& p) const = 0;

  /// Checks rank and factor indices of `word`; throws SignatureMismatch.
  void check_signature(const GroupWord& word) const;
};

using SystemHandle = std::shared_ptr<const System>;

/// A system with a single group factor whose action is given generator by
/// generator.
class BaseSystem : public System {
public:
  Point act(const GroupWord& word, const Point& x) const override;
  virtual Point apply(std::uint32_t generator, std::int64_t power, const Point& x) const = 0;
};

/// Product of finitely or countably many systems with the canonical
/// coordinatewise action and the weighted product metric.
class ProductSystem : public System {
public:
  /// Finite product.
  explicit ProductSystem(std::vector<SystemHandle> factors);
  /// Countable product repeating `cycle` periodically: factor i is
  /// cycle[(i - 1) mod |cycle|].
  static std::shared_ptr<const ProductSystem> countable_cycle(std::vector<SystemHandle> cycle);

  std::string name() const override;
  std::size_t rank() const override { return count_; }
  std::size_t factor_count() const noexcept { return count_; }
  const SystemHandle& factor(std::size_t i) const;

  std::vector<std::string> generator_names(std::size_t factor) const override;
  Point act(const GroupWord& word, const Point& x) const override;
  ExactDist dist(const Point& a, const Point& b, const Rat& tol) const override;
  Point sample_ball(const Point& center, const Rat& radius, Rng& rng) const override;
  Point sample_point(Rng& rng) const override;
  Point parse_point(std::string_view text) const override;
  Point base_point() const override;
  std::optional<Point> fixed_point() const override;
  std::optional<Point> dense_orbit_seed() const override;
  std::optional<Point> periodic_point_near(const Point& x, const Rat& eps) const override;
  bool has_periodic_oracle() const override;
  std::optional<Rat> sensitivity_constant() const override;
  bool exact_equality() const override;
  bool bounded_metric() const override { return true; }
  std::optional<GroupWord> orbit_hint(const Point& from, const Point& target,
                                      const Rat& eps) const override;
  std::vector<double> render(const Point& p) const override;

  /// Factors touched by sampling when a point carries no explicit coordinates.
  std::size_t sampled_factors() const;

  /// Point with the given explicit coordinates; coordinates equal to the
  /// factor default are dropped so equal points compare equal.
  ProductCoords make_point(const std::vector<std::pair<std::size_t, Point>>& coords) const;
  /// Coordinate i of x (default when outside the support).
  Point coordinate(const ProductCoords& x, std::size_t i) const;
  /// Coordinate-wise factor points on the given indices.
  ProductCoords normalize(const ProductCoords& x) const;
  /// Largest b such that factor distance d < b gives a bounded term below r;
  /// nullopt when every factor point qualifies.
  std::optional<Rat> factor_radius(std::size_t i, const Rat& r) const;
  /// Factor distance guaranteeing a bounded term >= s; nullopt if none does.
  std::optional<Rat> factor_separation(std::size_t i, const Rat& s) const;

  /// Factors a search over x should touch: 1..sampled_factors() plus the support.
  std::vector<std::size_t> active_factors(const ProductCoords& x) const;
  bool cyclic() const noexcept { return cyclic_; }
  /// Number of distinct factor systems (the cycle length for countable products).
  std::size_t cycle_length() const noexcept { return factors_.size(); }

private:
  ProductSystem() = default;

  std::vector<SystemHandle> factors_;
  std::size_t count_ = 0;
  bool cyclic_ = false;
};

SystemHandle product_system(std::vector<SystemHandle> factors);

}  // namespace chaoslab
