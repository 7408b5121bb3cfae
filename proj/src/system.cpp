#include "chaoslab/system.hpp"

#include <algorithm>

#include "chaoslab/chaos_lab.hpp"
#include "chaoslab/text.hpp"

namespace chaoslab {

template <class T>
const T& Point::as() const {
  if (const T* p = std::get_if<T>(&value)) return *p;
  throw Error(ErrorCode::invalid_argument, "point " + to_string(*this) + " has the wrong kind");
}

template const BiSeq& Point::as<BiSeq>() const;
template const TorusPoint& Point::as<TorusPoint>() const;
template const PillowPoint& Point::as<PillowPoint>() const;
template const AffinePoint& Point::as<AffinePoint>() const;
template const ProductCoords& Point::as<ProductCoords>() const;

std::string to_string(const Point& p) {
  struct Visitor {
    std::string operator()(const BiSeq& s) const { return to_string(s); }
    std::string operator()(const TorusPoint& t) const { return to_string(t); }
    std::string operator()(const PillowPoint& t) const { return to_string(t); }
    std::string operator()(const AffinePoint& a) const {
      std::string out = "(";
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (i) out += ", ";
        out += to_string(a.coords[i]);
      }
      return out + ')';
    }
    std::string operator()(const ProductCoords& x) const {
      std::string out = "[";
      for (std::size_t j = 0; j < x.support().size(); ++j) {
        if (j) out += "; ";
        out += std::to_string(x.support()[j]) + ": " + to_string(x.values()[j]);
      }
      return out + ']';
    }
  };
  return std::visit(Visitor{}, p.value);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void System::check_signature(const GroupWord& word) const {
  if (word.rank() != rank())
    throw Error(ErrorCode::signature_mismatch,
                "word of rank " + std::to_string(word.rank()) + " applied to " + name());
  for (const auto& [i, fw] : word.factors()) {
    const auto gens = generator_names(i);
    for (const auto& s : fw.syllables())
      if (s.generator >= gens.size())
        throw Error(ErrorCode::signature_mismatch,
                    "generator g" + std::to_string(s.generator) + " unknown to " + name());
  }
}

Point BaseSystem::act(const GroupWord& word, const Point& x) const {
  check_signature(word);
  Point y = x;
  const FreeWord w = word.factor(1);
  const auto& syl = w.syllables();
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) y = apply(it->generator, it->power, y);
  return y;
}

ProductSystem::ProductSystem(std::vector<SystemHandle> factors)
    : factors_(std::move(factors)), count_(factors_.size()) {
  if (factors_.empty()) throw Error(ErrorCode::invalid_argument, "product of no factors");
  for (const auto& f : factors_)
    if (!f) throw Error(ErrorCode::invalid_argument, "null factor system");
}

std::shared_ptr<const ProductSystem> ProductSystem::countable_cycle(std::vector<SystemHandle> cycle) {
  auto p = std::shared_ptr<ProductSystem>(new ProductSystem(std::move(cycle)));
  p->count_ = kCountable;
  p->cyclic_ = true;
  return p;
}

std::string ProductSystem::name() const {
  std::string out = cyclic_ ? "cycle(" : "product(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ',';
    out += factors_[i]->name();
  }
  return out + ')';
}

const SystemHandle& ProductSystem::factor(std::size_t i) const {
  if (i == 0 || (!cyclic_ && i > count_))
    throw Error(ErrorCode::factor_mismatch, "factor " + std::to_string(i) + " outside " + name());
  return factors_[(i - 1) % factors_.size()];
}

std::vector<std::string> ProductSystem::generator_names(std::size_t i) const {
  return factor(i)->generator_names(1);
}

Point ProductSystem::coordinate(const ProductCoords& x, std::size_t i) const {
  if (const Point* p = x.find(i)) return *p;
  return factor(i)->base_point();
}

ProductCoords ProductSystem::make_point(
    const std::vector<std::pair<std::size_t, Point>>& coords) const {
  ProductCoords out(count_);
  for (const auto& [i, p] : coords) {
    if (p == factor(i)->base_point())
      out = out.without(i);
    else
      out = out.with(i, p);
  }
  return out;
}

ProductCoords ProductSystem::normalize(const ProductCoords& x) const {
  std::vector<std::pair<std::size_t, Point>> coords;
  for (std::size_t j = 0; j < x.support().size(); ++j)
    coords.emplace_back(x.support()[j], x.values()[j]);
  return make_point(coords);
}

namespace {

const ProductCoords& product_coords(const Point& p, std::size_t count) {
  const auto& x = p.as<ProductCoords>();
  if (x.factor_count() != count)
    throw Error(ErrorCode::factor_mismatch, "product point has the wrong number of factors");
  return x;
}

}  // namespace

Point ProductSystem::act(const GroupWord& word, const Point& x) const {
  check_signature(word);
  const ProductCoords& coords = product_coords(x, count_);
  std::vector<std::pair<std::size_t, Point>> updated;
  for (const auto& [i, fw] : word.factors())
    updated.emplace_back(i, factor(i)->act(GroupWord::single(1, 1, fw), coordinate(coords, i)));
  ProductCoords out = coords;
  for (const auto& [i, p] : updated)
    out = (p == factor(i)->base_point()) ? out.without(i) : out.with(i, p);
  return out;
}

ExactDist ProductSystem::dist(const Point& a, const Point& b, const Rat& tol) const {
  const ProductCoords& x = product_coords(a, count_);
  const ProductCoords& y = product_coords(b, count_);
  return product_dist(
      x, y, tol,
      [this](std::size_t i, const Point& p, const Point& q, const Rat& t) {
        return factor(i)->dist(p, q, t);
      },
      [this](std::size_t i) { return factor(i)->base_point(); },
      [this](std::size_t i) { return factor(i)->bounded_metric(); });
}

std::optional<Rat> ProductSystem::factor_radius(std::size_t i, const Rat& r) const {
  if (factor(i)->bounded_metric()) return r;
  if (r >= 1) return std::nullopt;
  return tilde_inverse(r);
}

std::optional<Rat> ProductSystem::factor_separation(std::size_t i, const Rat& s) const {
  if (factor(i)->bounded_metric()) {
    if (s > 1) return std::nullopt;
    return s;
  }
  if (s >= 1) return std::nullopt;
  return tilde_inverse(s);
}

std::size_t ProductSystem::sampled_factors() const {
  if (cyclic_) return std::max<std::size_t>(factors_.size(), 3);
  return count_;
}

std::vector<std::size_t> ProductSystem::active_factors(const ProductCoords& x) const {
  std::vector<std::size_t> active = x.support();
  for (std::size_t i = 1; i <= sampled_factors(); ++i) active.push_back(i);
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  return active;
}

Point ProductSystem::sample_ball(const Point& center, const Rat& radius, Rng& rng) const {
  const ProductCoords& c = product_coords(center, count_);
  // Each coordinate within radius keeps sum 2^-i tilde(d_i) below radius.
  std::vector<std::pair<std::size_t, Point>> coords;
  for (std::size_t i : active_factors(c))
    coords.emplace_back(i, factor(i)->sample_ball(coordinate(c, i), radius, rng));
  return make_point(coords);
}

Point ProductSystem::sample_point(Rng& rng) const {
  std::vector<std::pair<std::size_t, Point>> coords;
  for (std::size_t i = 1; i <= sampled_factors(); ++i)
    coords.emplace_back(i, factor(i)->sample_point(rng));
  return make_point(coords);
}

Point ProductSystem::parse_point(std::string_view text) const {
  std::string_view t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw Error(ErrorCode::parse, "product point must be written [i: point; ...]");
  t = trim(t.substr(1, t.size() - 2));
  std::vector<std::pair<std::size_t, Point>> coords;
  if (!t.empty()) {
    for (std::string_view entry : split_top_level(t, ';')) {
      auto colon = entry.find(':');
      if (colon == std::string_view::npos)
        throw Error(ErrorCode::parse, "product coordinate needs 'index: point'");
      auto i = static_cast<std::size_t>(parse_int(entry.substr(0, colon)));
      coords.emplace_back(i, factor(i)->parse_point(entry.substr(colon + 1)));
    }
  }
  return make_point(coords);
}

Point ProductSystem::base_point() const { return ProductCoords(count_); }

std::optional<Point> ProductSystem::fixed_point() const {
  std::vector<std::pair<std::size_t, Point>> coords;
  const std::size_t n = cyclic_ ? factors_.size() : count_;
  for (std::size_t i = 1; i <= n; ++i) {
    auto fp = factor(i)->fixed_point();
    if (!fp) return std::nullopt;
    if (cyclic_ && !(*fp == factor(i)->base_point())) return std::nullopt;
    coords.emplace_back(i, *fp);
  }
  return Point(make_point(coords));
}

std::optional<Point> ProductSystem::dense_orbit_seed() const {
  if (cyclic_) return std::nullopt;
  std::vector<std::pair<std::size_t, Point>> coords;
  for (std::size_t i = 1; i <= count_; ++i) {
    auto seed = factor(i)->dense_orbit_seed();
    if (!seed) return std::nullopt;
    coords.emplace_back(i, *seed);
  }
  return Point(make_point(coords));
}

std::optional<Point> ProductSystem::periodic_point_near(const Point& x, const Rat& eps) const {
  if (!has_periodic_oracle()) return std::nullopt;
  const ProductCoords& c = product_coords(x, count_);
  std::vector<std::size_t> active = c.support();
  if (!cyclic_) {
    active.clear();
    for (std::size_t i = 1; i <= count_; ++i) active.push_back(i);
  } else {
    for (const auto& f : factors_) {
      auto fp = f->fixed_point();
      if (!fp || !(*fp == f->base_point()))
        throw Error(ErrorCode::missing_fixed_point,
                    f->name() + " has no fixed point at its base point");
    }
  }
  // Active coordinates within factor_radius(eps) keep the weighted sum below eps.
  std::vector<std::pair<std::size_t, Point>> coords;
  for (std::size_t i : active) {
    const Rat factor_eps = factor_radius(i, eps).value_or(Rat(1));
    auto y = factor(i)->periodic_point_near(coordinate(c, i), factor_eps);
    if (!y) return std::nullopt;
    coords.emplace_back(i, *y);
  }
  return Point(make_point(coords));
}

bool ProductSystem::has_periodic_oracle() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const SystemHandle& f) { return f->has_periodic_oracle(); });
}

std::optional<Rat> ProductSystem::sensitivity_constant() const {
  const std::size_t n = cyclic_ ? factors_.size() : count_;
  for (std::size_t i = 1; i <= n; ++i) {
    auto c = factor(i)->sensitivity_constant();
    if (c && *c <= 1) return lift_sensitivity_constant(static_cast<int>(i), *c);
  }
  return std::nullopt;
}

bool ProductSystem::exact_equality() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const SystemHandle& f) { return f->exact_equality(); });
}

// Coordinates within factor_radius(eps) keep the weighted sum below eps;
// coordinates outside both supports already agree.
std::optional<GroupWord> ProductSystem::orbit_hint(const Point& from, const Point& target,
                                                   const Rat& eps) const {
  if (cyclic_) return std::nullopt;
  const ProductCoords& x = product_coords(from, count_);
  const ProductCoords& y = product_coords(target, count_);
  GroupWord word(count_);
  for (std::size_t i = 1; i <= count_; ++i) {
    auto radius = factor_radius(i, eps);
    if (!radius) continue;
    const Rat& factor_eps = *radius;
    const Point xi = coordinate(x, i);
    const Point yi = coordinate(y, i);
    if (factor(i)->dist(xi, yi, factor_eps / 4).certainly_less(factor_eps)) continue;
    auto w = factor(i)->orbit_hint(xi, yi, factor_eps);
    if (!w) return std::nullopt;
    word = word.with_factor(i, w->factor(1));
  }
  return word;
}

std::vector<double> ProductSystem::render(const Point& p) const {
  const ProductCoords& c = product_coords(p, count_);
  std::vector<double> out;
  for (std::size_t i = 1; i <= sampled_factors(); ++i) {
    auto r = factor(i)->render(coordinate(c, i));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

SystemHandle product_system(std::vector<SystemHandle> factors) {
  if (factors.size() == 1) return factors.front();
  return std::make_shared<const ProductSystem>(std::move(factors));
}

}  // namespace chaoslab
