#include "chaoslab/systems.hpp"

#include <algorithm>

#include "chaoslab/text.hpp"

namespace chaoslab {

namespace {

Rat random_rat(Rng& rng, long lo_num, long hi_num, long den) {
  std::uniform_int_distribution<long> pick(lo_num, hi_num);
  return make_rat(pick(rng), den);
}

Word random_word(Rng& rng, int n, std::size_t len) {
  std::uniform_int_distribution<int> sym(1, n);
  Word w(len);
  for (auto& s : w) s = sym(rng);
  return w;
}

// ---------------------------------------------------------------- shift

class ShiftSystem final : public BaseSystem {
public:
  explicit ShiftSystem(int n) : n_(n) {
    if (n < 2) throw Error(ErrorCode::constructor_precondition, "shift needs N >= 2");
  }

  std::string name() const override { return "shift(" + std::to_string(n_) + ")"; }
  std::vector<std::string> generator_names(std::size_t) const override { return {"g"}; }

  Point apply(std::uint32_t, std::int64_t power, const Point& x) const override {
    return shift(seq(x), power);
  }

  ExactDist dist(const Point& a, const Point& b, const Rat& tol) const override {
    return rho(seq(a), seq(b), tol);
  }

  // Copies the center on [-m, m] with m = ceil(log2(1/r)) + 1 and
  // randomizes everything else, so rho(center, result) <= 2^-m < r.
  Point sample_ball(const Point& center, const Rat& radius, Rng& rng) const override {
    const BiSeq& c = seq(center);
    std::int64_t m = 1;
    if (radius < 1) m = dyadic_exponent_at_most(radius) + 1;
    std::uniform_int_distribution<std::int64_t> extra(1, 4);
    std::uniform_int_distribution<std::size_t> tail_len(1, 3);
    const std::int64_t w = m + extra(rng);
    Word block;
    std::uniform_int_distribution<int> sym(1, n_);
    for (std::int64_t i = -w; i <= w; ++i) block.push_back(i >= -m && i <= m ? c.at(i) : sym(rng));
    return BiSeq::periodic_tails(n_, random_word(rng, n_, tail_len(rng)), std::move(block), -w,
                                 random_word(rng, n_, tail_len(rng)));
  }

  Point sample_point(Rng& rng) const override {
    std::uniform_int_distribution<std::int64_t> radius(3, 8);
    std::uniform_int_distribution<std::size_t> tail_len(1, 4);
    const std::int64_t w = radius(rng);
    return BiSeq::periodic_tails(n_, random_word(rng, n_, tail_len(rng)),
                                 random_word(rng, n_, static_cast<std::size_t>(2 * w + 1)), -w,
                                 random_word(rng, n_, tail_len(rng)));
  }

  Point parse_point(std::string_view text) const override {
    BiSeq s = parse_biseq(text);
    if (s.alphabet_size() != n_)
      throw Error(ErrorCode::alphabet_mismatch, "point over a different alphabet");
    return s;
  }

  Point base_point() const override { return BiSeq::constant(n_, 1); }
  std::optional<Point> fixed_point() const override { return base_point(); }
  std::optional<Point> dense_orbit_seed() const override { return chaoslab::dense_orbit_seed(n_); }
  std::optional<Point> periodic_point_near(const Point& x, const Rat& eps) const override {
    return chaoslab::periodic_point_near(seq(x), eps);
  }
  bool has_periodic_oracle() const override { return true; }
  std::optional<Rat> sensitivity_constant() const override { return Rat(1, 2); }

  // From the dense-tail point: jump to where the target's central block
  // occurs as an entry of the concatenation.
  std::optional<GroupWord> orbit_hint(const Point& from, const Point& target,
                                      const Rat& eps) const override {
    const BiSeq& s = seq(from);
    if (s.eventually_periodic()) return std::nullopt;
    const std::int64_t m = periodic_window_radius(eps);
    auto pos = dense_word_position(n_, window(seq(target), m));
    if (!pos) return std::nullopt;
    return GroupWord::cyclic(1, {{1, *pos + m - s.dense_shift()}});
  }

  // u copies uc on [-mu, mu] and vc's block right after it; shifting by
  // mu + mv + 1 centers that block.
  std::optional<std::pair<GroupWord, Point>> transit_hint(const Point& uc, const Rat& ur,
                                                          const Point& vc,
                                                          const Rat& vr) const override {
    const std::int64_t mu = periodic_window_radius(ur);
    const std::int64_t mv = periodic_window_radius(vr);
    Word center = window(seq(uc), mu);
    Word tail = window(seq(vc), mv);
    center.insert(center.end(), tail.begin(), tail.end());
    Point u = BiSeq::periodic_tails(n_, {1}, std::move(center), -mu, {1});
    return std::make_pair(GroupWord::cyclic(1, {{1, mu + mv + 1}}), u);
  }

  std::vector<double> render(const Point& p) const override {
    return {to_double(cantor_encode(seq(p), 24))};
  }

private:
  static Word window(const BiSeq& s, std::int64_t m) {
    Word w;
    for (std::int64_t i = -m; i <= m; ++i) w.push_back(s.at(i));
    return w;
  }

  const BiSeq& seq(const Point& p) const {
    const BiSeq& s = p.as<BiSeq>();
    if (s.alphabet_size() != n_)
      throw Error(ErrorCode::alphabet_mismatch, "point over a different alphabet");
    return s;
  }

  int n_;
};

// ---------------------------------------------------------------- torus family

// Shared sampling and oracle logic for maps on the torus (or its pillow
// quotient), all with the max-norm torus metric.
class TorusLikeSystem : public BaseSystem {
public:
  std::vector<std::string> generator_names(std::size_t) const override { return {"g"}; }

  Point sample_ball(const Point& center, const Rat& radius, Rng& rng) const override {
    const TorusPoint c = lift(center);
    std::uniform_int_distribution<long> den_pick(256, 4096);
    for (int attempt = 0; attempt < 64; ++attempt) {
      long den = den_pick(rng);
      // |offset| <= (ceil(r * den) - 1)/den < r.
      Rat scaled = radius * den;
      long reach = static_cast<long>(floor(scaled).get_si());
      if (Rat(reach) == scaled) --reach;
      reach = std::min(reach, den / 2);
      if (reach <= 0) continue;
      TorusPoint q(c.x() + random_rat(rng, -reach, reach, den),
                   c.y() + random_rat(rng, -reach, reach, den));
      if (in_universe(q)) return wrap(q);
    }
    return center;
  }

  Point sample_point(Rng& rng) const override {
    std::uniform_int_distribution<long> den_pick(16, 1024);
    for (;;) {
      long den = den_pick(rng);
      TorusPoint q(random_rat(rng, -den / 2, den / 2, den), random_rat(rng, -den / 2, den / 2, den));
      if (in_universe(q)) return wrap(q);
    }
  }

  Point base_point() const override { return wrap(TorusPoint()); }
  std::optional<Point> fixed_point() const override { return base_point(); }

  // Rational points have finite orbits (the maps preserve denominators), so
  // the nearest point of a fine enough lattice is a periodic point. The
  // lattice step divides 1/(km) so the closed annuli stay lattice-aligned.
  std::optional<Point> periodic_point_near(const Point& x, const Rat& eps) const override {
    const TorusPoint c = lift(x);
    const long step = lattice_unit();
    long q = step;
    while (Rat(1, static_cast<unsigned long>(2 * q)) >= eps) q += step;
    auto round_to = [q](const Rat& v) {
      Rat scaled = v * q + Rat(1, 2);
      Rat r(mpz_class(floor(scaled)), mpz_class(q));
      r.canonicalize();
      return r;
    };
    TorusPoint r(round_to(c.x()), round_to(c.y()));
    return wrap(r);
  }
  bool has_periodic_oracle() const override { return true; }
  // Max-norm torus distances never exceed 1/2.
  bool bounded_metric() const override { return true; }

  Point parse_point(std::string_view text) const override { return wrap(parse_torus_point(text)); }

  std::vector<double> render(const Point& p) const override {
    const TorusPoint t = lift(p);
    return {to_double(t.x()), to_double(t.y())};
  }

protected:
  virtual TorusPoint lift(const Point& p) const { return p.as<TorusPoint>(); }
  virtual Point wrap(const TorusPoint& t) const { return t; }
  virtual bool in_universe(const TorusPoint&) const { return true; }
  virtual long lattice_unit() const { return 1; }
};

class AnosovSystem final : public TorusLikeSystem {
public:
  explicit AnosovSystem(const AnosovMatrix& a) : a_(a), inv_(a.inverse()) {}

  std::string name() const override {
    if (a_.a() == 1 && a_.b() >= 3 && a_.c() >= 3 && a_.d() == 1 + a_.b() * a_.c())
      return "anosov(" + std::to_string(a_.b()) + "," + std::to_string(a_.c()) + ")";
    return "anosov(" + std::to_string(a_.a()) + "," + std::to_string(a_.b()) + "," +
           std::to_string(a_.c()) + "," + std::to_string(a_.d()) + ")";
  }

  Point apply(std::uint32_t, std::int64_t power, const Point& x) const override {
    TorusPoint p = x.as<TorusPoint>();
    const AnosovMatrix& m = power >= 0 ? a_ : inv_;
    for (std::int64_t i = 0; i < (power < 0 ? -power : power); ++i) p = anosov_apply(m, p);
    return p;
  }

  ExactDist dist(const Point& a, const Point& b, const Rat&) const override {
    return ExactDist::exact(torus_dist(a.as<TorusPoint>(), b.as<TorusPoint>()));
  }

  std::optional<Rat> sensitivity_constant() const override { return Rat(1, 4); }

private:
  AnosovMatrix a_;
  AnosovMatrix inv_;
};

class LinkedTwistSystem final : public TorusLikeSystem {
public:
  LinkedTwistSystem(long k, long m) : k_(k), m_(m) {
    if (k < 3 || m < 3) throw Error(ErrorCode::constructor_precondition, "linked twist needs k, m >= 3");
  }

  std::string name() const override {
    return "linked_twist(" + std::to_string(k_) + "," + std::to_string(m_) + ")";
  }

  Point apply(std::uint32_t, std::int64_t power, const Point& x) const override {
    TorusPoint p = x.as<TorusPoint>();
    for (std::int64_t i = 0; i < (power < 0 ? -power : power); ++i)
      p = power > 0 ? linked_twist(p, k_, m_) : linked_twist_inverse(p, k_, m_);
    return p;
  }

  ExactDist dist(const Point& a, const Point& b, const Rat&) const override {
    return ExactDist::exact(torus_dist(a.as<TorusPoint>(), b.as<TorusPoint>()));
  }

  std::optional<Rat> sensitivity_constant() const override { return Rat(1, 8); }

protected:
  bool in_universe(const TorusPoint& t) const override { return in_R(t, k_, m_); }
  long lattice_unit() const override { return k_ * m_; }

private:
  long k_, m_;
};

class DiskSystem final : public TorusLikeSystem {
public:
  DiskSystem(long k, long m) : k_(k), m_(m) {
    if (k < 3 || m < 3) throw Error(ErrorCode::constructor_precondition, "disk map needs k, m >= 3");
  }

  std::string name() const override {
    return "disk(" + std::to_string(k_) + "," + std::to_string(m_) + ")";
  }

  Point apply(std::uint32_t, std::int64_t power, const Point& x) const override {
    PillowPoint p = x.as<PillowPoint>();
    for (std::int64_t i = 0; i < (power < 0 ? -power : power); ++i)
      p = power > 0 ? disk_map(p, k_, m_) : disk_map_inverse(p, k_, m_);
    return p;
  }

  ExactDist dist(const Point& a, const Point& b, const Rat&) const override {
    return ExactDist::exact(pillow_dist(a.as<PillowPoint>(), b.as<PillowPoint>()));
  }

  std::optional<Rat> sensitivity_constant() const override { return Rat(1, 8); }

protected:
  TorusPoint lift(const Point& p) const override { return p.as<PillowPoint>().lift(); }
  Point wrap(const TorusPoint& t) const override { return pillow_project(t); }
  bool in_universe(const TorusPoint& t) const override { return in_R(t, k_, m_); }
  long lattice_unit() const override { return k_ * m_; }

private:
  long k_, m_;
};

// ---------------------------------------------------------------- affine

class AffineSystem final : public BaseSystem {
public:
  AffineSystem(int n, std::optional<Rat> lambda) : n_(n), lambda_(std::move(lambda)) {
    if (n < 1) throw Error(ErrorCode::constructor_precondition, "affine system needs n >= 1");
    if (lambda_ && *lambda_ <= 1)
      throw Error(ErrorCode::constructor_precondition, "scaling factor must be > 1");
  }

  std::string name() const override {
    if (!lambda_) return "translation(" + std::to_string(n_) + ")";
    return "affine(" + std::to_string(n_) + "," + to_string(*lambda_) + ")";
  }

  std::vector<std::string> generator_names(std::size_t) const override {
    std::vector<std::string> names;
    for (int k = 1; k <= n_; ++k) names.push_back("t" + std::to_string(k));
    if (lambda_) names.push_back("s");
    return names;
  }

  Point apply(std::uint32_t gen, std::int64_t power, const Point& x) const override {
    AffinePoint p = coords(x);
    if (gen < static_cast<std::uint32_t>(n_)) {
      p.coords[gen] += power;
    } else {
      Rat factor = 1;
      const Rat base = power >= 0 ? *lambda_ : Rat(1 / *lambda_);
      for (std::int64_t i = 0; i < (power < 0 ? -power : power); ++i) factor *= base;
      for (auto& c : p.coords) c *= factor;
    }
    return p;
  }

  ExactDist dist(const Point& a, const Point& b, const Rat& tol) const override {
    const AffinePoint& p = coords(a);
    const AffinePoint& q = coords(b);
    Rat sq = 0;
    for (int i = 0; i < n_; ++i) {
      Rat d = p.coords[static_cast<std::size_t>(i)] - q.coords[static_cast<std::size_t>(i)];
      sq += d * d;
    }
    auto enc = sqrt_enclosure(sq, tol);
    if (enc.lo == enc.hi) return ExactDist::exact(enc.lo);
    return ExactDist::interval(enc.lo, enc.hi);
  }

  // Offsets with sum |a_i| < r keep the Euclidean distance below r.
  Point sample_ball(const Point& center, const Rat& radius, Rng& rng) const override {
    AffinePoint p = coords(center);
    std::uniform_int_distribution<long> den_pick(64, 1024);
    const long den = den_pick(rng);
    Rat per = radius / n_;
    Rat scaled = per * den;
    long reach = static_cast<long>(floor(scaled).get_si());
    if (Rat(reach) == scaled) --reach;
    if (reach <= 0) return center;
    for (auto& c : p.coords) c += random_rat(rng, -reach, reach, den);
    return p;
  }

  Point sample_point(Rng& rng) const override {
    AffinePoint p;
    std::uniform_int_distribution<long> den_pick(1, 16);
    for (int i = 0; i < n_; ++i) {
      long den = den_pick(rng);
      p.coords.push_back(random_rat(rng, -2 * den, 2 * den, den));
    }
    return p;
  }

  Point parse_point(std::string_view text) const override {
    std::string_view t = trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
      throw Error(ErrorCode::parse, "affine point must be written (x1, ..., xn)");
    AffinePoint p;
    for (auto part : split(t.substr(1, t.size() - 2), ',')) p.coords.push_back(parse_rat(part));
    if (static_cast<int>(p.coords.size()) != n_)
      throw Error(ErrorCode::parse, "affine point has the wrong dimension");
    return p;
  }

  Point base_point() const override { return AffinePoint{std::vector<Rat>(static_cast<std::size_t>(n_))}; }

  // Every orbit of the full affine example is dense, so any point serves.
  std::optional<Point> dense_orbit_seed() const override {
    if (!lambda_) return std::nullopt;
    AffinePoint p{std::vector<Rat>(static_cast<std::size_t>(n_))};
    p.coords[0] = 1;
    return Point(p);
  }

  std::vector<double> render(const Point& x) const override {
    std::vector<double> out;
    for (const auto& c : coords(x).coords) out.push_back(to_double(c));
    return out;
  }

private:
  const AffinePoint& coords(const Point& x) const {
    const AffinePoint& p = x.as<AffinePoint>();
    if (static_cast<int>(p.coords.size()) != n_)
      throw Error(ErrorCode::invalid_argument, "affine point has the wrong dimension");
    return p;
  }

  int n_;
  std::optional<Rat> lambda_;
};

// ---------------------------------------------------------------- identity

class IdentitySystem final : public BaseSystem {
public:
  explicit IdentitySystem(SystemHandle inner) : inner_(std::move(inner)) {
    if (!inner_ || inner_->rank() != 1)
      throw Error(ErrorCode::constructor_precondition, "identity wraps a single-factor system");
  }

  std::string name() const override { return "identity(" + inner_->name() + ")"; }
  std::vector<std::string> generator_names(std::size_t) const override { return {"e"}; }
  Point apply(std::uint32_t, std::int64_t, const Point& x) const override { return x; }
  ExactDist dist(const Point& a, const Point& b, const Rat& tol) const override {
    return inner_->dist(a, b, tol);
  }
  Point sample_ball(const Point& c, const Rat& r, Rng& rng) const override {
    return inner_->sample_ball(c, r, rng);
  }
  Point sample_point(Rng& rng) const override { return inner_->sample_point(rng); }
  Point parse_point(std::string_view text) const override { return inner_->parse_point(text); }
  Point base_point() const override { return inner_->base_point(); }
  std::optional<Point> fixed_point() const override { return base_point(); }
  std::optional<Point> dense_orbit_seed() const override { return inner_->dense_orbit_seed(); }
  // Every point is fixed.
  std::optional<Point> periodic_point_near(const Point& x, const Rat&) const override { return x; }
  bool has_periodic_oracle() const override { return true; }
  bool exact_equality() const override { return inner_->exact_equality(); }
  bool bounded_metric() const override { return inner_->bounded_metric(); }
  std::vector<double> render(const Point& p) const override { return inner_->render(p); }

private:
  SystemHandle inner_;
};

// ---------------------------------------------------------------- spec parsing

struct Call {
  std::string head;
  std::vector<std::string_view> args;
};

Call parse_call(std::string_view spec) {
  spec = trim(spec);
  auto open = spec.find('(');
  if (open == std::string_view::npos || spec.back() != ')')
    throw Error(ErrorCode::parse, "system spec must look like kind(args): '" + std::string(spec) + "'");
  Call c;
  c.head = std::string(trim(spec.substr(0, open)));
  std::string_view inner = spec.substr(open + 1, spec.size() - open - 2);
  if (!trim(inner).empty()) c.args = split_top_level(inner, ',');
  return c;
}

void expect_args(const Call& c, std::initializer_list<std::size_t> counts) {
  for (std::size_t n : counts)
    if (c.args.size() == n) return;
  throw Error(ErrorCode::parse, c.head + " given " + std::to_string(c.args.size()) + " arguments");
}

}  // namespace

SystemHandle shift_system(int alphabet_size) { return std::make_shared<ShiftSystem>(alphabet_size); }

SystemHandle anosov_system(const AnosovMatrix& matrix) {
  return std::make_shared<AnosovSystem>(matrix);
}

SystemHandle linked_twist_system(long k, long m) {
  return std::make_shared<LinkedTwistSystem>(k, m);
}

SystemHandle disk_system(long k, long m) { return std::make_shared<DiskSystem>(k, m); }

SystemHandle affine_example_system(int n, const Rat& lambda) {
  return std::make_shared<AffineSystem>(n, lambda);
}

SystemHandle translation_system(int n) { return std::make_shared<AffineSystem>(n, std::nullopt); }

SystemHandle identity_system(SystemHandle inner) {
  return std::make_shared<IdentitySystem>(std::move(inner));
}

SystemHandle make_system(std::string_view spec) {
  Call c = parse_call(spec);
  auto arg_int = [&](std::size_t i) { return parse_int(c.args[i]); };
  if (c.head == "shift") {
    expect_args(c, {1});
    return shift_system(static_cast<int>(arg_int(0)));
  }
  if (c.head == "anosov") {
    expect_args(c, {2, 4});
    if (c.args.size() == 2) return anosov_system(AnosovMatrix::from_km(arg_int(0), arg_int(1)));
    return anosov_system(AnosovMatrix(arg_int(0), arg_int(1), arg_int(2), arg_int(3)));
  }
  if (c.head == "linked_twist") {
    expect_args(c, {2});
    return linked_twist_system(arg_int(0), arg_int(1));
  }
  if (c.head == "disk") {
    expect_args(c, {2});
    return disk_system(arg_int(0), arg_int(1));
  }
  if (c.head == "affine") {
    expect_args(c, {2});
    return affine_example_system(static_cast<int>(arg_int(0)), parse_rat(c.args[1]));
  }
  if (c.head == "translation") {
    expect_args(c, {1});
    return translation_system(static_cast<int>(arg_int(0)));
  }
  if (c.head == "identity") {
    expect_args(c, {1});
    return identity_system(make_system(c.args[0]));
  }
  if (c.head == "product" || c.head == "cycle") {
    if (c.args.empty()) throw Error(ErrorCode::parse, c.head + " needs at least one factor");
    std::vector<SystemHandle> factors;
    for (auto a : c.args) factors.push_back(make_system(a));
    if (c.head == "cycle") return ProductSystem::countable_cycle(std::move(factors));
    return std::make_shared<const ProductSystem>(std::move(factors));
  }
  throw Error(ErrorCode::parse, "unknown system kind '" + c.head + "'");
}

}  // namespace chaoslab
