#pragma once

// Exact rational dynamics on the torus R^2/Z^2, drawn as the square
// [-1/2, 1/2) x [-1/2, 1/2): Anosov automorphisms, the toral linked twist
// map on the union of two annuli, and its quotient by (x, y) ~ (-x, -y).

#include <string>
#include <string_view>

#include "chaoslab/rational.hpp"

namespace chaoslab {

class TorusPoint {
public:
  /// Reduces both coordinates mod 1 into [-1/2, 1/2).
  TorusPoint(const Rat& x = 0, const Rat& y = 0);

  const Rat& x() const noexcept { return x_; }
  const Rat& y() const noexcept { return y_; }

  TorusPoint operator-() const { return TorusPoint(-x_, -y_); }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

private:
  Rat x_;
  Rat y_;
};

/// Flat max-norm distance on the torus; exact and bounded by 1/2.
Rat torus_dist(const TorusPoint& a, const TorusPoint& b);

std::string to_string(const TorusPoint& p);
/// Parses "p/q, r/s".
TorusPoint parse_torus_point(std::string_view text);

/// Integer matrix (a b; c d) with ad - bc = 1 and a + d > 2.
class AnosovMatrix {
public:
  /// Throws ConstructorPrecondition unless ad - bc = 1 and a + d > 2.
  AnosovMatrix(long a, long b, long c, long d);

  /// The family (1 k; m 1+km) with k, m >= 3.
  static AnosovMatrix from_km(long k, long m);

  long a() const noexcept { return a_; }
  long b() const noexcept { return b_; }
  long c() const noexcept { return c_; }
  long d() const noexcept { return d_; }
  long det() const noexcept { return a_ * d_ - b_ * c_; }
  long trace() const noexcept { return a_ + d_; }

  AnosovMatrix inverse() const { return AnosovMatrix(d_, -b_, -c_, a_); }

  friend bool operator==(const AnosovMatrix&, const AnosovMatrix&) = default;

private:
  long a_, b_, c_, d_;
};

TorusPoint anosov_apply(const AnosovMatrix& A, const TorusPoint& p);

/// Parameters of the linked twist: annuli P = {|y| <= 1/k}, Q = {|x| <= 1/m}.
struct TwistParams {
  long k;
  long m;
};

/// Throws InvalidArgument unless k, m >= 3.
void validate(const TwistParams& params);

bool in_P(const TorusPoint& p, long k);
bool in_Q(const TorusPoint& p, long m);
bool in_R(const TorusPoint& p, long k, long m);

/// (x + k y, y) on P, identity on R \ P. Throws OutsideDomain off R.
TorusPoint twist_f(const TorusPoint& p, long k, long m);
/// (x, y + m x) on Q, identity on R \ Q. Throws OutsideDomain off R.
TorusPoint twist_h(const TorusPoint& p, long k, long m);

/// h o f on R, extended by the identity to the rest of the torus.
TorusPoint linked_twist(const TorusPoint& p, long k, long m);
TorusPoint linked_twist_inverse(const TorusPoint& p, long k, long m);

/// Half-width of the square around (0, 0) on which the linked twist agrees
/// with the linear map A(k, m): for |x|, |y| <= r the point lies in P and
/// f(p) lies in Q. r = 1/(m(k + 1)).
Rat local_linear_radius(long k, long m);

/// A point of the pillow T^2 / (p ~ -p), stored as a canonical lift:
/// y in (0, 1/2), or y in {0, -1/2} with x in [0, 1/2) or x = -1/2.
class PillowPoint {
public:
  explicit PillowPoint(const TorusPoint& lift = {});

  const TorusPoint& lift() const noexcept { return lift_; }
  /// One of the four classes fixed by p -> -p.
  bool singular() const;

  friend bool operator==(const PillowPoint&, const PillowPoint&) = default;

private:
  TorusPoint lift_;
};

PillowPoint pillow_project(const TorusPoint& p);

/// Quotient distance min(d(a, b), d(a, -b)).
Rat pillow_dist(const PillowPoint& a, const PillowPoint& b);

bool in_disk(const PillowPoint& q, long k, long m);

/// The map induced on the disk p(R): lift, apply the linked twist, project.
/// Throws OutsideDisk when q is not in p(R).
PillowPoint disk_map(const PillowPoint& q, long k, long m);
PillowPoint disk_map_inverse(const PillowPoint& q, long k, long m);

std::string to_string(const PillowPoint& p);
PillowPoint parse_pillow_point(std::string_view text);

}  // namespace chaoslab
