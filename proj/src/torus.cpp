#include "chaoslab/torus.hpp"

#include <algorithm>

#include "chaoslab/text.hpp"

namespace chaoslab {

namespace {

const Rat kHalf(1, 2);
const Rat kMinusHalf(-1, 2);

}  // namespace

TorusPoint::TorusPoint(const Rat& x, const Rat& y) : x_(wrap_centered(x)), y_(wrap_centered(y)) {}

Rat torus_dist(const TorusPoint& a, const TorusPoint& b) {
  Rat dx = dist_to_integer(a.x() - b.x());
  Rat dy = dist_to_integer(a.y() - b.y());
  return dx > dy ? dx : dy;
}

std::string to_string(const TorusPoint& p) { return to_string(p.x()) + ", " + to_string(p.y()); }

TorusPoint parse_torus_point(std::string_view text) {
  std::string_view t = trim(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  auto parts = split(t, ',');
  if (parts.size() != 2)
    throw Error(ErrorCode::parse, "torus point needs two coordinates: '" + std::string(text) + "'");
  return TorusPoint(parse_rat(parts[0]), parse_rat(parts[1]));
}

AnosovMatrix::AnosovMatrix(long a, long b, long c, long d) : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c != 1 || a + d <= 2)
    throw Error(ErrorCode::constructor_precondition,
                "anosov matrix (" + std::to_string(a) + " " + std::to_string(b) + "; " +
                    std::to_string(c) + " " + std::to_string(d) +
                    ") must satisfy ad - bc = 1 and a + d > 2");
}

AnosovMatrix AnosovMatrix::from_km(long k, long m) {
  if (k < 3 || m < 3)
    throw Error(ErrorCode::constructor_precondition, "A(k, m) needs k, m >= 3");
  return AnosovMatrix(1, k, m, 1 + k * m);
}

TorusPoint anosov_apply(const AnosovMatrix& A, const TorusPoint& p) {
  return TorusPoint(A.a() * p.x() + A.b() * p.y(), A.c() * p.x() + A.d() * p.y());
}

void validate(const TwistParams& params) {
  if (params.k < 3 || params.m < 3)
    throw Error(ErrorCode::invalid_argument, "linked twist needs k, m >= 3");
}

bool in_P(const TorusPoint& p, long k) { return abs(p.y()) * k <= 1; }

bool in_Q(const TorusPoint& p, long m) { return abs(p.x()) * m <= 1; }

bool in_R(const TorusPoint& p, long k, long m) { return in_P(p, k) || in_Q(p, m); }

TorusPoint twist_f(const TorusPoint& p, long k, long m) {
  validate({k, m});
  if (!in_R(p, k, m)) throw Error(ErrorCode::outside_domain, "twist_f outside R: " + to_string(p));
  if (in_P(p, k)) return TorusPoint(p.x() + k * p.y(), p.y());
  return p;
}

TorusPoint twist_h(const TorusPoint& p, long k, long m) {
  validate({k, m});
  if (!in_R(p, k, m)) throw Error(ErrorCode::outside_domain, "twist_h outside R: " + to_string(p));
  if (in_Q(p, m)) return TorusPoint(p.x(), p.y() + m * p.x());
  return p;
}

TorusPoint linked_twist(const TorusPoint& p, long k, long m) {
  validate({k, m});
  if (!in_R(p, k, m)) return p;
  return twist_h(twist_f(p, k, m), k, m);
}

TorusPoint linked_twist_inverse(const TorusPoint& p, long k, long m) {
  validate({k, m});
  if (!in_R(p, k, m)) return p;
  TorusPoint q = in_Q(p, m) ? TorusPoint(p.x(), p.y() - m * p.x()) : p;
  return in_P(q, k) ? TorusPoint(q.x() - k * q.y(), q.y()) : q;
}

Rat local_linear_radius(long k, long m) {
  validate({k, m});
  return Rat(1, static_cast<unsigned long>(m * (k + 1)));
}

PillowPoint::PillowPoint(const TorusPoint& lift) : lift_(lift) {
  const Rat& x = lift.x();
  const Rat& y = lift.y();
  const bool seam_row = (y == 0 || y == kMinusHalf);
  if (!seam_row && sgn(y) < 0)
    lift_ = -lift;
  else if (seam_row && sgn(x) < 0 && x != kMinusHalf)
    lift_ = -lift;
}

bool PillowPoint::singular() const {
  auto special = [](const Rat& v) { return v == 0 || v == kMinusHalf; };
  return special(lift_.x()) && special(lift_.y());
}

PillowPoint pillow_project(const TorusPoint& p) { return PillowPoint(p); }

Rat pillow_dist(const PillowPoint& a, const PillowPoint& b) {
  Rat d1 = torus_dist(a.lift(), b.lift());
  Rat d2 = torus_dist(a.lift(), -b.lift());
  return d1 < d2 ? d1 : d2;
}

bool in_disk(const PillowPoint& q, long k, long m) { return in_R(q.lift(), k, m); }

PillowPoint disk_map(const PillowPoint& q, long k, long m) {
  if (!in_disk(q, k, m)) throw Error(ErrorCode::outside_disk, "point not in p(R): " + to_string(q));
  return pillow_project(linked_twist(q.lift(), k, m));
}

PillowPoint disk_map_inverse(const PillowPoint& q, long k, long m) {
  if (!in_disk(q, k, m)) throw Error(ErrorCode::outside_disk, "point not in p(R): " + to_string(q));
  return pillow_project(linked_twist_inverse(q.lift(), k, m));
}

std::string to_string(const PillowPoint& p) { return to_string(p.lift()); }

PillowPoint parse_pillow_point(std::string_view text) {
  return PillowPoint(parse_torus_point(text));
}

}  // namespace chaoslab
