#include "chaoslab/metric_product.hpp"

namespace chaoslab {

Rat tilde(const Rat& d) {
  if (sgn(d) < 0) throw Error(ErrorCode::negative_distance, "distance " + to_string(d) + " < 0");
  Rat r = d / (Rat(1) + d);
  r.canonicalize();
  return r;
}

ExactDist tilde(const ExactDist& d) {
  if (d.is_exact()) return ExactDist::exact(tilde(d.lo()));
  // d/(1+d) is increasing, so the enclosure maps endpoint to endpoint.
  return ExactDist::interval(tilde(d.lo()), tilde(d.hi()));
}

Rat tilde_inverse(const Rat& b) {
  if (sgn(b) < 0 || b >= 1)
    throw Error(ErrorCode::invalid_argument, "bounded distance must lie in [0, 1)");
  Rat r = b / (Rat(1) - b);
  r.canonicalize();
  return r;
}

Rat truncation_bound(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::invalid_argument, "truncation index must be >= 1");
  return pow2(-m);
}

Rat factor_tolerance(const Rat& tol, std::size_t factor) {
  return tol * pow2(-static_cast<std::int64_t>(factor) + 1);
}

}  // namespace chaoslab
