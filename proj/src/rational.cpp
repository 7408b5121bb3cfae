#include "chaoslab/rational.hpp"

#include <cctype>

namespace chaoslab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse: return "Parse";
    case ErrorCode::alphabet_mismatch: return "AlphabetMismatch";
    case ErrorCode::negative_distance: return "NegativeDistance";
    case ErrorCode::negative_tolerance: return "NegativeTolerance";
    case ErrorCode::factor_mismatch: return "FactorMismatch";
    case ErrorCode::signature_mismatch: return "SignatureMismatch";
    case ErrorCode::budget_too_large: return "BudgetTooLarge";
    case ErrorCode::exact_equality_unsupported: return "ExactEqualityUnsupported";
    case ErrorCode::outside_domain: return "OutsideDomain";
    case ErrorCode::outside_disk: return "OutsideDisk";
    case ErrorCode::no_oracle: return "NoOracle";
    case ErrorCode::missing_fixed_point: return "MissingFixedPoint";
    case ErrorCode::config_parse: return "ConfigParse";
    case ErrorCode::constructor_precondition: return "ConstructorPrecondition";
  }
  return "Unknown";
}

Rat make_rat(long num, long den) {
  if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw Error(ErrorCode::parse, "empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw Error(ErrorCode::parse, "malformed rational '" + s + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorCode::parse, "zero denominator in '" + s + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(); }

double to_double(const Rat& value) { return value.get_d(); }

Rat pow2(std::int64_t e) {
  mpz_class p(1);
  if (e >= 0) {
    p <<= static_cast<mp_bitcnt_t>(e);
    return Rat(p);
  }
  p <<= static_cast<mp_bitcnt_t>(-e);
  Rat r(mpz_class(1), p);
  return r;
}

mpz_class floor(const Rat& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rat wrap_centered(const Rat& value) {
  Rat shifted = value + Rat(1, 2);
  Rat r = value - Rat(floor(shifted));
  r.canonicalize();
  return r;
}

Rat dist_to_integer(const Rat& value) { return abs(wrap_centered(value)); }

std::int64_t dyadic_exponent_at_most(const Rat& bound) {
  if (sgn(bound) <= 0) throw Error(ErrorCode::invalid_argument, "dyadic bound must be positive");
  std::int64_t m = 0;
  Rat p(1);
  while (p > bound) {
    p /= 2;
    ++m;
  }
  return m;
}

std::int64_t dyadic_exponent_below(const Rat& bound) {
  if (sgn(bound) <= 0) throw Error(ErrorCode::invalid_argument, "dyadic bound must be positive");
  std::int64_t m = 0;
  Rat p(1);
  while (p >= bound) {
    p /= 2;
    ++m;
  }
  return m;
}

SqrtEnclosure sqrt_enclosure(const Rat& value, const Rat& tol) {
  if (sgn(value) < 0) throw Error(ErrorCode::invalid_argument, "sqrt of negative value");
  if (sgn(tol) <= 0) throw Error(ErrorCode::negative_tolerance, "tolerance must be positive");
  // sqrt(a/b) = sqrt(a*b)/b; scale by 2^k so that 1/(b*2^k) <= tol.
  const mpz_class& a = value.get_num();
  const mpz_class& b = value.get_den();
  std::int64_t k = 0;
  while (Rat(mpz_class(1), b * (mpz_class(1) << static_cast<mp_bitcnt_t>(k))) > tol) ++k;
  mpz_class scale = mpz_class(1) << static_cast<mp_bitcnt_t>(k);
  mpz_class radicand = a * b * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  mpz_class denom = b * scale;
  Rat lo(root, denom);
  lo.canonicalize();
  if (root * root == radicand) return {lo, lo};
  Rat hi(root + 1, denom);
  hi.canonicalize();
  return {lo, hi};
}

ExactDist ExactDist::exact(Rat value) {
  ExactDist d;
  d.kind_ = Kind::exact;
  d.lo_ = value;
  d.hi_ = std::move(value);
  return d;
}

ExactDist ExactDist::interval(Rat lo, Rat hi) {
  if (lo > hi) throw Error(ErrorCode::invalid_argument, "interval with lo > hi");
  if (lo == hi) return exact(std::move(lo));
  ExactDist d;
  d.kind_ = Kind::interval;
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

Rat ExactDist::value() const {
  if (kind_ == Kind::exact) return lo_;
  Rat mid = (lo_ + hi_) / 2;
  return mid;
}

ExactDist& ExactDist::operator+=(const ExactDist& other) {
  lo_ += other.lo_;
  hi_ += other.hi_;
  kind_ = (kind_ == Kind::exact && other.kind_ == Kind::exact) ? Kind::exact : Kind::interval;
  if (lo_ == hi_) kind_ = Kind::exact;
  return *this;
}

ExactDist operator*(const Rat& scale, const ExactDist& d) {
  if (sgn(scale) < 0) throw Error(ErrorCode::invalid_argument, "negative distance scale");
  if (d.is_exact()) return ExactDist::exact(scale * d.lo());
  return ExactDist::interval(scale * d.lo(), scale * d.hi());
}

std::string to_string(const ExactDist& d) {
  if (d.is_exact()) return to_string(d.lo());
  return "[" + to_string(d.lo()) + ", " + to_string(d.hi()) + "]";
}

}  // namespace chaoslab
