#include "chaoslab/symbolic_shift.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "chaoslab/text.hpp"

namespace chaoslab {

namespace {

// Periods above this make the closed-form tail sum impractical; rho falls
// back to a certified enclosure instead.
constexpr std::int64_t kMaxExactPeriod = 1 << 14;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
  }
  return w;
}

struct RawSeq {
  const Word& left;
  const Word& center;
  std::int64_t offset;
  const Word& right;

  Symbol operator()(std::int64_t i) const {
    const auto c = static_cast<std::int64_t>(center.size());
    if (i < offset) {
      const auto q = static_cast<std::int64_t>(left.size());
      return left[static_cast<std::size_t>(q - 1 - floor_mod(offset - 1 - i, q))];
    }
    if (i < offset + c) return center[static_cast<std::size_t>(i - offset)];
    const auto p = static_cast<std::int64_t>(right.size());
    return right[static_cast<std::size_t>(floor_mod(i - offset - c, p))];
  }
};

// Symbol at index j >= 0 of the length-lexicographic concatenation of all
// words over {1..n}; negative indices carry the constant 1.
Symbol dense_base(int n, std::int64_t j) {
  if (j < 0) return 1;
  using wide = __int128;
  wide pos = j;
  wide count = n;  // n^len
  std::int64_t len = 1;
  while (pos >= count * len) {
    pos -= count * len;
    ++len;
    count *= n;
  }
  wide word_index = pos / len;
  std::int64_t digit_pos = static_cast<std::int64_t>(pos % len);
  for (std::int64_t k = len - 1; k > digit_pos; --k) word_index /= n;
  return static_cast<Symbol>(word_index % n) + 1;
}

void validate_word(const Word& w, int n, const char* what) {
  for (Symbol s : w)
    if (s < 1 || s > n)
      throw Error(ErrorCode::invalid_argument,
                  std::string(what) + " symbol " + std::to_string(s) + " outside 1.." +
                      std::to_string(n));
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  std::int64_t l = a / g;
  if (l > kMaxExactPeriod / b + 1) return kMaxExactPeriod + 1;
  return l * b;
}

}  // namespace

BiSeq BiSeq::periodic_tails(int alphabet_size, Word left, Word center, std::int64_t offset,
                            Word right) {
  if (alphabet_size < 2) throw Error(ErrorCode::invalid_argument, "alphabet size must be >= 2");
  if (left.empty() || right.empty())
    throw Error(ErrorCode::invalid_argument, "periodic tails must be nonempty");
  validate_word(left, alphabet_size, "left");
  validate_word(center, alphabet_size, "center");
  validate_word(right, alphabet_size, "right");
  BiSeq s;
  s.n_ = alphabet_size;
  s.left_ = std::move(left);
  s.center_ = std::move(center);
  s.right_ = std::move(right);
  s.offset_ = offset;
  s.canonicalize();
  return s;
}

BiSeq BiSeq::constant(int alphabet_size, Symbol sym) {
  return periodic_tails(alphabet_size, {sym}, {}, 0, {sym});
}

BiSeq BiSeq::periodic(int alphabet_size, const Word& word, std::int64_t start) {
  return periodic_tails(alphabet_size, word, {}, start, word);
}

BiSeq BiSeq::dense_tail(int alphabet_size, std::int64_t shift) {
  if (alphabet_size < 2) throw Error(ErrorCode::invalid_argument, "alphabet size must be >= 2");
  BiSeq s;
  s.n_ = alphabet_size;
  s.dense_ = true;
  s.dense_shift_ = shift;
  return s;
}

void BiSeq::canonicalize() {
  left_ = primitive_root(left_);
  right_ = primitive_root(right_);
  const RawSeq raw{left_, center_, offset_, right_};
  const auto p = static_cast<std::int64_t>(right_.size());
  const auto q = static_cast<std::int64_t>(left_.size());
  const auto c = static_cast<std::int64_t>(center_.size());

  // First index from which the right period holds. If it reaches q + p into
  // the left tail, both periods agree on a long enough stretch that the
  // whole sequence is periodic.
  std::int64_t right_start = offset_ + c;
  bool pure = false;
  while (true) {
    if (right_start <= offset_ - (q + p)) {
      pure = true;
      break;
    }
    if (raw(right_start - 1) == raw(right_start - 1 + p))
      --right_start;
    else
      break;
  }

  if (pure) {
    Word w(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) w[static_cast<std::size_t>(i)] = raw(i);
    left_ = w;
    right_ = std::move(w);
    center_.clear();
    offset_ = 0;
    return;
  }

  // Last index up to which the left period holds.
  std::int64_t left_end = offset_ - 1;
  const std::int64_t guard = offset_ + c + p + q;
  while (left_end < guard && raw(left_end + 1) == raw(left_end + 1 - q)) ++left_end;

  const std::int64_t start = std::min(left_end + 1, right_start);
  Word new_left(static_cast<std::size_t>(q));
  for (std::int64_t i = 0; i < q; ++i) new_left[static_cast<std::size_t>(i)] = raw(start - q + i);
  Word new_center;
  for (std::int64_t i = start; i < right_start; ++i) new_center.push_back(raw(i));
  Word new_right(static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i < p; ++i)
    new_right[static_cast<std::size_t>(i)] = raw(right_start + i);
  left_ = std::move(new_left);
  center_ = std::move(new_center);
  right_ = std::move(new_right);
  offset_ = start;
}

Symbol BiSeq::at(std::int64_t i) const {
  if (dense_) return dense_base(n_, i + dense_shift_);
  return RawSeq{left_, center_, offset_, right_}(i);
}

Symbol symbol_at(const BiSeq& s, std::int64_t i) { return s.at(i); }

BiSeq shift(const BiSeq& s, std::int64_t k) {
  if (k == 0) return s;
  if (!s.eventually_periodic()) return BiSeq::dense_tail(s.alphabet_size(), s.dense_shift() + k);
  return BiSeq::periodic_tails(s.alphabet_size(), s.left_word(), s.center_word(),
                               s.offset() - k, s.right_word());
}

Rat rho_window(const BiSeq& s, const BiSeq& t, std::int64_t radius) {
  if (s.alphabet_size() != t.alphabet_size())
    throw Error(ErrorCode::alphabet_mismatch, "rho between different alphabets");
  mpz_class num = 0;
  for (std::int64_t i = -radius; i <= radius; ++i) {
    if (s.at(i) != t.at(i))
      num += mpz_class(1) << static_cast<mp_bitcnt_t>(radius - (i < 0 ? -i : i));
  }
  Rat r(num, mpz_class(1) << static_cast<mp_bitcnt_t>(radius + 1));
  r.canonicalize();
  return r;
}

ExactDist rho(const BiSeq& s, const BiSeq& t, const Rat& tol) {
  if (s.alphabet_size() != t.alphabet_size())
    throw Error(ErrorCode::alphabet_mismatch, "rho between different alphabets");
  if (sgn(tol) <= 0) throw Error(ErrorCode::negative_tolerance, "rho tolerance must be positive");
  if (s == t) return ExactDist::exact(Rat(0));

  if (s.eventually_periodic() && t.eventually_periodic()) {
    const auto ps = static_cast<std::int64_t>(s.right_word().size());
    const auto pt = static_cast<std::int64_t>(t.right_word().size());
    const auto qs = static_cast<std::int64_t>(s.left_word().size());
    const auto qt = static_cast<std::int64_t>(t.left_word().size());
    const std::int64_t right_period = checked_lcm(ps, pt);
    const std::int64_t left_period = checked_lcm(qs, qt);
    if (right_period <= kMaxExactPeriod && left_period <= kMaxExactPeriod) {
      const std::int64_t a = std::min({s.offset(), t.offset(), std::int64_t{0}});
      const std::int64_t b = std::max(
          {s.offset() + static_cast<std::int64_t>(s.center_word().size()),
           t.offset() + static_cast<std::int64_t>(t.center_word().size()), std::int64_t{1}});
      auto term = [](std::int64_t i) { return pow2(-(i < 0 ? -i : i) - 1); };

      Rat middle = 0;
      for (std::int64_t i = a; i < b; ++i)
        if (s.at(i) != t.at(i)) middle += term(i);

      Rat right_block = 0;
      for (std::int64_t j = 0; j < right_period; ++j)
        if (s.at(b + j) != t.at(b + j)) right_block += term(b + j);
      Rat right = right_block / (Rat(1) - pow2(-right_period));

      Rat left_block = 0;
      for (std::int64_t j = 0; j < left_period; ++j)
        if (s.at(a - 1 - j) != t.at(a - 1 - j)) left_block += term(a - 1 - j);
      Rat left = left_block / (Rat(1) - pow2(-left_period));

      Rat total = middle + right + left;
      total.canonicalize();
      return ExactDist::exact(total);
    }
  }

  // Tail beyond radius m is at most sum_{|i|>m} 2^-|i|/2 = 2^-m.
  const std::int64_t m = dyadic_exponent_at_most(tol);
  Rat lo = rho_window(s, t, m);
  Rat hi = lo + pow2(-m);
  if (hi > Rat(3, 2)) hi = Rat(3, 2);
  return ExactDist::interval(lo, hi);
}

std::int64_t periodic_window_radius(const Rat& eps) {
  if (sgn(eps) <= 0) throw Error(ErrorCode::invalid_argument, "eps must be positive");
  return dyadic_exponent_below(eps);
}

BiSeq periodic_point_near(const BiSeq& s, const Rat& eps) {
  const std::int64_t m = periodic_window_radius(eps);
  Word block;
  block.reserve(static_cast<std::size_t>(2 * m + 1));
  for (std::int64_t j = -m; j <= m; ++j) block.push_back(s.at(j));
  return BiSeq::periodic(s.alphabet_size(), block, -m);
}

BiSeq dense_orbit_seed(int alphabet_size) { return BiSeq::dense_tail(alphabet_size, 0); }

std::optional<std::int64_t> dense_word_position(int alphabet_size, const Word& word) {
  if (word.empty()) return std::nullopt;
  using wide = __int128;
  const wide limit = static_cast<wide>(1) << 62;
  const wide n = alphabet_size;
  wide pos = 0;
  wide count = n;
  for (std::size_t len = 1; len < word.size(); ++len) {
    pos += count * static_cast<wide>(len);
    count *= n;
    if (pos > limit || count > limit) return std::nullopt;
  }
  wide rank = 0;
  for (Symbol s : word) {
    if (s < 1 || s > alphabet_size) return std::nullopt;
    rank = rank * n + (s - 1);
  }
  pos += rank * static_cast<wide>(word.size());
  if (pos > limit) return std::nullopt;
  return static_cast<std::int64_t>(pos);
}

std::int64_t cantor_fold_index(int digit) {
  if (digit < 1) throw Error(ErrorCode::invalid_argument, "digit index starts at 1");
  if (digit == 1) return 0;
  if (digit % 2 == 0) return digit / 2;
  return -(digit - 1) / 2;
}

Rat cantor_encode(const BiSeq& s, int digits) {
  if (digits < 1) throw Error(ErrorCode::invalid_argument, "cantor_encode needs digits >= 1");
  const long arity = 2L * s.alphabet_size() - 1;
  Rat value = 0;
  Rat scale = 1;
  for (int d = 1; d <= digits; ++d) {
    scale /= arity;
    const long digit = 2L * (s.at(cantor_fold_index(d)) - 1);
    value += digit * scale;
  }
  value.canonicalize();
  return value;
}

std::vector<std::pair<Rat, Rat>> cantor_stage_intervals(int arity, int stage) {
  if (arity < 3 || arity % 2 == 0)
    throw Error(ErrorCode::invalid_argument, "Cantor arity must be odd and >= 3");
  std::vector<std::pair<Rat, Rat>> current{{Rat(0), Rat(1)}};
  for (int step = 0; step < stage; ++step) {
    std::vector<std::pair<Rat, Rat>> next;
    next.reserve(current.size() * static_cast<std::size_t>((arity + 1) / 2));
    for (const auto& [lo, hi] : current) {
      Rat len = (hi - lo) / arity;
      for (int j = 0; j < arity; j += 2) next.emplace_back(lo + j * len, lo + (j + 1) * len);
    }
    current = std::move(next);
  }
  return current;
}

namespace {

std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  std::string_view t = trim(text);
  if (t.empty()) return w;
  for (std::string_view part : split(t, ',')) w.push_back(static_cast<Symbol>(parse_int(part)));
  return w;
}

}  // namespace

std::string to_string(const BiSeq& s) {
  std::ostringstream os;
  os << s.alphabet_size() << " | ";
  if (!s.eventually_periodic()) {
    os << "1 | @ " << -s.dense_shift() << " | *";
    return os.str();
  }
  os << join_word(s.left_word()) << " | ";
  if (!s.center_word().empty()) os << join_word(s.center_word()) << ' ';
  os << "@ " << s.offset() << " | " << join_word(s.right_word());
  return os.str();
}

BiSeq parse_biseq(std::string_view text) {
  auto parts = split(text, '|');
  if (parts.size() != 4)
    throw Error(ErrorCode::parse, "sequence needs 4 '|'-separated fields: '" + std::string(text) + "'");
  const int n = static_cast<int>(parse_int(parts[0]));
  auto at = parts[2].find('@');
  if (at == std::string_view::npos)
    throw Error(ErrorCode::parse, "missing '@ offset' in '" + std::string(text) + "'");
  const std::int64_t offset = parse_int(parts[2].substr(at + 1));
  if (trim(parts[3]) == "*") {
    if (trim(parts[1]) != "1" || !trim(parts[2].substr(0, at)).empty())
      throw Error(ErrorCode::parse, "dense tail form is 'N | 1 | @ o | *'");
    return BiSeq::dense_tail(n, -offset);
  }
  return BiSeq::periodic_tails(n, parse_word(parts[1]), parse_word(parts[2].substr(0, at)), offset,
                               parse_word(parts[3]));
}

}  // namespace chaoslab
