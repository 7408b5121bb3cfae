#include "chaoslab/group_word.hpp"

#include <cstdlib>

#include "chaoslab/text.hpp"

namespace chaoslab {

FreeWord FreeWord::power(std::uint32_t generator, std::int64_t exponent) {
  FreeWord w;
  w.push({generator, exponent});
  return w;
}

std::int64_t FreeWord::length() const {
  std::int64_t n = 0;
  for (const auto& s : syllables_) n += s.power < 0 ? -s.power : s.power;
  return n;
}

void FreeWord::push(Syllable s) {
  if (s.power == 0) return;
  if (!syllables_.empty() && syllables_.back().generator == s.generator) {
    syllables_.back().power += s.power;
    if (syllables_.back().power == 0) syllables_.pop_back();
    return;
  }
  syllables_.push_back(s);
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    w.syllables_.push_back({it->generator, -it->power});
  return w;
}

FreeWord operator*(const FreeWord& u, const FreeWord& v) {
  FreeWord w = u;
  // push() cancels across the seam, repeatedly if whole syllables vanish.
  for (const auto& s : v.syllables_) w.push(s);
  return w;
}

GroupWord GroupWord::cyclic(std::size_t rank,
                            std::initializer_list<std::pair<std::size_t, std::int64_t>> exps) {
  GroupWord w(rank);
  for (const auto& [factor, e] : exps) w = w.with_factor(factor, w.factor(factor) * FreeWord::power(0, e));
  return w;
}

GroupWord GroupWord::single(std::size_t rank, std::size_t factor, FreeWord word) {
  return GroupWord(rank).with_factor(factor, std::move(word));
}

FreeWord GroupWord::factor(std::size_t factor) const {
  auto it = factors_.find(factor);
  return it == factors_.end() ? FreeWord{} : it->second;
}

std::int64_t GroupWord::length() const {
  std::int64_t n = 0;
  for (const auto& [i, w] : factors_) n += w.length();
  return n;
}

GroupWord GroupWord::with_factor(std::size_t factor, FreeWord word) const {
  if (factor == 0 || (rank_ != kCountable && factor > rank_))
    throw Error(ErrorCode::signature_mismatch,
                "factor " + std::to_string(factor) + " outside a product of rank " +
                    (rank_ == kCountable ? std::string("countable") : std::to_string(rank_)));
  GroupWord out = *this;
  if (word.is_identity())
    out.factors_.erase(factor);
  else
    out.factors_[factor] = std::move(word);
  return out;
}

GroupWord compose(const GroupWord& u, const GroupWord& v) {
  if (u.rank() != v.rank())
    throw Error(ErrorCode::signature_mismatch, "composing words of different product rank");
  GroupWord out = u;
  for (const auto& [i, w] : v.factors()) out = out.with_factor(i, u.factor(i) * w);
  return out;
}

GroupWord inverse(const GroupWord& u) {
  GroupWord out(u.rank());
  for (const auto& [i, w] : u.factors()) out = out.with_factor(i, w.inverse());
  return out;
}

GroupWord birkhoff_witness(const GroupWord& g1, const GroupWord& g2) {
  return compose(g2, inverse(g1));
}

std::string to_string(const FreeWord& w) {
  const auto& syl = w.syllables();
  if (syl.size() == 1 && syl[0].generator == 0)
    return (syl[0].power > 0 ? "+" : "") + std::to_string(syl[0].power);
  std::string out;
  for (std::size_t i = 0; i < syl.size(); ++i) {
    if (i) out += '.';
    out += 'g' + std::to_string(syl[i].generator) + '^' + std::to_string(syl[i].power);
  }
  return out;
}

std::string to_string(const GroupWord& w) {
  std::string out = "{";
  bool first = true;
  for (const auto& [i, fw] : w.factors()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(i) + ':' + to_string(fw);
  }
  return out + '}';
}

namespace {

FreeWord parse_free_word(std::string_view text) {
  text = trim(text);
  if (text.empty()) return {};
  if (text.front() != 'g') return FreeWord::power(0, parse_int(text));
  FreeWord w;
  for (std::string_view part : split(text, '.')) {
    part = trim(part);
    auto caret = part.find('^');
    if (part.empty() || part.front() != 'g')
      throw Error(ErrorCode::parse, "malformed syllable '" + std::string(part) + "'");
    std::int64_t gen = parse_int(part.substr(1, caret == std::string_view::npos ? part.npos : caret - 1));
    std::int64_t pw = caret == std::string_view::npos ? 1 : parse_int(part.substr(caret + 1));
    if (gen < 0) throw Error(ErrorCode::parse, "negative generator index");
    w = w * FreeWord::power(static_cast<std::uint32_t>(gen), pw);
  }
  return w;
}

}  // namespace

GroupWord parse_group_word(std::string_view text, std::size_t rank) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw Error(ErrorCode::parse, "group word must be written {factor:word, ...}");
  text = trim(text.substr(1, text.size() - 2));
  GroupWord w(rank);
  if (text.empty()) return w;
  for (std::string_view entry : split(text, ',')) {
    auto colon = entry.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::parse, "group word entry needs 'factor:word'");
    std::int64_t factor = parse_int(entry.substr(0, colon));
    if (factor < 1) throw Error(ErrorCode::parse, "factor indices start at 1");
    auto f = static_cast<std::size_t>(factor);
    w = w.with_factor(f, w.factor(f) * parse_free_word(entry.substr(colon + 1)));
  }
  return w;
}

}  // namespace chaoslab
