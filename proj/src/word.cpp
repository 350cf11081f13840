#include "fgwp/word.hpp"

#include "fgwp/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>

namespace fgwp {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(const Word& w, long long e) {
  const Word base = e < 0 ? inverse(w) : w;
  const auto reps = static_cast<std::size_t>(e < 0 ? -e : e);
  Word out;
  out.reserve(base.size() * reps);
  for (std::size_t i = 0; i < reps; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

Word commutator(const Word& a, const Word& b) {
  Word out = concat(a, b);
  Word tail = concat(inverse(a), inverse(b));
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

Alphabet::Alphabet(const std::vector<std::string>& names) {
  for (const auto& n : names) add(n);
}

GeneratorId Alphabet::add(const std::string& name) {
  if (auto existing = find(name)) return *existing;
  auto id = static_cast<GeneratorId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<GeneratorId> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t default_expand_cap() {
  if (const char* env = std::getenv("WP_EXPAND_CAP")) {
    std::size_t value = 0;
    std::string_view sv(env);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec == std::errc() && ptr == sv.data() + sv.size() && value > 0) return value;
  }
  return 1'000'000;
}

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Splits `name` into known generator names. Exact match wins; otherwise the
// longest-prefix decomposition found by backtracking.
std::optional<std::vector<GeneratorId>> split_name(std::string_view name,
                                                   const Alphabet& alphabet) {
  if (auto id = alphabet.find(name)) return std::vector<GeneratorId>{*id};
  const std::size_t n = name.size();
  // next[i]: end of the first piece of a decomposition of name[i..].
  std::vector<std::ptrdiff_t> next(n + 1, -1);
  std::vector<GeneratorId> id_at(n + 1, 0);
  std::vector<bool> ok(n + 1, false);
  ok[n] = true;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = n; j > i; --j) {
      if (!ok[j]) continue;
      if (auto id = alphabet.find(name.substr(i, j - i))) {
        ok[i] = true;
        next[i] = static_cast<std::ptrdiff_t>(j);
        id_at[i] = *id;
        break;
      }
    }
  }
  if (!ok[0]) return std::nullopt;
  std::vector<GeneratorId> out;
  for (std::size_t i = 0; i < n; i = static_cast<std::size_t>(next[i])) out.push_back(id_at[i]);
  return out;
}

class WordParser {
 public:
  WordParser(std::string_view text, const Alphabet* fixed, Alphabet* extending, std::size_t cap)
      : text_(text), fixed_(fixed), extending_(extending), cap_(cap) {}

  Word parse() {
    Word w = parse_sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("word \"" + std::string(text_) + "\": " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '*' || text_[pos_] == '.'))
      ++pos_;
  }

  void check_cap(std::size_t size) const {
    if (size > cap_)
      throw ExpansionOverflow("word \"" + std::string(text_) + "\" exceeds the expansion cap of " +
                              std::to_string(cap_) + " letters");
  }

  Word parse_sequence() {
    Word out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ')') return out;
      Word item = parse_item();
      check_cap(out.size() + item.size());
      out.insert(out.end(), item.begin(), item.end());
    }
  }

  Word parse_item() {
    Word atom = parse_atom();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      long long e = parse_int();
      const auto reps = static_cast<unsigned long long>(e < 0 ? -e : e);
      if (!atom.empty() && reps > cap_ / atom.size()) check_cap(cap_ + 1);
      check_cap(atom.size() * reps);
      return power(atom, e);
    }
    return atom;
  }

  long long parse_int() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    long long value = 0;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("expected an integer exponent");
    return value;
  }

  Word parse_atom() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word inner = parse_sequence();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '1' && (pos_ + 1 == text_.size() || !is_name_char(text_[pos_ + 1]))) {
      ++pos_;
      return {};
    }
    if (!is_name_start(c)) fail("expected a generator name");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    Word out;
    if (extending_ != nullptr) {
      out.push_back(pos(extending_->add(std::string(name))));
      return out;
    }
    auto ids = split_name(name, *fixed_);
    if (!ids) fail("unknown generator '" + std::string(name) + "'");
    for (GeneratorId id : *ids) out.push_back(pos(id));
    return out;
  }

  std::string_view text_;
  const Alphabet* fixed_;
  Alphabet* extending_;
  std::size_t cap_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet, std::size_t cap) {
  return WordParser(text, &alphabet, nullptr, cap).parse();
}

Word parse_word_extending(std::string_view text, Alphabet& alphabet, std::size_t cap) {
  return WordParser(text, nullptr, &alphabet, cap).parse();
}

std::string format_letter(Letter letter, const Alphabet& alphabet) {
  std::string out = alphabet.name(letter.generator);
  if (letter.inverted) out += "^-1";
  return out;
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_letter(w[i], alphabet);
  }
  return out;
}

std::string format_word_compact(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += ' ';
    out += alphabet.name(w[i].generator);
    const long long run = static_cast<long long>(j - i) * w[i].sign();
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

}  // namespace fgwp
