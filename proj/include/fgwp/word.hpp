#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fgwp {

using GeneratorId = std::uint32_t;

/// A generator or its formal inverse.
struct Letter {
  GeneratorId generator = 0;
  bool inverted = false;

  [[nodiscard]] constexpr Letter inverse() const noexcept { return {generator, !inverted}; }
  [[nodiscard]] constexpr int sign() const noexcept { return inverted ? -1 : 1; }
  [[nodiscard]] constexpr bool cancels(Letter other) const noexcept {
    return generator == other.generator && inverted != other.inverted;
  }
  /// Dense code 2*generator + inverted; used as an array index.
  [[nodiscard]] constexpr std::uint64_t code() const noexcept {
    return 2 * static_cast<std::uint64_t>(generator) + (inverted ? 1 : 0);
  }

  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

constexpr Letter pos(GeneratorId g) { return {g, false}; }
constexpr Letter neg(GeneratorId g) { return {g, true}; }

using Word = std::vector<Letter>;

/// Reverse of the word with every letter inverted.
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
/// w^e as a plain word; negative e repeats the inverse.
Word power(const Word& w, long long e);
/// [a, b] = a b a^-1 b^-1.
Word commutator(const Word& a, const Word& b);

/// Ordered set of generator names; ids are assigned in insertion order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names);

  GeneratorId add(const std::string& name);
  [[nodiscard]] std::optional<GeneratorId> find(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const { return find(name).has_value(); }
  [[nodiscard]] const std::string& name(GeneratorId id) const { return names_.at(id); }
  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, GeneratorId> index_;
};

/// Letter cap applied to exponent sugar and capped expansions. Defaults to
/// 10^6 and can be overridden through the WP_EXPAND_CAP environment variable.
std::size_t default_expand_cap();

/// Parses whitespace-separated letters with optional integer exponents and
/// parenthesized groups: "a (a b)^11 t^-1 a a b a^-1 t". A name that is not a
/// generator is split into a concatenation of generator names when possible,
/// so "(ab)^3" reads as (a b)^3 over {a, b}. "1" denotes the empty word.
Word parse_word(std::string_view text, const Alphabet& alphabet,
                std::size_t cap = default_expand_cap());

/// Like parse_word, but unknown names become new generators of `alphabet`
/// (no splitting is attempted).
Word parse_word_extending(std::string_view text, Alphabet& alphabet,
                          std::size_t cap = default_expand_cap());

std::string format_letter(Letter letter, const Alphabet& alphabet);
/// "a b^-1 t"; the empty word prints as "1".
std::string format_word(const Word& w, const Alphabet& alphabet);
/// Collapses runs of a repeated letter into an exponent: "a b^3 t^-2".
std::string format_word_compact(const Word& w, const Alphabet& alphabet);

}  // namespace fgwp
