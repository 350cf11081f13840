#pragma once

#include "fgwp/bigint.hpp"
#include "fgwp/word.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fgwp {

// Nonterminal indices are 0-based in memory; the text format numbers them
// from 1 (A1 is productions[0]).
struct PairRule {
  std::size_t left = 0;
  std::size_t right = 0;
  friend bool operator==(const PairRule&, const PairRule&) = default;
};
struct TerminalRule {
  Letter letter;
  friend bool operator==(const TerminalRule&, const TerminalRule&) = default;
};
struct EmptyRule {
  friend bool operator==(const EmptyRule&, const EmptyRule&) = default;
};

using Production = std::variant<PairRule, TerminalRule, EmptyRule>;

/// Straight-line program: productions[i] defines nonterminal i and may only
/// refer to smaller indices. The root is the last nonterminal and the size is
/// the number of nonterminals.
struct Slp {
  std::vector<Production> productions;

  [[nodiscard]] std::size_t size() const noexcept { return productions.size(); }
  [[nodiscard]] std::size_t root() const noexcept { return productions.size() - 1; }

  /// The one-production grammar for the empty word.
  static Slp empty() { return Slp{{EmptyRule{}}}; }
  static Slp terminal(Letter letter) { return Slp{{TerminalRule{letter}}}; }

  friend bool operator==(const Slp&, const Slp&) = default;
};

struct Violation {
  std::size_t nonterminal = 0;  // 1-based, as in the text format; 0 = whole program
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
  [[nodiscard]] std::string to_string() const;
};

ValidationReport validate(const Slp& slp);
/// Throws InvalidInput carrying the report when validate fails.
void require_valid(const Slp& slp);

/// w_root, or nullopt when its length exceeds `cap` (nothing is allocated in
/// that case).
std::optional<Word> expand(const Slp& slp, std::size_t cap);
BigInt produced_length(const Slp& slp);
/// Per-nonterminal produced lengths.
std::vector<BigInt> produced_lengths(const Slp& slp);
std::size_t height(const Slp& slp);

/// Size of the textual encoding in bits: each pair rule stores two indices of
/// ceil(log2 n) bits, each terminal one signed letter, plus a 2-bit tag.
std::size_t bit_size(const Slp& slp, std::size_t alphabet_size);

/// Balanced program by successive halving; size <= 2|w| - 1. The empty word
/// yields Slp::empty().
Slp from_word(const Word& w);

/// Program for w^q (q < 0 repeats the inverse word). Built by doubling the
/// program for w^{sgn q}; every set bit of |q| below the leading one costs one
/// extra correction rule, so
///   size <= |from_word(w)| + floor(log2|q|) + power_correction(q).
Slp power_slp(const Word& w, const BigInt& q);
/// Number of odd-exponent correction rules used by power_slp: popcount(|q|)-1.
std::size_t power_correction(const BigInt& q);

/// First (resp. last) k letters. Adds at most height(slp) nonterminals before
/// unreachable ones are dropped. Throws std::out_of_range if k exceeds the
/// produced length.
Slp cut_prefix(const Slp& slp, const BigInt& k);
Slp cut_suffix(const Slp& slp, const BigInt& k);

/// Letter-reversed, sign-flipped word; same size.
Slp reverse_inverse(const Slp& slp);

/// Produces w_a w_b; size |a| + |b| + 1.
Slp concat(const Slp& a, const Slp& b);

/// Homomorphic image: every terminal x^e is replaced by images.at(x)^e, where
/// the -1 image is the reverse-inverse of the +1 image. Throws InvalidInput on
/// a missing image. Each image program is inserted once.
Slp substitute(const Slp& slp, const std::map<GeneratorId, Slp>& images);

/// Drops nonterminals the root does not reach and renumbers the rest.
Slp trim(const Slp& slp);

/// AVL-style rebalancing: the result produces the same word and every pair
/// rule has children whose heights differ by at most one, so the height is
/// O(log length).
Slp rebalance(const Slp& slp);

struct ParsedSlp {
  Slp slp;
  ValidationReport report;  // structural problems: gaps, ordering, root
};

/// Parses the line-based text format
///   A<i> -> A<j> A<k> | A<i> -> <letter> | A<i> -> ^ ;  last line: root A<n>
/// Unknown letter names are added to `alphabet`. Throws ParseError on
/// syntax errors; structural violations land in the report.
ParsedSlp parse_slp_text(std::string_view text, Alphabet& alphabet);
/// parse_slp_text that throws InvalidInput unless the report is ok.
Slp read_slp(std::string_view text, Alphabet& alphabet);
std::string format_slp(const Slp& slp, const Alphabet& alphabet);

}  // namespace fgwp
