#pragma once

#include "fgwp/slp.hpp"
#include "fgwp/slp_dag.hpp"
#include "fgwp/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fgwp {

struct CentralizerEntry {
  Word u;           // as written by the user, over X_{k-1}
  Word core;        // the word the algorithms use
  Word conjugator;  // u = conjugator * core * conjugator^-1 (level 1 only)
  std::size_t count = 0;
  std::vector<GeneratorId> letters;  // t_{u,1..count}
};

struct TowerLevel {
  std::vector<CentralizerEntry> entries;
};

struct StableLetter {
  std::size_t level = 0;  // 1-based
  std::size_t entry = 0;
  std::size_t index = 0;  // 1-based: t_{u,index}
};

struct TowerConstants {
  std::size_t L = 0;
  std::size_t N = 1;
  std::size_t M = 0;
  std::size_t n = 0;
};

/// G_0 = F(base) < G_1 < ... < G_n. Generator ids are ordered base first,
/// then the stable letters level by level, so X_k is an id prefix.
///
/// Level-1 centralizer words are replaced internally by their cyclically
/// reduced core v (u = x v x^-1); the isomorphism t -> x t x^-1 carries user
/// words to the internal presentation (see internalize). Centralizers at
/// levels >= 2 are trusted and recorded in `warnings`.
class Tower {
 public:
  Alphabet alphabet;
  std::size_t base_count = 0;
  std::vector<TowerLevel> levels;
  std::vector<std::string> warnings;

  [[nodiscard]] std::size_t n() const noexcept { return levels.size(); }
  /// |X_k|; throws std::out_of_range for k > n.
  [[nodiscard]] std::size_t alphabet_size_at(std::size_t k) const;
  [[nodiscard]] std::vector<GeneratorId> alphabet_at(std::size_t k) const;
  [[nodiscard]] std::optional<StableLetter> stable(GeneratorId g) const;
  /// 0 for base generators.
  [[nodiscard]] std::size_t level_of(GeneratorId g) const;
  [[nodiscard]] std::size_t level_of(const Word& w) const;
  [[nodiscard]] const CentralizerEntry& entry_of(GeneratorId g) const;

  /// Levels 1..k only.
  [[nodiscard]] Tower truncated(std::size_t k) const;

  /// Rewrites a user word into the internal presentation.
  [[nodiscard]] Word internalize(const Word& w) const;
  NodeId internalize(SlpDag& dag, NodeId root) const;
  [[nodiscard]] bool needs_translation() const;

  /// Defining relators [u, t_i] and [t_i, t_j] as user words.
  [[nodiscard]] std::vector<Word> relators() const;
};

struct EntrySpec {
  std::string u;
  std::size_t count = 0;  // 0: take letters.size()
  std::vector<std::string> letters;
};

/// Builds and checks a tower. Throws ParseError for malformed words and
/// InvalidInput for duplicate letters and level-1 centralizer violations.
Tower build_tower(const std::vector<std::string>& base,
                  const std::vector<std::vector<EntrySpec>>& levels);

/// Text format:
///   base a b
///   level { centralizer u="a b" count=2 letters t1 t2 }
Tower load_tower(std::string_view text);

TowerConstants constants(const Tower& tower);

/// Cyclically reduced core v and conjugator x of a freely reduced word,
/// u = x v x^-1.
struct CyclicDecomposition {
  Word core;
  Word conjugator;
};
CyclicDecomposition cyclic_decomposition(const Word& reduced);
/// Cyclically reduced v is a proper power iff its least period divides |v|
/// properly.
bool is_proper_power(const Word& cyclically_reduced);
/// Equal cyclic words: same length and b is a rotation of a.
bool cyclically_equal(const Word& a, const Word& b);

std::string describe(const Tower& tower);

}  // namespace fgwp
