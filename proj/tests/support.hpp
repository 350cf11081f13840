#pragma once

#include "fgwp/slp.hpp"
#include "fgwp/tower.hpp"
#include "fgwp/word.hpp"

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

namespace fgwp::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Letter random_letter(Rng& rng, const std::vector<GeneratorId>& gens) {
  return {gens[uniform(rng, 0, gens.size() - 1)], coin(rng)};
}

inline std::vector<GeneratorId> first_generators(std::size_t n) {
  std::vector<GeneratorId> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = GeneratorId(i);
  return g;
}

inline Word random_word(Rng& rng, const std::vector<GeneratorId>& gens, std::size_t len) {
  Word w(len);
  for (auto& x : w) x = random_letter(rng, gens);
  return w;
}

inline Word random_word(Rng& rng, std::size_t alphabet, std::size_t len) {
  return random_word(rng, first_generators(alphabet), len);
}

inline Word random_reduced_word(Rng& rng, std::size_t alphabet, std::size_t len) {
  Word w;
  const auto gens = first_generators(alphabet);
  while (w.size() < len) {
    Letter x = random_letter(rng, gens);
    if (!w.empty() && w.back().cancels(x)) continue;
    w.push_back(x);
  }
  return w;
}

/// Letters of the tower; each position is a stable letter with probability
/// `stable_density`.
inline Word random_tower_word(Rng& rng, const Tower& tower, std::size_t len,
                              double stable_density) {
  std::vector<GeneratorId> base, stable;
  for (GeneratorId g = 0; g < tower.alphabet.size(); ++g)
    (tower.stable(g) ? stable : base).push_back(g);
  Word w(len);
  for (auto& x : w)
    x = random_letter(rng, !stable.empty() && coin(rng, stable_density) ? stable : base);
  return w;
}

/// Random program: `terminals` leaves followed by `rules` pair rules, each
/// produced length kept at most `max_len`. Recent rules are preferred so the
/// root grows long.
inline Slp random_slp(Rng& rng, std::size_t alphabet, std::size_t terminals, std::size_t rules,
                      std::size_t max_len) {
  Slp s;
  std::vector<std::size_t> len;
  const auto gens = first_generators(alphabet);
  for (std::size_t i = 0; i < terminals; ++i) {
    s.productions.push_back(TerminalRule{random_letter(rng, gens)});
    len.push_back(1);
  }
  auto pick = [&](std::size_t n) {
    if (coin(rng, 0.6)) return uniform(rng, n > 4 ? n - 4 : 0, n - 1);
    return uniform(rng, 0, n - 1);
  };
  for (std::size_t r = 0; r < rules; ++r) {
    const std::size_t n = s.size();
    std::size_t l = pick(n), rr = pick(n);
    for (int tries = 0; len[l] + len[rr] > max_len && tries < 20; ++tries) {
      l = uniform(rng, 0, n - 1);
      rr = uniform(rng, 0, n - 1);
    }
    if (len[l] + len[rr] > max_len) break;
    s.productions.push_back(PairRule{l, rr});
    len.push_back(len[l] + len[rr]);
  }
  return s;
}

}  // namespace fgwp::testing
