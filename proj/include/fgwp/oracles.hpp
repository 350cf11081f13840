#pragma once

// Brute-force reference implementations for cross-checking. Nothing here
// calls the compressed algorithms; the free reduction, expansion and Britton
// reduction are written independently.

#include "fgwp/aut_wp.hpp"
#include "fgwp/slp.hpp"
#include "fgwp/tower.hpp"
#include "fgwp/word.hpp"

#include <cstddef>
#include <optional>

namespace fgwp::oracle {

inline constexpr std::size_t kDefaultCap = 1'000'000;

/// Recursive expansion; nullopt past `cap` letters.
std::optional<Word> expand(const Slp& slp, std::size_t cap = kDefaultCap);
Word reduce(const Word& w);
/// expand then reduce; nullopt when the expansion exceeds `cap`.
std::optional<Word> expand_reduce(const Slp& slp, std::size_t cap = kDefaultCap);

/// c with g = u^c in F, for u nontrivial and not a proper power.
std::optional<long long> power_membership(const Word& u, const Word& g);

/// Word problem in a one-level tower (any number of entries and letters) by
/// pinch elimination on the user's presentation.
bool britton_wp_level1(const Tower& tower, const Word& w);

/// phi_{i_1}( ... phi_{i_m}(g_j)) by literal substitution; nullopt past `cap`.
std::optional<Word> naive_aut_compose(const AutomorphismSet& set, const Composition& composition,
                                      GeneratorId j, std::size_t cap = kDefaultCap);

}  // namespace fgwp::oracle
