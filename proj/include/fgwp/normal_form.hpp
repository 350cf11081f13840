#pragma once

#include "fgwp/tower.hpp"
#include "fgwp/word.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fgwp {

/// Exponent vector of a tau-block over one centralizer entry.
using ExponentVector = std::vector<long long>;

/// sgn of the highest-index nonzero coefficient; 0 for the zero vector.
int sigma(const ExponentVector& alpha);

struct CollectedBlock {
  Word h;              // the word preceding the block, over X_{k-1}
  std::size_t entry = 0;
  ExponentVector alpha;
};

/// h_1 tau_1^{alpha_1} h_2 ... h_m tau_m^{alpha_m} h_{m+1}.
struct CollectedForm {
  std::size_t level = 0;
  std::vector<CollectedBlock> blocks;
  Word tail;
};

/// Groups the level-k stable letters of an internal word into blocks. Two
/// blocks over the same entry are merged whenever the word between them
/// commutes with u (decided in G_{k-1}); blocks whose exponents cancel are
/// dropped. Never lengthens the word.
CollectedForm britton_collect(const Tower& tower, std::size_t k, const Word& w);
Word flatten(const Tower& tower, const CollectedForm& form);

struct Syllable {
  Word g;
  std::size_t entry = 0;
  long long c = 0;
  ExponentVector alpha;
};

/// g_1 u_1^{c_1} tau_1^{alpha_1} ... g_m u_m^{c_m} tau_m^{alpha_m} g_{m+1},
/// over the internal presentation.
struct NormalForm {
  std::size_t level = 0;
  std::vector<Syllable> syllables;
  Word tail;
};

/// Normal form of a user word at the tower's top level: collect, then attach
/// u_i^{sigma_i r_i} on both sides of every h_i with r_i = (10L)^{n-1}|h_i| + 1.
/// The g_i are freely reduced and not normalized further.
NormalForm normal_form(const Tower& tower, const Word& w);
std::size_t syllable_count(const NormalForm& nf);
Word flatten(const Tower& tower, const NormalForm& nf);
std::size_t flattened_length(const Tower& tower, const NormalForm& nf);

struct NormalFormCheck {
  bool alpha_nonzero = true;     // (i)
  bool lower_level_ok = true;    // (ii)
  bool boundaries_ok = true;     // (iii)
  bool additivity_ok = true;     // (iv), checked at level 1 only
  bool additivity_checked = false;
  std::vector<std::string> problems;
  [[nodiscard]] bool ok() const { return alpha_nonzero && lower_level_ok && boundaries_ok && additivity_ok; }
};

/// Structural conditions plus, at level 1, free-length additivity of
/// g_1 u^{q_1} g_2 ... g_{m+1} for q_i = sigma_i * s, s in `scales`.
NormalFormCheck check_normal_form(const Tower& tower, const NormalForm& nf,
                                  const std::vector<long long>& scales = {1, 2, 5});

std::string format_normal_form(const Tower& tower, const NormalForm& nf);

}  // namespace fgwp
