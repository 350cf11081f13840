#pragma once

#include "fgwp/bigint.hpp"
#include "fgwp/slp.hpp"
#include "fgwp/slp_dag.hpp"
#include "fgwp/tower.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace fgwp {

/// P_n = P and P_{i-1} = P_i^N * L. values[0] = P_n, ..., values[n] = P_0.
struct PSequence {
  BigInt P;
  std::vector<BigInt> values;

  /// P_i.
  [[nodiscard]] const BigInt& at(std::size_t i) const { return values.at(values.size() - 1 - i); }
};

PSequence p_sequence(const TowerConstants& c, const BigInt& P);
PSequence p_sequence(const Tower& tower, const BigInt& P);

/// (10L)^n * length + 1.
BigInt reduction_parameter(const TowerConstants& c, const BigInt& length);

/// phi_(k, P_k) on a plain word: t_{u,i}^e -> u^{e P_k^i}, everything else
/// fixed. Works on internal words. Throws ExpansionOverflow past `cap`.
Word phi_level_word(const Tower& tower, std::size_t k, const BigInt& Pk, const Word& w,
                    std::size_t cap);

/// The same map on a compressed word. Programs for U^{P_k^i} are built as a
/// chain U^{P^i} = (U^{P^{i-1}})^P and shared per (entry, i).
NodeId phi_level_node(SlpDag& dag, const Tower& tower, std::size_t k, const BigInt& Pk,
                      NodeId root);
Slp phi_level_slp(const Tower& tower, std::size_t k, const BigInt& Pk, const Slp& a);

struct CwpReport {
  bool trivial = false;
  BigInt P;
  std::vector<BigInt> p_values;       // P_n, ..., P_1
  std::size_t input_size = 0;         // |A| after translation
  std::vector<std::size_t> level_sizes;  // sizes after each phi step, ending with |A_1|
  BigInt input_length;
  bool keep_program = false;          // set by the caller to fill `base_program`
  std::optional<Slp> base_program;    // A_1, the program over the base alphabet
};

/// w_a == 1 in G_n, for a program over the user alphabet.
bool compressed_word_problem(const Tower& tower, const Slp& a);
CwpReport compressed_word_problem_report(const Tower& tower, const Slp& a, bool keep_program);
bool compressed_word_problem(const Tower& tower, SlpDag& dag, NodeId root,
                             CwpReport* report = nullptr);
bool internal_compressed_word_problem(const Tower& tower, SlpDag& dag, NodeId root,
                                      CwpReport* report = nullptr);

/// Linear bound |A_1| <= C1 |A| + C2 obtained from the per-level counting
///   |A_1| <= |A| + 2nLM + NM * sum_{i<n} log2 P_{n-i} + c
/// with two adjustments: programs for inverse stable letters are mirror
/// copies, which doubles the 2nLM and log2 terms, and the odd-exponent
/// corrections of each power program cost at most log2 of its exponent
/// (the documented c). log2 P_n <= n log2(10L) + |A| since |w_A| < 2^|A|.
struct SizeBound {
  double C1 = 1;
  double C2 = 0;
  [[nodiscard]] double at(std::size_t input_size) const { return C1 * double(input_size) + C2; }
};
SizeBound size_bound(const TowerConstants& c);

/// Plain-word front end.
bool word_problem(const Tower& tower, const Word& w);
/// Same, for a word already in the internal presentation.
bool internal_word_problem(const Tower& tower, const Word& w);

}  // namespace fgwp
