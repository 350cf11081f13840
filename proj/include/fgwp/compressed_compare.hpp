#pragma once

#include "fgwp/bigint.hpp"
#include "fgwp/slp.hpp"
#include "fgwp/slp_dag.hpp"

#include <cstddef>

namespace fgwp {

/// Instrumentation of one recompression run.
struct CompareStats {
  std::size_t phases = 0;
  std::size_t rules = 0;           // nonterminals entering the first phase
  std::size_t peak_items = 0;      // largest total body size seen
  bool used_recompression = false;
};

/// Words up to this length are compared by direct extraction.
inline constexpr std::size_t kDirectCompareLimit = 1u << 16;

/// Letter-for-letter equality of the produced words. Never expands long
/// words: lengths and fingerprints reject cheaply, short words are compared
/// directly and everything else goes through deterministic recompression.
bool equal(const Slp& a, const Slp& b);
bool equal(const SlpDag& dag, NodeId a, NodeId b, CompareStats* stats = nullptr);

/// Recompression only, without the shortcuts above. Exposed for testing and
/// for the memory spot checks.
bool equal_by_recompression(const SlpDag& dag, NodeId a, NodeId b,
                            CompareStats* stats = nullptr);

/// Largest l such that the length-l suffix of w_a is the inverse of the
/// length-l prefix of w_b. Requires both words freely reduced.
BigInt cancellation_length(const Slp& a, const Slp& b);
BigInt cancellation_length(SlpDag& dag, NodeId a, NodeId b);

}  // namespace fgwp
