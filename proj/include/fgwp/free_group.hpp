#pragma once

#include "fgwp/slp.hpp"
#include "fgwp/slp_dag.hpp"
#include "fgwp/word.hpp"

namespace fgwp {

/// The freely reduced word equal to w (single left-to-right stack scan).
Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);

/// Program for the free reduction of w_a, built bottom-up: each pair rule
/// concatenates its reduced children after cutting away the cancelling
/// suffix/prefix. Heights never exceed the input's.
Slp reduced_slp(const Slp& a);
NodeId reduced_node(SlpDag& dag, NodeId root);

/// w_a == 1 in the free group.
bool is_trivial_compressed(const Slp& a);
bool is_trivial_compressed(SlpDag& dag, NodeId root);

}  // namespace fgwp
