#include "fgwp/free_group.hpp"

#include "fgwp/compressed_compare.hpp"

#include <unordered_map>

namespace fgwp {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back().cancels(x)) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1].cancels(w[i])) return false;
  }
  return true;
}

NodeId reduced_node(SlpDag& dag, NodeId root) {
  const NodeId roots[] = {root};
  std::unordered_map<NodeId, NodeId> reduced;
  reduced.emplace(kEmptyNode, kEmptyNode);
  for (NodeId n : dag.reachable(roots)) {
    if (dag.kind(n) != SlpDag::Kind::Pair) {
      reduced.emplace(n, n);
      continue;
    }
    const NodeId rl = reduced.at(dag.left(n));
    const NodeId rr = reduced.at(dag.right(n));
    const BigInt cancel = cancellation_length(dag, rl, rr);
    NodeId result;
    if (cancel == 0) {
      result = dag.concat(rl, rr);
    } else {
      const NodeId head = dag.cut_prefix(rl, dag.length(rl) - cancel);
      const NodeId tail = dag.cut_suffix(rr, dag.length(rr) - cancel);
      result = dag.concat(head, tail);
    }
    reduced.emplace(n, result);
  }
  return reduced.at(root);
}

Slp reduced_slp(const Slp& a) {
  SlpDag dag;
  const NodeId root = dag.import_slp(a);
  return dag.export_slp(reduced_node(dag, root));
}

bool is_trivial_compressed(SlpDag& dag, NodeId root) {
  return dag.length(reduced_node(dag, root)) == 0;
}

bool is_trivial_compressed(const Slp& a) {
  SlpDag dag;
  const NodeId root = dag.import_slp(a);
  return is_trivial_compressed(dag, root);
}

}  // namespace fgwp
