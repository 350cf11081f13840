#pragma once

#include "fgwp/bigint.hpp"
#include "fgwp/slp.hpp"
#include "fgwp/word.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace fgwp {

using NodeId = std::uint32_t;
inline constexpr NodeId kEmptyNode = 0;

/// Karp-Rabin fingerprint modulo 2^61-1 of a word w and of its
/// reverse-inverse, together with x^|w|. Equal words have equal
/// fingerprints; the converse is not guaranteed.
struct Fingerprint {
  std::uint64_t forward = 0;
  std::uint64_t backward = 0;
  std::uint64_t scale = 1;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Fingerprint of the concatenation uv.
Fingerprint combine(const Fingerprint& u, const Fingerprint& v);
Fingerprint letter_fingerprint(Letter letter);

/// Hash-consed store of compressed words. Each node is the empty word, a
/// single letter or the concatenation of two earlier nodes, so node ids are a
/// topological order and any node is an SLP over the nodes below it. Lengths,
/// heights and fingerprints are cached per node.
///
/// All SLP-level algorithms (cuts, free reduction, the phi images, the
/// automorphism programs) build into one SlpDag and export a trimmed Slp at
/// the end.
class SlpDag {
 public:
  enum class Kind : std::uint8_t { Empty, Leaf, Pair };

  SlpDag();

  NodeId leaf(Letter letter);
  /// Pair node; concatenation with the empty node returns the other operand.
  NodeId concat(NodeId a, NodeId b);
  /// Left-associated chain ((n0 n1) n2)...
  NodeId concat_left(std::span<const NodeId> nodes);
  /// Balanced tree by halving.
  NodeId concat_balanced(std::span<const NodeId> nodes);
  NodeId from_word(const Word& w);
  /// base^q; q < 0 uses the reverse-inverse of base. Square-and-multiply from
  /// the most significant bit: floor(log2|q|) squarings plus popcount(|q|)-1
  /// multiplications.
  NodeId power(NodeId base, const BigInt& q);
  NodeId reverse_inverse(NodeId node);
  NodeId cut_prefix(NodeId node, const BigInt& k);
  NodeId cut_suffix(NodeId node, const BigInt& k);
  /// AVL concatenation; both operands must already be AVL-balanced.
  NodeId join(NodeId a, NodeId b);
  NodeId rebalance(NodeId node);

  /// Applies a letter homomorphism to every root, sharing work across roots.
  std::vector<NodeId> map_letters(std::span<const NodeId> roots,
                                  const std::function<NodeId(Letter)>& image);

  NodeId import_slp(const Slp& slp);
  [[nodiscard]] Slp export_slp(NodeId root) const;

  [[nodiscard]] Kind kind(NodeId n) const { return nodes_[n].kind; }
  [[nodiscard]] Letter letter(NodeId n) const { return nodes_[n].letter; }
  [[nodiscard]] NodeId left(NodeId n) const { return nodes_[n].left; }
  [[nodiscard]] NodeId right(NodeId n) const { return nodes_[n].right; }
  [[nodiscard]] const BigInt& length(NodeId n) const { return nodes_[n].length; }
  [[nodiscard]] std::uint32_t height(NodeId n) const { return nodes_[n].height; }
  [[nodiscard]] const Fingerprint& fingerprint(NodeId n) const { return nodes_[n].print; }
  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }

  [[nodiscard]] Fingerprint prefix_fingerprint(NodeId n, const BigInt& k) const;
  [[nodiscard]] Fingerprint suffix_fingerprint(NodeId n, const BigInt& k) const;
  [[nodiscard]] Letter first_letter(NodeId n) const;
  [[nodiscard]] Letter last_letter(NodeId n) const;
  /// Letters [start, start + count); requires start + count <= length(n).
  [[nodiscard]] Word extract(NodeId n, const BigInt& start, std::size_t count) const;
  [[nodiscard]] std::optional<Word> expand(NodeId n, std::size_t cap) const;

  /// Non-empty nodes reachable from the roots, ascending.
  [[nodiscard]] std::vector<NodeId> reachable(std::span<const NodeId> roots) const;
  /// Size of the exported SLP for this root.
  [[nodiscard]] std::size_t program_size(NodeId root) const;

 private:
  struct Node {
    Kind kind = Kind::Empty;
    Letter letter{};
    NodeId left = kEmptyNode;
    NodeId right = kEmptyNode;
    std::uint32_t height = 0;
    BigInt length;
    Fingerprint print;
  };

  NodeId make_pair(NodeId a, NodeId b);

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, NodeId> leaves_;
  std::unordered_map<std::uint64_t, NodeId> pairs_;
  std::unordered_map<NodeId, NodeId> inverse_of_;
};

}  // namespace fgwp
