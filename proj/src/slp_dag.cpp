#include "fgwp/slp_dag.hpp"

#include "fgwp/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace fgwp {

namespace {

constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBase = 0x0B4F3A2D19C7E561ULL % kModulus;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kModulus);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  return r >= kModulus ? r - kModulus : r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kModulus ? r - kModulus : r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t letter_code(Letter letter) {
  std::uint64_t v = splitmix64(letter.code() ^ 0x5DEECE66DULL) % kModulus;
  return v == 0 ? 1 : v;
}

}  // namespace

Fingerprint combine(const Fingerprint& u, const Fingerprint& v) {
  return {add_mod(u.forward, mul_mod(u.scale, v.forward)),
          add_mod(v.backward, mul_mod(v.scale, u.backward)), mul_mod(u.scale, v.scale)};
}

Fingerprint letter_fingerprint(Letter letter) {
  return {letter_code(letter), letter_code(letter.inverse()), kBase};
}

SlpDag::SlpDag() { nodes_.push_back(Node{}); }

NodeId SlpDag::leaf(Letter letter) {
  auto [it, inserted] = leaves_.try_emplace(letter.code(), 0);
  if (!inserted) return it->second;
  Node n;
  n.kind = Kind::Leaf;
  n.letter = letter;
  n.height = 1;
  n.length = 1;
  n.print = letter_fingerprint(letter);
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  it->second = id;
  return id;
}

NodeId SlpDag::make_pair(NodeId a, NodeId b) {
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  auto [it, inserted] = pairs_.try_emplace(key, 0);
  if (!inserted) return it->second;
  Node n;
  n.kind = Kind::Pair;
  n.left = a;
  n.right = b;
  n.height = 1 + std::max(nodes_[a].height, nodes_[b].height);
  n.length = nodes_[a].length + nodes_[b].length;
  n.print = combine(nodes_[a].print, nodes_[b].print);
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  it->second = id;
  return id;
}

NodeId SlpDag::concat(NodeId a, NodeId b) {
  if (a == kEmptyNode) return b;
  if (b == kEmptyNode) return a;
  return make_pair(a, b);
}

NodeId SlpDag::concat_left(std::span<const NodeId> nodes) {
  NodeId acc = kEmptyNode;
  for (NodeId n : nodes) acc = concat(acc, n);
  return acc;
}

NodeId SlpDag::concat_balanced(std::span<const NodeId> nodes) {
  if (nodes.empty()) return kEmptyNode;
  if (nodes.size() == 1) return nodes[0];
  const std::size_t half = nodes.size() / 2;
  NodeId l = concat_balanced(nodes.subspan(0, half));
  NodeId r = concat_balanced(nodes.subspan(half));
  return concat(l, r);
}

NodeId SlpDag::from_word(const Word& w) {
  std::vector<NodeId> leaves;
  leaves.reserve(w.size());
  for (Letter x : w) leaves.push_back(leaf(x));
  return concat_balanced(leaves);
}

NodeId SlpDag::power(NodeId base, const BigInt& q) {
  if (q == 0 || base == kEmptyNode) return kEmptyNode;
  if (q < 0) return power(reverse_inverse(base), BigInt(-q));
  const std::size_t top = floor_log2(q);
  NodeId acc = base;
  for (std::size_t bit = top; bit-- > 0;) {
    acc = concat(acc, acc);
    if (bit_test(q, static_cast<unsigned>(bit))) acc = concat(acc, base);
  }
  return acc;
}

NodeId SlpDag::reverse_inverse(NodeId node) {
  if (node == kEmptyNode) return kEmptyNode;
  if (auto it = inverse_of_.find(node); it != inverse_of_.end()) return it->second;
  // Iterative post-order so deep programs do not exhaust the call stack.
  std::vector<std::pair<NodeId, bool>> stack{{node, false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    if (inverse_of_.count(n)) {
      stack.pop_back();
      continue;
    }
    const Node& cur = nodes_[n];
    if (cur.kind == Kind::Leaf) {
      NodeId inv = leaf(cur.letter.inverse());
      inverse_of_[n] = inv;
      inverse_of_[inv] = n;
      stack.pop_back();
      continue;
    }
    if (!expanded) {
      stack.back().second = true;
      const NodeId l = cur.left, r = cur.right;
      if (!inverse_of_.count(l)) stack.push_back({l, false});
      if (!inverse_of_.count(r)) stack.push_back({r, false});
      continue;
    }
    const NodeId l = nodes_[n].left, r = nodes_[n].right;
    NodeId inv = concat(inverse_of_.at(r), inverse_of_.at(l));
    inverse_of_[n] = inv;
    inverse_of_[inv] = n;
    stack.pop_back();
  }
  return inverse_of_.at(node);
}

NodeId SlpDag::cut_prefix(NodeId node, const BigInt& k) {
  if (k < 0 || k > length(node)) throw std::out_of_range("cut_prefix: length out of range");
  if (k == 0) return kEmptyNode;
  std::vector<NodeId> lefts;
  NodeId cur = node;
  BigInt rem = k;
  while (rem != length(cur)) {
    const NodeId l = left(cur);
    if (rem <= length(l)) {
      cur = l;
    } else {
      lefts.push_back(l);
      rem -= length(l);
      cur = right(cur);
    }
  }
  NodeId acc = cur;
  for (auto it = lefts.rbegin(); it != lefts.rend(); ++it) acc = concat(*it, acc);
  return acc;
}

NodeId SlpDag::cut_suffix(NodeId node, const BigInt& k) {
  if (k < 0 || k > length(node)) throw std::out_of_range("cut_suffix: length out of range");
  if (k == 0) return kEmptyNode;
  std::vector<NodeId> rights;
  NodeId cur = node;
  BigInt rem = k;
  while (rem != length(cur)) {
    const NodeId r = right(cur);
    if (rem <= length(r)) {
      cur = r;
    } else {
      rights.push_back(r);
      rem -= length(r);
      cur = left(cur);
    }
  }
  NodeId acc = cur;
  for (auto it = rights.rbegin(); it != rights.rend(); ++it) acc = concat(acc, *it);
  return acc;
}

NodeId SlpDag::join(NodeId a, NodeId b) {
  if (a == kEmptyNode) return b;
  if (b == kEmptyNode) return a;
  const auto ha = static_cast<long>(height(a));
  const auto hb = static_cast<long>(height(b));
  if (ha - hb <= 1 && hb - ha <= 1) return concat(a, b);
  if (ha > hb) {
    const NodeId a1 = left(a);
    const NodeId r = join(right(a), b);
    if (height(r) <= height(a1) + 1) return concat(a1, r);
    const NodeId r1 = left(r), r2 = right(r);
    if (height(r1) <= height(r2)) return concat(concat(a1, r1), r2);
    return concat(concat(a1, left(r1)), concat(right(r1), r2));
  }
  const NodeId b2 = right(b);
  const NodeId l = join(a, left(b));
  if (height(l) <= height(b2) + 1) return concat(l, b2);
  const NodeId l1 = left(l), l2 = right(l);
  if (height(l2) <= height(l1)) return concat(l1, concat(l2, b2));
  return concat(concat(l1, left(l2)), concat(right(l2), b2));
}

NodeId SlpDag::rebalance(NodeId node) {
  std::unordered_map<NodeId, NodeId> done;
  for (NodeId n : reachable(std::span<const NodeId>(&node, 1))) {
    if (kind(n) == Kind::Leaf) {
      done[n] = n;
    } else {
      done[n] = join(done.at(left(n)), done.at(right(n)));
    }
  }
  return node == kEmptyNode ? kEmptyNode : done.at(node);
}

std::vector<NodeId> SlpDag::map_letters(std::span<const NodeId> roots,
                                        const std::function<NodeId(Letter)>& image) {
  std::unordered_map<NodeId, NodeId> done;
  done[kEmptyNode] = kEmptyNode;
  for (NodeId n : reachable(roots)) {
    if (kind(n) == Kind::Leaf) {
      done[n] = image(letter(n));
    } else {
      done[n] = concat(done.at(left(n)), done.at(right(n)));
    }
  }
  std::vector<NodeId> out;
  out.reserve(roots.size());
  for (NodeId r : roots) out.push_back(done.at(r));
  return out;
}

NodeId SlpDag::import_slp(const Slp& slp) {
  require_valid(slp);
  std::vector<NodeId> ids(slp.size(), kEmptyNode);
  for (std::size_t i = 0; i < slp.size(); ++i) {
    const Production& p = slp.productions[i];
    if (const auto* pr = std::get_if<PairRule>(&p)) {
      ids[i] = concat(ids[pr->left], ids[pr->right]);
    } else if (const auto* t = std::get_if<TerminalRule>(&p)) {
      ids[i] = leaf(t->letter);
    }
  }
  return ids.back();
}

Slp SlpDag::export_slp(NodeId root) const {
  if (root == kEmptyNode) return Slp::empty();
  const std::vector<NodeId> order = reachable(std::span<const NodeId>(&root, 1));
  std::unordered_map<NodeId, std::size_t> index;
  index.reserve(order.size());
  Slp out;
  out.productions.reserve(order.size());
  for (NodeId n : order) {
    index[n] = out.productions.size();
    if (kind(n) == Kind::Leaf) {
      out.productions.emplace_back(TerminalRule{letter(n)});
    } else {
      out.productions.emplace_back(PairRule{index.at(left(n)), index.at(right(n))});
    }
  }
  return out;
}

Fingerprint SlpDag::prefix_fingerprint(NodeId n, const BigInt& k) const {
  if (k == 0) return {};
  Fingerprint acc;
  NodeId cur = n;
  BigInt rem = k;
  while (rem != length(cur)) {
    const NodeId l = left(cur);
    if (rem <= length(l)) {
      cur = l;
    } else {
      acc = combine(acc, fingerprint(l));
      rem -= length(l);
      cur = right(cur);
    }
  }
  return combine(acc, fingerprint(cur));
}

Fingerprint SlpDag::suffix_fingerprint(NodeId n, const BigInt& k) const {
  if (k == 0) return {};
  Fingerprint acc;  // fingerprint of the part to the right of `cur`
  NodeId cur = n;
  BigInt rem = k;
  while (rem != length(cur)) {
    const NodeId r = right(cur);
    if (rem <= length(r)) {
      cur = r;
    } else {
      acc = combine(fingerprint(r), acc);
      rem -= length(r);
      cur = left(cur);
    }
  }
  return combine(fingerprint(cur), acc);
}

Letter SlpDag::first_letter(NodeId n) const {
  if (n == kEmptyNode) throw std::out_of_range("first_letter of the empty word");
  while (kind(n) == Kind::Pair) n = left(n);
  return letter(n);
}

Letter SlpDag::last_letter(NodeId n) const {
  if (n == kEmptyNode) throw std::out_of_range("last_letter of the empty word");
  while (kind(n) == Kind::Pair) n = right(n);
  return letter(n);
}

Word SlpDag::extract(NodeId n, const BigInt& start, std::size_t count) const {
  Word out;
  if (count == 0) return out;
  if (start < 0 || start + count > length(n)) throw std::out_of_range("extract: range out of bounds");
  out.reserve(count);
  std::vector<NodeId> pending;
  NodeId cur = n;
  BigInt offset = start;
  while (kind(cur) == Kind::Pair) {
    const NodeId l = left(cur);
    if (offset < length(l)) {
      pending.push_back(right(cur));
      cur = l;
    } else {
      offset -= length(l);
      cur = right(cur);
    }
  }
  out.push_back(letter(cur));
  while (out.size() < count) {
    cur = pending.back();
    pending.pop_back();
    while (kind(cur) == Kind::Pair) {
      pending.push_back(right(cur));
      cur = left(cur);
    }
    out.push_back(letter(cur));
  }
  return out;
}

std::optional<Word> SlpDag::expand(NodeId n, std::size_t cap) const {
  if (length(n) > cap) return std::nullopt;
  return extract(n, 0, length(n).convert_to<std::size_t>());
}

std::vector<NodeId> SlpDag::reachable(std::span<const NodeId> roots) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeId> stack;
  std::vector<NodeId> out;
  for (NodeId r : roots) {
    if (r != kEmptyNode && !seen[r]) {
      seen[r] = 1;
      stack.push_back(r);
    }
  }
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    out.push_back(n);
    if (kind(n) == Kind::Pair) {
      for (NodeId c : {left(n), right(n)}) {
        if (!seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SlpDag::program_size(NodeId root) const {
  if (root == kEmptyNode) return 1;
  return reachable(std::span<const NodeId>(&root, 1)).size();
}

}  // namespace fgwp
