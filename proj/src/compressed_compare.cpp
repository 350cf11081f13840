#include "fgwp/compressed_compare.hpp"

#include "fgwp/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fgwp {

namespace {

// Body element of a recompression rule: a run letter^count, or a reference to
// another rule.
struct Item {
  bool ref = false;
  std::uint32_t sym = 0;
  BigInt count = 1;
};

struct Rule {
  std::vector<Item> body;
  bool dead = false;
  bool root = false;
  std::optional<Item> pre;
  std::optional<Item> suf;
};

class Recompressor {
 public:
  Recompressor(const SlpDag& dag, NodeId a, NodeId b) {
    const NodeId roots[] = {a, b};
    std::vector<NodeId> nodes = dag.reachable(roots);
    std::unordered_map<NodeId, std::uint32_t> index;
    for (NodeId n : nodes) {
      if (dag.kind(n) == SlpDag::Kind::Pair) {
        index.emplace(n, static_cast<std::uint32_t>(rules_.size()));
        rules_.emplace_back();
      }
    }
    auto item_of = [&](NodeId n) -> std::optional<Item> {
      if (n == kEmptyNode) return std::nullopt;
      if (dag.kind(n) == SlpDag::Kind::Leaf) return Item{false, intern_letter(dag.letter(n)), 1};
      return Item{true, index.at(n), 1};
    };
    for (NodeId n : nodes) {
      if (dag.kind(n) != SlpDag::Kind::Pair) continue;
      Rule& r = rules_[index.at(n)];
      r.body.push_back(*item_of(dag.left(n)));
      r.body.push_back(*item_of(dag.right(n)));
    }
    for (NodeId root : roots) {
      Rule r;
      r.root = true;
      if (auto it = item_of(root)) r.body.push_back(*it);
      roots_.push_back(static_cast<std::uint32_t>(rules_.size()));
      rules_.push_back(std::move(r));
    }
  }

  bool run(CompareStats* stats) {
    if (stats) {
      stats->used_recompression = true;
      stats->rules = rules_.size() - 2;
    }
    std::size_t phases = 0;
    while (has_refs(roots_[0]) || has_refs(roots_[1])) {
      if (++phases > 100000) throw InvariantViolation("recompression did not terminate");
      block_comp();
      track(stats);
      pair_comp();
      track(stats);
    }
    if (stats) stats->phases = phases;
    return normalized(roots_[0]) == normalized(roots_[1]);
  }

 private:
  std::uint32_t fresh() { return next_letter_++; }

  std::uint32_t intern_letter(Letter l) {
    auto [it, inserted] = base_letters_.try_emplace(l.code(), 0);
    if (inserted) it->second = fresh();
    return it->second;
  }

  std::uint32_t block_letter(std::uint32_t a, const BigInt& count) {
    auto [it, inserted] = blocks_.try_emplace({a, count}, 0);
    if (inserted) it->second = fresh();
    return it->second;
  }

  std::uint32_t pair_letter(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto [it, inserted] = pairs_.try_emplace(key, 0);
    if (inserted) it->second = fresh();
    return it->second;
  }

  bool has_refs(std::uint32_t r) const {
    return std::any_of(rules_[r].body.begin(), rules_[r].body.end(),
                       [](const Item& i) { return i.ref; });
  }

  static void push_merge(std::vector<Item>& out, const Item& item) {
    if (!item.ref && !out.empty() && !out.back().ref && out.back().sym == item.sym) {
      out.back().count += item.count;
    } else {
      out.push_back(item);
    }
  }

  // Substitutes the popped letters of every referenced rule into r's body.
  void rebuild(Rule& r) {
    std::vector<Item> nb;
    nb.reserve(r.body.size() + 4);
    for (const Item& item : r.body) {
      if (!item.ref) {
        push_merge(nb, item);
        continue;
      }
      const Rule& child = rules_[item.sym];
      if (child.pre) push_merge(nb, *child.pre);
      if (!child.dead) nb.push_back(item);
      if (child.suf) push_merge(nb, *child.suf);
    }
    r.body = std::move(nb);
  }

  void clear_pops() {
    for (Rule& r : rules_) {
      r.pre.reset();
      r.suf.reset();
    }
  }

  void block_comp() {
    clear_pops();
    for (Rule& r : rules_) {
      if (r.dead) continue;
      rebuild(r);
      if (r.root) continue;
      if (r.body.empty() || r.body.front().ref || r.body.back().ref)
        throw InvariantViolation("recompression: rule does not start and end with a letter");
      r.pre = r.body.front();
      r.body.erase(r.body.begin());
      if (r.body.empty()) {
        r.dead = true;
        continue;
      }
      r.suf = r.body.back();
      r.body.pop_back();
      if (r.body.empty()) r.dead = true;
    }
    for (Rule& r : rules_) {
      if (r.dead) continue;
      for (Item& item : r.body) {
        if (!item.ref && item.count > 1) {
          item.sym = block_letter(item.sym, item.count);
          item.count = 1;
        }
      }
    }
  }

  void pair_comp() {
    const std::size_t n = rules_.size();
    std::vector<std::uint32_t> first(n), last(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Rule& r = rules_[i];
      if (r.dead || r.root) continue;
      const Item& f = r.body.front();
      const Item& l = r.body.back();
      first[i] = f.ref ? first[f.sym] : f.sym;
      last[i] = l.ref ? last[l.sym] : l.sym;
    }
    // Occurrence counts of each rule in the two words.
    std::vector<long double> usage(n, 0.0L);
    for (std::uint32_t root : roots_) usage[root] = 1.0L;
    for (std::size_t i = n; i-- > 0;) {
      if (rules_[i].dead || usage[i] == 0.0L) continue;
      for (const Item& item : rules_[i].body) {
        if (item.ref) usage[item.sym] += usage[i];
      }
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, long double> weight;
    for (std::size_t i = 0; i < n; ++i) {
      const Rule& r = rules_[i];
      if (r.dead || usage[i] == 0.0L) continue;
      for (std::size_t j = 0; j + 1 < r.body.size(); ++j) {
        const Item& p = r.body[j];
        const Item& q = r.body[j + 1];
        const std::uint32_t a = p.ref ? last[p.sym] : p.sym;
        const std::uint32_t b = q.ref ? first[q.sym] : q.sym;
        if (a != b) weight[{a, b}] += usage[i];
      }
    }
    if (weight.empty()) return;

    // Greedy cut: each letter joins the side opposite most of its already
    // placed neighbours.
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, long double>>> adjacent;
    for (const auto& [ab, w] : weight) {
      adjacent[ab.first].emplace_back(ab.second, w);
      adjacent[ab.second].emplace_back(ab.first, w);
    }
    std::unordered_map<std::uint32_t, bool> on_left;
    for (const auto& [c, nbrs] : adjacent) {
      long double to_left = 0, to_right = 0;
      for (const auto& [d, w] : nbrs) {
        auto it = on_left.find(d);
        if (it == on_left.end()) continue;
        (it->second ? to_left : to_right) += w;
      }
      on_left[c] = to_left < to_right;
    }
    long double lr = 0, rl = 0;
    for (const auto& [ab, w] : weight) {
      const bool a_left = on_left.at(ab.first);
      const bool b_left = on_left.at(ab.second);
      if (a_left && !b_left) lr += w;
      if (!a_left && b_left) rl += w;
    }
    if (rl > lr) {
      for (auto& [c, side] : on_left) side = !side;
    }
    auto in_left = [&](std::uint32_t c) {
      auto it = on_left.find(c);
      return it != on_left.end() && it->second;
    };
    auto in_right = [&](std::uint32_t c) {
      auto it = on_left.find(c);
      return it != on_left.end() && !it->second;
    };

    clear_pops();
    for (Rule& r : rules_) {
      if (r.dead) continue;
      rebuild(r);
      if (r.root) continue;
      if (!r.body.front().ref && in_right(r.body.front().sym)) {
        r.pre = r.body.front();
        r.body.erase(r.body.begin());
      }
      if (!r.body.empty() && !r.body.back().ref && in_left(r.body.back().sym)) {
        r.suf = r.body.back();
        r.body.pop_back();
      }
      if (r.body.empty()) r.dead = true;
    }
    for (Rule& r : rules_) {
      if (r.dead) continue;
      std::vector<Item> nb;
      nb.reserve(r.body.size());
      for (std::size_t j = 0; j < r.body.size(); ++j) {
        const Item& p = r.body[j];
        if (j + 1 < r.body.size() && !p.ref && !r.body[j + 1].ref && in_left(p.sym) &&
            in_right(r.body[j + 1].sym)) {
          nb.push_back(Item{false, pair_letter(p.sym, r.body[j + 1].sym), 1});
          ++j;
        } else {
          nb.push_back(p);
        }
      }
      r.body = std::move(nb);
    }
  }

  std::vector<std::pair<std::uint32_t, BigInt>> normalized(std::uint32_t r) const {
    std::vector<Item> merged;
    for (const Item& item : rules_[r].body) push_merge(merged, item);
    std::vector<std::pair<std::uint32_t, BigInt>> out;
    out.reserve(merged.size());
    for (const Item& item : merged) out.emplace_back(item.sym, item.count);
    return out;
  }

  void track(CompareStats* stats) const {
    if (!stats) return;
    std::size_t total = 0;
    for (const Rule& r : rules_) {
      if (!r.dead) total += r.body.size();
    }
    stats->peak_items = std::max(stats->peak_items, total);
  }

  std::vector<Rule> rules_;
  std::vector<std::uint32_t> roots_;
  std::uint32_t next_letter_ = 0;
  std::unordered_map<std::uint64_t, std::uint32_t> base_letters_;
  std::map<std::pair<std::uint32_t, BigInt>, std::uint32_t> blocks_;
  std::unordered_map<std::uint64_t, std::uint32_t> pairs_;
};

}  // namespace

bool equal_by_recompression(const SlpDag& dag, NodeId a, NodeId b, CompareStats* stats) {
  if (dag.length(a) != dag.length(b)) return false;
  return Recompressor(dag, a, b).run(stats);
}

bool equal(const SlpDag& dag, NodeId a, NodeId b, CompareStats* stats) {
  if (a == b) return true;
  if (dag.length(a) != dag.length(b)) return false;
  if (dag.fingerprint(a) != dag.fingerprint(b)) return false;
  if (dag.length(a) <= kDirectCompareLimit) {
    const auto n = dag.length(a).convert_to<std::size_t>();
    return dag.extract(a, 0, n) == dag.extract(b, 0, n);
  }
  return Recompressor(dag, a, b).run(stats);
}

bool equal(const Slp& a, const Slp& b) {
  SlpDag dag;
  const NodeId ra = dag.import_slp(a);
  const NodeId rb = dag.import_slp(b);
  return equal(dag, ra, rb);
}

namespace {

// Exact test: suffix_l(w_a) == (prefix_l(w_b))^-1.
bool cancels_exactly(SlpDag& dag, NodeId a, NodeId b, const BigInt& l) {
  if (l == 0) return true;
  if (l <= kDirectCompareLimit) {
    const auto n = l.convert_to<std::size_t>();
    return dag.extract(a, dag.length(a) - l, n) == inverse(dag.extract(b, 0, n));
  }
  const NodeId tail = dag.cut_suffix(a, l);
  const NodeId head = dag.reverse_inverse(dag.cut_prefix(b, l));
  return equal(dag, tail, head);
}

bool cancels_by_fingerprint(const SlpDag& dag, NodeId a, NodeId b, const BigInt& l) {
  return dag.suffix_fingerprint(a, l).forward == dag.prefix_fingerprint(b, l).backward;
}

}  // namespace

BigInt cancellation_length(SlpDag& dag, NodeId a, NodeId b) {
  const BigInt& la = dag.length(a);
  const BigInt& lb = dag.length(b);
  if (la == 0 || lb == 0) return 0;
  if (dag.last_letter(a) != dag.first_letter(b).inverse()) return 0;
  const BigInt bound = la < lb ? la : lb;
  // Invariant: the predicate holds at lo and fails at hi + 1 (or hi == bound).
  BigInt lo = 1, hi = bound;
  while (lo < hi) {
    BigInt mid = lo + (hi - lo + 1) / 2;
    if (cancels_by_fingerprint(dag, a, b, mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (cancels_exactly(dag, a, b, lo)) return lo;
  // A fingerprint collision misled the search; redo it with exact tests.
  lo = 1;
  hi = bound;
  while (lo < hi) {
    BigInt mid = lo + (hi - lo + 1) / 2;
    if (cancels_exactly(dag, a, b, mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

BigInt cancellation_length(const Slp& a, const Slp& b) {
  SlpDag dag;
  const NodeId ra = dag.import_slp(a);
  const NodeId rb = dag.import_slp(b);
  return cancellation_length(dag, ra, rb);
}

}  // namespace fgwp
