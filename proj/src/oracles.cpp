#include "fgwp/oracles.hpp"

#include "fgwp/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace fgwp::oracle {

namespace {

bool expand_into(const Slp& slp, std::size_t i, Word& out, std::size_t cap) {
  const Production& p = slp.productions[i];
  if (const auto* pr = std::get_if<PairRule>(&p)) {
    return expand_into(slp, pr->left, out, cap) && expand_into(slp, pr->right, out, cap);
  }
  if (const auto* t = std::get_if<TerminalRule>(&p)) {
    if (out.size() >= cap) return false;
    out.push_back(t->letter);
  }
  return true;
}

}  // namespace

std::optional<Word> expand(const Slp& slp, std::size_t cap) {
  for (std::size_t i = 0; i < slp.size(); ++i) {
    if (const auto* pr = std::get_if<PairRule>(&slp.productions[i])) {
      if (pr->left >= i || pr->right >= i) throw InvalidInput("oracle: malformed SLP");
    }
  }
  // Lengths first so that oversized words are rejected before expanding.
  std::vector<double> len(slp.size(), 0);
  for (std::size_t i = 0; i < slp.size(); ++i) {
    const Production& p = slp.productions[i];
    if (const auto* pr = std::get_if<PairRule>(&p)) len[i] = len[pr->left] + len[pr->right];
    else if (std::holds_alternative<TerminalRule>(p)) len[i] = 1;
  }
  if (slp.size() == 0 || len.back() > static_cast<double>(cap)) return std::nullopt;
  Word out;
  if (!expand_into(slp, slp.size() - 1, out, cap)) return std::nullopt;
  return out;
}

Word reduce(const Word& w) {
  // Two-pointer in place: out[0..k) is reduced at every step.
  Word out(w);
  std::size_t k = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (k > 0 && out[k - 1].generator == out[i].generator &&
        out[k - 1].inverted != out[i].inverted) {
      --k;
    } else {
      out[k++] = out[i];
    }
  }
  out.resize(k);
  return out;
}

std::optional<Word> expand_reduce(const Slp& slp, std::size_t cap) {
  auto w = oracle::expand(slp, cap);
  if (!w) return std::nullopt;
  return reduce(*w);
}

namespace {

Word inverted(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, !it->inverted});
  return out;
}

Word join(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::optional<long long> power_membership(const Word& u, const Word& g) {
  const Word ru = reduce(u);
  if (ru.empty()) throw InvalidInput("power_membership: u is trivial");
  // u = x v x^-1 with v cyclically reduced.
  std::size_t i = 0;
  while (2 * (i + 1) <= ru.size() && ru[i].generator == ru[ru.size() - 1 - i].generator &&
         ru[i].inverted != ru[ru.size() - 1 - i].inverted)
    ++i;
  const Word x(ru.begin(), ru.begin() + static_cast<std::ptrdiff_t>(i));
  const Word v(ru.begin() + static_cast<std::ptrdiff_t>(i),
               ru.end() - static_cast<std::ptrdiff_t>(i));
  const Word h = reduce(join(join(inverted(x), g), x));
  if (h.empty()) return 0;
  if (h.size() % v.size() != 0) return std::nullopt;
  const auto c = static_cast<long long>(h.size() / v.size());
  for (long long sign : {1LL, -1LL}) {
    const Word base = sign > 0 ? v : inverted(v);
    bool match = true;
    for (std::size_t p = 0; p < h.size() && match; ++p) match = h[p] == base[p % base.size()];
    if (match) return sign * c;
  }
  return std::nullopt;
}

bool britton_wp_level1(const Tower& tower, const Word& w) {
  if (tower.n() != 1) throw InvalidInput("britton_wp_level1 needs a one-level tower");
  // entry index of each stable letter, -1 for base letters
  std::map<GeneratorId, std::pair<std::size_t, std::size_t>> stable;
  const auto& entries = tower.levels[0].entries;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    for (std::size_t i = 0; i < entries[e].letters.size(); ++i)
      stable[entries[e].letters[i]] = {e, i};
  }
  auto is_stable = [&](Letter x) { return stable.count(x.generator) > 0; };

  // Token sequence: base letters, and runs of stable letters of one entry
  // stored as exponent vectors.
  struct Token {
    bool run = false;
    Letter letter{};
    std::size_t entry = 0;
    std::vector<long long> exps;
  };
  std::vector<Token> tokens;
  for (Letter x : w) {
    if (!is_stable(x)) {
      tokens.push_back({false, x, 0, {}});
      continue;
    }
    auto [e, i] = stable.at(x.generator);
    Token t{true, {}, e, std::vector<long long>(entries[e].letters.size(), 0)};
    t.exps[i] = x.inverted ? -1 : 1;
    tokens.push_back(std::move(t));
  }

  auto zero = [](const std::vector<long long>& v) {
    return std::all_of(v.begin(), v.end(), [](long long c) { return c == 0; });
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // Drop trivial runs and reduce base letters.
    std::vector<Token> next;
    for (auto& t : tokens) {
      if (t.run && zero(t.exps)) {
        changed = true;
        continue;
      }
      if (!t.run && !next.empty() && !next.back().run &&
          next.back().letter.generator == t.letter.generator &&
          next.back().letter.inverted != t.letter.inverted) {
        next.pop_back();
        changed = true;
        continue;
      }
      if (t.run && !next.empty() && next.back().run && next.back().entry == t.entry) {
        for (std::size_t k = 0; k < t.exps.size(); ++k) next.back().exps[k] += t.exps[k];
        changed = true;
        continue;
      }
      next.push_back(std::move(t));
    }
    tokens = std::move(next);
    if (changed) continue;
    // Pinch: run_e  g  run_e with g a power of u_e; move g to the left of the
    // first run (g commutes with every stable letter of e).
    std::size_t last_run = tokens.size();
    for (std::size_t j = 0; j < tokens.size() && !changed; ++j) {
      if (!tokens[j].run) continue;
      if (last_run < tokens.size() && tokens[last_run].entry == tokens[j].entry) {
        Word g;
        for (std::size_t k = last_run + 1; k < j; ++k) g.push_back(tokens[k].letter);
        if (power_membership(entries[tokens[j].entry].u, g)) {
          std::vector<Token> moved(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(last_run));
          for (std::size_t k = last_run + 1; k < j; ++k) moved.push_back(tokens[k]);
          moved.push_back(tokens[last_run]);
          moved.insert(moved.end(), tokens.begin() + static_cast<std::ptrdiff_t>(j), tokens.end());
          tokens = std::move(moved);
          changed = true;
        }
      }
      last_run = j;
    }
  }
  return tokens.empty();
}

std::optional<Word> naive_aut_compose(const AutomorphismSet& set, const Composition& composition,
                                      GeneratorId j, std::size_t cap) {
  Word w{Letter{j, false}};
  for (auto it = composition.rbegin(); it != composition.rend(); ++it) {
    const auto& images = set.specs.at(*it).images;
    Word next;
    for (Letter x : w) {
      auto found = images.find(x.generator);
      const Word img = found == images.end() ? Word{Letter{x.generator, false}} : found->second;
      const Word piece = x.inverted ? inverted(img) : img;
      if (next.size() + piece.size() > cap) return std::nullopt;
      next.insert(next.end(), piece.begin(), piece.end());
    }
    w = std::move(next);
  }
  return w;
}

}  // namespace fgwp::oracle
