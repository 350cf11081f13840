#include "fgwp/normal_form.hpp"

#include "fgwp/errors.hpp"
#include "fgwp/free_group.hpp"
#include "fgwp/phi_reduction.hpp"

#include <algorithm>
#include <limits>

namespace fgwp {

int sigma(const ExponentVector& alpha) {
  for (std::size_t i = alpha.size(); i-- > 0;) {
    if (alpha[i] != 0) return alpha[i] > 0 ? 1 : -1;
  }
  return 0;
}

namespace {

bool is_zero(const ExponentVector& alpha) { return sigma(alpha) == 0; }

void push_reduced(Word& w, Letter x) {
  if (!w.empty() && w.back().cancels(x)) {
    w.pop_back();
  } else {
    w.push_back(x);
  }
}

void append_reduced(Word& w, const Word& tail) {
  for (Letter x : tail) push_reduced(w, x);
}

Word tau_word(const CentralizerEntry& e, const ExponentVector& alpha) {
  Word out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const Word t = power(Word{pos(e.letters[i])}, alpha[i]);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

std::size_t tau_length(const ExponentVector& alpha) {
  std::size_t n = 0;
  for (long long a : alpha) n += static_cast<std::size_t>(a < 0 ? -a : a);
  return n;
}

class Commuter {
 public:
  Commuter(const Tower& tower, std::size_t k) : lower_(tower.truncated(k - 1)) {}

  bool commutes(const Word& u, const Word& h) const {
    if (h.empty()) return true;
    return internal_word_problem(lower_, commutator(u, h));
  }

 private:
  Tower lower_;
};

}  // namespace

CollectedForm britton_collect(const Tower& tower, std::size_t k, const Word& w) {
  if (k == 0 || k > tower.n())
    throw std::out_of_range("britton_collect: level " + std::to_string(k) + " out of range");
  const Commuter commuter(tower, k);
  const auto& entries = tower.levels[k - 1].entries;
  CollectedForm form;
  form.level = k;
  Word current;
  for (Letter x : w) {
    auto s = tower.stable(x.generator);
    if (!s || s->level < k) {
      push_reduced(current, x);
      continue;
    }
    if (s->level > k)
      throw InvalidInput("britton_collect: letter " + tower.alphabet.name(x.generator) +
                         " lies above level " + std::to_string(k));
    const CentralizerEntry& e = entries[s->entry];
    auto& blocks = form.blocks;
    if (!blocks.empty() && blocks.back().entry == s->entry &&
        commuter.commutes(e.core, current)) {
      CollectedBlock& top = blocks.back();
      append_reduced(top.h, current);
      current.clear();
      top.alpha[s->index - 1] += x.inverted ? -1 : 1;
      if (is_zero(top.alpha)) {
        current = std::move(top.h);
        blocks.pop_back();
      }
      continue;
    }
    CollectedBlock block;
    block.h = std::move(current);
    current.clear();
    block.entry = s->entry;
    block.alpha.assign(e.count, 0);
    block.alpha[s->index - 1] = x.inverted ? -1 : 1;
    blocks.push_back(std::move(block));
  }
  form.tail = std::move(current);
  return form;
}

Word flatten(const Tower& tower, const CollectedForm& form) {
  Word out;
  for (const auto& b : form.blocks) {
    out.insert(out.end(), b.h.begin(), b.h.end());
    const Word t = tau_word(tower.levels[form.level - 1].entries[b.entry], b.alpha);
    out.insert(out.end(), t.begin(), t.end());
  }
  out.insert(out.end(), form.tail.begin(), form.tail.end());
  return out;
}

NormalForm normal_form(const Tower& tower, const Word& w) {
  NormalForm nf;
  nf.level = tower.n();
  const Word internal = tower.internalize(w);
  if (tower.n() == 0) {
    nf.tail = free_reduce(internal);
    return nf;
  }
  const std::size_t n = tower.n();
  const CollectedForm form = britton_collect(tower, n, internal);
  const auto& entries = tower.levels[n - 1].entries;
  const BigInt factor_big = pow(BigInt(10 * constants(tower).L), n - 1);
  if (factor_big * BigInt(internal.size() + 1) > std::numeric_limits<long long>::max() / 4)
    throw InvalidInput("normal_form: word too long for explicit normal form");
  const long long factor = factor_big.convert_to<long long>();

  const std::size_t m = form.blocks.size();
  std::vector<const Word*> h(m + 1);
  for (std::size_t i = 0; i < m; ++i) h[i] = &form.blocks[i].h;
  h[m] = &form.tail;
  std::vector<long long> r(m + 1);
  for (std::size_t i = 0; i <= m; ++i) r[i] = factor * static_cast<long long>(h[i]->size()) + 1;
  std::vector<int> sig(m);
  for (std::size_t i = 0; i < m; ++i) sig[i] = sigma(form.blocks[i].alpha);

  auto g_word = [&](std::size_t i) {
    Word g;
    if (i > 0) g = power(entries[form.blocks[i - 1].entry].core, sig[i - 1] * r[i]);
    g.insert(g.end(), h[i]->begin(), h[i]->end());
    if (i < m) {
      const Word right = power(entries[form.blocks[i].entry].core, sig[i] * r[i]);
      g.insert(g.end(), right.begin(), right.end());
    }
    return free_reduce(g);
  };
  for (std::size_t i = 0; i < m; ++i) {
    Syllable s;
    s.g = g_word(i);
    s.entry = form.blocks[i].entry;
    s.c = -sig[i] * (r[i] + r[i + 1]);
    s.alpha = form.blocks[i].alpha;
    nf.syllables.push_back(std::move(s));
  }
  nf.tail = g_word(m);
  return nf;
}

std::size_t syllable_count(const NormalForm& nf) { return nf.syllables.size(); }

Word flatten(const Tower& tower, const NormalForm& nf) {
  Word out;
  for (const auto& s : nf.syllables) {
    const CentralizerEntry& e = tower.levels[nf.level - 1].entries[s.entry];
    out.insert(out.end(), s.g.begin(), s.g.end());
    const Word uc = power(e.core, s.c);
    out.insert(out.end(), uc.begin(), uc.end());
    const Word t = tau_word(e, s.alpha);
    out.insert(out.end(), t.begin(), t.end());
  }
  out.insert(out.end(), nf.tail.begin(), nf.tail.end());
  return out;
}

std::size_t flattened_length(const Tower& tower, const NormalForm& nf) {
  std::size_t total = nf.tail.size();
  for (const auto& s : nf.syllables) {
    const CentralizerEntry& e = tower.levels[nf.level - 1].entries[s.entry];
    total += s.g.size() + static_cast<std::size_t>(s.c < 0 ? -s.c : s.c) * e.core.size() +
             tau_length(s.alpha);
  }
  return total;
}

NormalFormCheck check_normal_form(const Tower& tower, const NormalForm& nf,
                                  const std::vector<long long>& scales) {
  NormalFormCheck check;
  const std::size_t m = nf.syllables.size();
  if (m == 0) return check;
  const auto& entries = tower.levels[nf.level - 1].entries;
  for (std::size_t i = 0; i < m; ++i) {
    if (is_zero(nf.syllables[i].alpha)) {
      check.alpha_nonzero = false;
      check.problems.push_back("syllable " + std::to_string(i + 1) + " has alpha = 0");
    }
  }
  for (std::size_t i = 0; i <= m; ++i) {
    const Word& g = i < m ? nf.syllables[i].g : nf.tail;
    if (tower.level_of(g) >= nf.level) {
      check.lower_level_ok = false;
      check.problems.push_back("g_" + std::to_string(i + 1) + " uses a level-" +
                               std::to_string(nf.level) + " letter");
    }
  }
  const Commuter commuter(tower, nf.level);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const Word& ui = entries[nf.syllables[i].entry].core;
    const Word& un = entries[nf.syllables[i + 1].entry].core;
    const Word& gn = nf.syllables[i + 1].g;
    if (commuter.commutes(ui, un) && commuter.commutes(ui, gn)) {
      check.boundaries_ok = false;
      check.problems.push_back("syllables " + std::to_string(i + 1) + " and " +
                               std::to_string(i + 2) + " should have been merged");
    }
  }
  if (nf.level == 1) {
    check.additivity_checked = true;
    for (long long s : scales) {
      Word product;
      std::size_t expected = 0;
      for (const auto& syl : nf.syllables) {
        const Word g = free_reduce(syl.g);
        const Word uq = power(entries[syl.entry].core, sigma(syl.alpha) * s);
        product.insert(product.end(), g.begin(), g.end());
        product.insert(product.end(), uq.begin(), uq.end());
        expected += g.size() + uq.size();
      }
      const Word tail = free_reduce(nf.tail);
      product.insert(product.end(), tail.begin(), tail.end());
      expected += tail.size();
      if (free_reduce(product).size() != expected) {
        check.additivity_ok = false;
        check.problems.push_back("length is not additive for q = sigma * " + std::to_string(s));
      }
    }
  }
  return check;
}

std::string format_normal_form(const Tower& tower, const NormalForm& nf) {
  std::string out = "syllables " + std::to_string(nf.syllables.size()) + "\n";
  for (std::size_t i = 0; i < nf.syllables.size(); ++i) {
    const auto& s = nf.syllables[i];
    const CentralizerEntry& e = tower.levels[nf.level - 1].entries[s.entry];
    out += std::to_string(i + 1) + ": g = " + format_word_compact(s.g, tower.alphabet);
    out += " ; u = " + format_word(e.core, tower.alphabet);
    out += " ; c = " + std::to_string(s.c) + " ; alpha = (";
    for (std::size_t j = 0; j < s.alpha.size(); ++j) {
      if (j) out += ", ";
      out += std::to_string(s.alpha[j]);
    }
    out += ")\n";
  }
  out += "tail: " + format_word_compact(nf.tail, tower.alphabet) + "\n";
  return out;
}

}  // namespace fgwp
