// Acceptance run: one PASS/FAIL line per criterion.

#include "support.hpp"

#include "fgwp/aut_wp.hpp"
#include "fgwp/cli.hpp"
#include "fgwp/compressed_compare.hpp"
#include "fgwp/free_group.hpp"
#include "fgwp/lyndon_length.hpp"
#include "fgwp/normal_form.hpp"
#include "fgwp/oracles.hpp"
#include "fgwp/phi_reduction.hpp"
#include "fgwp/slp_dag.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace fgwp;
using namespace fgwp::testing;

namespace {

const char* kG1 = "base a b\nlevel { centralizer u=\"a b\" count=1 letters t }\n";
const char* kG2 =
    "base a b\n"
    "level { centralizer u=\"a b\" count=1 letters t }\n"
    "level { centralizer u=\"a t\" count=1 letters s }\n";
const char* kGolden = "a (ab)^11 t^-1 a a b a^-1 t";

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Criterion {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && failures_.size() < 5) failures_.push_back(what);
    if (!cond) ++failed_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  [[nodiscard]] Outcome outcome() const {
    Outcome o;
    o.ok = failed_ == 0;
    o.detail = notes_;
    if (failed_) {
      o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(failed_) + " failure(s):";
      for (const auto& f : failures_) o.detail += " [" + f + "]";
    }
    return o;
  }

 private:
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Outcome golden_length() {
  Criterion c;
  const Tower t = load_tower(kG1);
  const Word w = parse_word(kGolden, t.alphabet);
  const LengthVector l = lyndon_length(t, w);
  c.require(l.to_string() == "(-21, 2)", "l(w) = " + l.to_string());
  const long long v = l1(t, britton_collect(t, 1, w), 30);
  c.require(v == -21, "l1(w, 30) = " + std::to_string(v));
  c.note("l(w) = " + l.to_string() + ", l1(w, 30) = " + std::to_string(v));
  return c.outcome();
}

Outcome golden_normal_form() {
  Criterion c;
  const Tower t = load_tower(kG1);
  const Word w = parse_word(kGolden, t.alphabet);
  const NormalForm nf = normal_form(t, w);
  c.require(nf.syllables.size() == 2, "m = " + std::to_string(nf.syllables.size()));
  for (const auto& s : nf.syllables)
    c.require(format_word(t.levels[0].entries[s.entry].core, t.alphabet) == "a b", "u != ab");
  const NormalFormCheck check = check_normal_form(t, nf);
  c.require(check.alpha_nonzero, "condition (i)");
  c.require(check.lower_level_ok, "condition (ii)");
  c.require(check.boundaries_ok, "condition (iii)");
  // (iv): l(g_1 u^q_1 ... g_m+1) is the sum of the factor lengths.
  const Word& u = t.levels[0].entries[0].core;
  for (long long s : {1, 2, 5, 13}) {
    Word product;
    LengthVector sum;
    for (const auto& syl : nf.syllables) {
      const Word uq = power(u, sigma(syl.alpha) * s);
      product = concat(concat(product, syl.g), uq);
      sum = sum + lyndon_length(t, syl.g) + lyndon_length(t, uq);
    }
    product = concat(product, nf.tail);
    sum = sum + lyndon_length(t, nf.tail);
    c.require(lyndon_length(t, product) == sum, "condition (iv) at q scale " + std::to_string(s));
  }
  c.require(word_problem(t, concat(flatten(t, nf), inverse(w))), "flatten(nf) != w");
  const std::size_t len = flattened_length(t, nf);
  c.require(len <= 20 * w.size(), "length " + std::to_string(len));
  c.note("m = " + std::to_string(nf.syllables.size()) + ", length " + std::to_string(len) +
         " <= " + std::to_string(20 * w.size()));
  return c.outcome();
}

Outcome equality_suite() {
  Criterion c;
  Rng rng(20261016);
  int equal_pairs = 0, recompressed = 0;
  std::size_t longest = 0;
  const int kPairs = 1200;
  for (int i = 0; i < kPairs; ++i) {
    const Slp a = random_slp(rng, 3, uniform(rng, 1, 4), uniform(rng, 5, 45), 100000);
    Slp b;
    const std::size_t n = produced_length(a).convert_to<std::size_t>();
    switch (i % 4) {
      case 0: {  // same word, different shape
        const std::size_t k = uniform(rng, 0, n);
        b = concat(cut_prefix(a, k), cut_suffix(a, n - k));
        break;
      }
      case 1:  // same word via the reverse-inverse twice and a rebalance
        b = rebalance(reverse_inverse(reverse_inverse(a)));
        break;
      case 2: {  // one letter changed
        const std::size_t k = uniform(rng, 0, n - 1);
        Letter x = (*oracle::expand(a))[k];
        x.inverted = !x.inverted;
        b = concat(concat(cut_prefix(a, k), Slp::terminal(x)), cut_suffix(a, n - k - 1));
        break;
      }
      default:
        b = random_slp(rng, 3, uniform(rng, 1, 4), uniform(rng, 5, 45), 100000);
    }
    const Word wa = *oracle::expand(a), wb = *oracle::expand(b);
    longest = std::max({longest, wa.size(), wb.size()});
    const bool expected = wa == wb;
    equal_pairs += expected;
    SlpDag dag;
    const NodeId x = dag.import_slp(a), y = dag.import_slp(b);
    CompareStats stats;
    const bool got = equal_by_recompression(dag, x, y, &stats);
    recompressed += stats.used_recompression;
    c.require(got == expected, "pair " + std::to_string(i));
    c.require(equal(a, b) == expected, "equal() on pair " + std::to_string(i));
  }
  c.note(std::to_string(kPairs) + " pairs, " + std::to_string(equal_pairs) + " equal, longest " +
         std::to_string(longest) + ", " + std::to_string(recompressed) + " by recompression");
  return c.outcome();
}

Slp nested(Rng& rng, int depth) {
  if (depth == 0) return random_slp(rng, 3, 2, uniform(rng, 0, 8), 2000);
  const Slp x = nested(rng, depth - 1), y = nested(rng, depth - 1);
  switch (uniform(rng, 0, 2)) {
    case 0: return concat(concat(x, y), concat(reverse_inverse(x), reverse_inverse(y)));
    case 1: return concat(concat(x, y), reverse_inverse(x));
    default: return concat(x, reverse_inverse(x));
  }
}

Outcome free_cwp_suite() {
  Criterion c;
  Rng rng(7);
  int trivial = 0;
  const int kPrograms = 1200;
  for (int i = 0; i < kPrograms; ++i) {
    const Slp a = i % 2 ? random_slp(rng, 2, uniform(rng, 1, 4), uniform(rng, 5, 40), 100000)
                        : nested(rng, int(uniform(rng, 1, 3)));
    const auto reduced = oracle::expand_reduce(a);
    if (!reduced) continue;
    const bool expected = reduced->empty();
    trivial += expected;
    c.require(is_trivial_compressed(a) == expected, "program " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const Slp a = random_slp(rng, 3, uniform(rng, 1, 4), uniform(rng, 5, 60), 1u << 30);
    c.require(is_trivial_compressed(concat(a, reverse_inverse(a))), "a a^-1 #" + std::to_string(i));
  }
  c.note(std::to_string(kPrograms) + " programs, " + std::to_string(trivial) +
         " trivial, 100 doubled programs");
  return c.outcome();
}

Word dense_word(Rng& rng, const Tower& t, std::size_t max_len) {
  for (;;) {
    Word w;
    if (coin(rng)) {
      w = random_tower_word(rng, t, uniform(rng, 1, max_len), 0.35);
    } else {
      // v r v^-1 with r a relator: trivial by construction.
      const Word v = random_tower_word(rng, t, uniform(rng, 0, (max_len - 6) / 2), 0.35);
      const Word r = t.relators()[uniform(rng, 0, t.relators().size() - 1)];
      w = concat(concat(v, coin(rng) ? r : inverse(r)), inverse(v));
      if (coin(rng) && w.size() < max_len) {
        // break triviality at a random spot
        w.insert(w.begin() + std::ptrdiff_t(uniform(rng, 0, w.size())),
                 random_tower_word(rng, t, 1, 0.5).front());
      }
    }
    std::size_t stable = 0;
    for (Letter x : w) stable += t.stable(x.generator).has_value();
    if (!w.empty() && w.size() <= max_len && 4 * stable >= w.size()) return w;
  }
}

Outcome tower_suite() {
  Criterion c;
  const Tower t = load_tower(kG1);
  Rng rng(11);
  int trivial = 0;
  const int kWords = 600;
  for (int i = 0; i < kWords; ++i) {
    const Word w = dense_word(rng, t, 40);
    const bool expected = oracle::britton_wp_level1(t, w);
    trivial += expected;
    c.require(compressed_word_problem(t, from_word(w)) == expected,
              "G1 word " + format_word(w, t.alphabet));
  }
  c.note(std::to_string(kWords) + " level-1 words, " + std::to_string(trivial) + " trivial");

  const Tower t2 = load_tower(kG2);
  for (const Word& r : t2.relators())
    c.require(compressed_word_problem(t2, from_word(r)), "relator " + format_word(r, t2.alphabet));
  for (GeneratorId g = 0; g < t2.alphabet.size(); ++g) {
    if (!t2.stable(g)) continue;
    c.require(!compressed_word_problem(t2, from_word({pos(g)})), "stable letter");
  }
  int nontrivial = 0;
  const int kSamples = 250;
  for (int i = 0; i < kSamples; ++i) {
    const Word w = dense_word(rng, t2, 20);
    const Slp a = from_word(w);
    const bool w_trivial = compressed_word_problem(t2, a);
    c.require(compressed_word_problem(t2, concat(a, reverse_inverse(a))), "w w^-1");
    if (!w_trivial) {
      ++nontrivial;
      const Slp g = from_word(random_tower_word(rng, t2, uniform(rng, 1, 8), 0.3));
      c.require(!compressed_word_problem(t2, concat(concat(g, a), reverse_inverse(g))),
                "g w g^-1 for " + format_word(w, t2.alphabet));
    }
  }
  c.note(std::to_string(kSamples) + " two-level samples, " + std::to_string(nontrivial) +
         " nontrivial");
  return c.outcome();
}

Outcome size_bounds() {
  Criterion c;
  Rng rng(13);
  for (std::size_t len = 1; len <= 300; ++len) {
    const Word w = random_word(rng, 3, len);
    const Slp s = from_word(w);
    c.require(s.size() <= 2 * len, "from_word size at length " + std::to_string(len));
    if (len <= 40) c.require(*oracle::expand(s) == w, "from_word round trip");
  }
  std::vector<BigInt> qs;
  for (long long q = 1; q <= 4096; ++q) qs.push_back(q);
  for (int k = 12; k <= 32; ++k) {
    const BigInt p = BigInt(1) << k;
    qs.push_back(p - 1);
    qs.push_back(p);
    qs.push_back(p + 1);
  }
  for (int i = 0; i < 4000; ++i) qs.push_back(BigInt(uniform(rng, 1, std::size_t(1) << 32)));
  std::size_t checked = 0;
  for (std::size_t len = 1; len <= 8; ++len) {
    for (const BigInt& q0 : qs) {
      for (int sgn : {1, -1}) {
        const BigInt q = q0 * sgn;
        const Word w = random_word(rng, 3, len);
        const Slp p = power_slp(w, q);
        const std::size_t bound = 2 * len + ceil_log2(q0) + power_correction(q0);
        c.require(p.size() <= bound, "power size, |w| = " + std::to_string(len) + ", q = " +
                                         to_string(q));
        c.require(produced_length(p) == q0 * len, "power length");
        if (q0 <= 64) c.require(*oracle::expand(p) == power(w, q.convert_to<long long>()),
                                "power word");
        ++checked;
      }
    }
  }
  c.note(std::to_string(checked) + " power programs");
  for (const char* text : {kG1, kG2}) {
    const Tower t = load_tower(text);
    const SizeGrowth g = bench_size_growth(t, default_seed(t), 5, 20);
    c.require(g.within_bound() && g.rows.size() == 16, "size growth bound");
    c.note(std::to_string(t.n()) + "-level family: |A_1| ~ " + fmt(g.slope) + " |A| + " +
           fmt(g.intercept) + " <= " + fmt(g.bound.C1) + " |A| + " + fmt(g.bound.C2));
  }
  return c.outcome();
}

Outcome automorphism_suite() {
  Criterion c;
  const Tower t = load_tower("base x1 x2 x3\n");
  const AutomorphismSet set = nielsen_catalog(t, 3);
  auto identity = [&](const std::string& s) {
    return aut_word_problem(t, set, parse_composition(s, set)).identity;
  };
  for (int i = 1; i <= 3; ++i) {
    const std::string a = "alpha" + std::to_string(i);
    c.require(identity(a + " " + a), a + "^2");
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      const std::string b = "beta" + std::to_string(i) + "_" + std::to_string(j);
      c.require(identity(b + " " + b + "^-1"), b + " " + b + "^-1");
      c.require(identity("(" + a + " alpha" + std::to_string(j) + ")^2"), "(alpha alpha)^2");
    }
  }
  Rng rng(17);
  int identities = 0;
  const int kComps = 300;
  for (int i = 0; i < kComps; ++i) {
    Composition comp;
    const std::size_t m = uniform(rng, 0, 10);
    for (std::size_t j = 0; j < m; ++j) comp.push_back(uniform(rng, 0, set.specs.size() - 1));
    if (i % 3 == 0) {
      const std::size_t half = comp.size() / 2;
      comp.resize(half);
      for (std::size_t j = half; j-- > 0;) comp.push_back(*set.specs[comp[j]].inverse);
    }
    bool expected = true;
    for (GeneratorId g = 0; g < 3; ++g) {
      const auto img = oracle::naive_aut_compose(set, comp, g);
      expected = expected && word_problem(t, concat(*img, Word{neg(g)}));
    }
    identities += expected;
    c.require(aut_word_problem(t, set, comp).identity == expected, "random composition");
  }
  c.note(std::to_string(kComps) + " compositions, " + std::to_string(identities) + " identities");

  const Composition witness = parse_composition("(beta1_2 beta2_1)^40", set);
  const auto start = std::chrono::steady_clock::now();
  const AutWpResult r = aut_word_problem(t, set, witness);
  const double secs = seconds_since(start);
  c.require(!r.identity, "witness decided as identity");
  c.require(secs < 60, "witness took " + fmt(secs) + " s");
  const CompositionProgram p = compose_slp(t, set, witness);
  const BigInt image_len = p.dag.length(p.images[0]);
  c.require(image_len > 1000000, "image length " + to_string(image_len));
  c.require(!oracle::naive_aut_compose(set, witness, 0).has_value(), "naive image fit the cap");
  c.note("witness: image length " + to_string(image_len) + ", program size " +
         std::to_string(r.program_size) + ", " + fmt(secs) + " s");
  return c.outcome();
}

Outcome lyndon_axioms() {
  Criterion c;
  const Tower t = load_tower(kG1);
  Rng rng(19);
  auto word = [&] { return random_tower_word(rng, t, uniform(rng, 0, 18), 0.3); };
  const int kSamples = 600;
  for (int i = 0; i < kSamples; ++i) {
    const Word g1 = word(), g2 = word(), g3 = word();
    const LengthVector l = lyndon_length(t, g1);
    c.require(l >= LengthVector(), "(i) l(g) >= 0");
    c.require(lyndon_length(t, inverse(g1)) == l, "(ii) l(g) = l(g^-1)");
    if (!word_problem(t, g1)) c.require(lyndon_length(t, concat(g1, g1)) > l, "(iii)");
    const CommonPrefix c12 = common_prefix_length(t, g1, g2);
    const CommonPrefix c13 = common_prefix_length(t, g1, g3);
    const CommonPrefix c23 = common_prefix_length(t, g2, g3);
    c.require(c12.integral && c13.integral && c23.integral, "(iv) integral c_p");
    if (c12.value > c13.value) c.require(c13.value == c23.value, "(v)");
  }
  c.note(std::to_string(kSamples) + " triples");
  return c.outcome();
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria{
      {1, "Lyndon length golden test", 1, golden_length},
      {2, "normal form", 5, golden_normal_form},
      {3, "compressed equality vs expansion", 60, equality_suite},
      {4, "free-group compressed word problem vs oracle", 120, free_cwp_suite},
      {5, "tower compressed word problem vs Britton reduction", 300, tower_suite},
      {6, "size bounds", 600, size_bounds},
      {7, "automorphism word problem", 600, automorphism_suite},
      {8, "Lyndon axioms", 600, lyndon_axioms},
  };
  int failed = 0;
  for (const auto& e : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs = seconds_since(start);
    if (secs >= e.limit) {
      o.ok = false;
      o.detail += "; over the " + fmt(e.limit) + " s limit";
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << e.id << " (" << e.name << ") "
              << fmt(secs) << " s: " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
