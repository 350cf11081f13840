#include "support.hpp"

#include "fgwp/aut_wp.hpp"
#include "fgwp/oracles.hpp"
#include "fgwp/phi_reduction.hpp"

#include <doctest.h>

using namespace fgwp;
using namespace fgwp::testing;

namespace {

const char* kG1 = "base a b\nlevel { centralizer u=\"a b\" count=1 letters t }\n";

}  // namespace

TEST_CASE("expand and reduce") {
  Alphabet a({"a", "b"});
  CHECK(oracle::expand_reduce(from_word(parse_word("a a^-1", a)))->empty());
  CHECK(*oracle::expand_reduce(power_slp({pos(0)}, 8)) == Word(8, pos(0)));
  CHECK_FALSE(oracle::expand(power_slp({pos(0)}, BigInt(1) << 30)).has_value());
  CHECK(oracle::reduce(parse_word("b a a^-1 b^-1 a", a)) == parse_word("a", a));
}

TEST_CASE("power membership") {
  Alphabet al({"a", "b", "c"});
  const Word u = parse_word("a b", al);
  CHECK(oracle::power_membership(u, parse_word("(a b)^3", al)) == 3);
  CHECK(oracle::power_membership(u, parse_word("(a b)^-2", al)) == -2);
  CHECK(oracle::power_membership(u, parse_word("1", al)) == 0);
  CHECK_FALSE(oracle::power_membership(u, parse_word("a", al)).has_value());
  CHECK_FALSE(oracle::power_membership(u, parse_word("b a", al)).has_value());
  // u not cyclically reduced
  const Word v = parse_word("c a b c^-1", al);
  CHECK(oracle::power_membership(v, parse_word("c (a b)^4 c^-1", al)) == 4);

  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const Word x = random_reduced_word(rng, 3, uniform(rng, 1, 3));
    const long long c = static_cast<long long>(uniform(rng, 1, 6)) * (coin(rng) ? 1 : -1);
    const Word g = power(u, c);
    CHECK(oracle::power_membership(u, g) == c);
    const Word noisy = oracle::reduce(concat(concat(x, g), inverse(x)));
    const bool exact = noisy == oracle::reduce(g);
    CHECK(oracle::power_membership(u, noisy).has_value() == exact);
  }
}

TEST_CASE("Britton reduction") {
  const Tower t = load_tower(kG1);
  CHECK(oracle::britton_wp_level1(t, t.relators()[0]));
  CHECK_FALSE(oracle::britton_wp_level1(t, parse_word("t", t.alphabet)));
  CHECK(oracle::britton_wp_level1(t, {}));
  CHECK_FALSE(oracle::britton_wp_level1(t, parse_word("a t a^-1 t^-1", t.alphabet)));
  CHECK(oracle::britton_wp_level1(t, parse_word("t^2 (a b)^-3 t^-2 (a b)^3", t.alphabet)));

  Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    Word w = random_tower_word(rng, t, uniform(rng, 1, 30), 0.3);
    if (i % 2) w = concat(concat(w, coin(rng) ? t.relators()[0] : inverse(t.relators()[0])), inverse(w));
    CHECK(oracle::britton_wp_level1(t, w) == word_problem(t, w));
  }

  // A generator that needs a conjugator.
  const Tower c = load_tower("base a b\nlevel { centralizer u=\"b^-1 a b b\" letters t }\n");
  for (const Word& r : c.relators()) CHECK(oracle::britton_wp_level1(c, r));
  CHECK_FALSE(oracle::britton_wp_level1(c, parse_word("t a b t^-1 b^-1 a^-1", c.alphabet)));
  for (int i = 0; i < 200; ++i) {
    const Word w = random_tower_word(rng, c, uniform(rng, 1, 20), 0.3);
    CHECK(oracle::britton_wp_level1(c, w) == word_problem(c, w));
  }
}

TEST_CASE("literal composition") {
  const Tower t = load_tower("base x1 x2\n");
  const AutomorphismSet set = nielsen_catalog(t, 2);
  CHECK(*oracle::naive_aut_compose(set, {}, 1) == Word{pos(1)});
  const Composition b12 = parse_composition("beta1_2", set);
  CHECK(format_word(*oracle::naive_aut_compose(set, b12, 0), t.alphabet) == "x1 x2");
  const Composition comp = parse_composition("alpha2 beta1_2", set);
  CHECK(format_word(*oracle::naive_aut_compose(set, comp, 0), t.alphabet) == "x1 x2^-1");
}
