#include "support.hpp"

#include "fgwp/aut_wp.hpp"
#include "fgwp/errors.hpp"
#include "fgwp/oracles.hpp"
#include "fgwp/phi_reduction.hpp"

#include <doctest.h>

using namespace fgwp;
using namespace fgwp::testing;

namespace {

const char* kG1 = "base a b\nlevel { centralizer u=\"a b\" count=1 letters t }\n";
const char* kF3 = "base x1 x2 x3\n";
const char* kProduct =
    "base a b c d e f\n"
    "level { centralizer u=\"a b\" letters t1 ; centralizer u=\"c d\" letters t2 ; "
    "centralizer u=\"e f\" letters t3 }\n";
const char* kProductAuts =
    "decomposition {\n"
    "  factor A = a b t1\n"
    "  factor B = c d t2\n"
    "  factor C = e f t3\n"
    "  iso A B : a -> c, b -> d, t1 -> t2\n"
    "  iso B C : c -> e, d -> f, t2 -> t3\n"
    "  iso A C : a -> e, b -> f, t1 -> t3\n"
    "}\n"
    "catalog whitehead\n";

bool identity(const Tower& t, const AutomorphismSet& set, const std::string& comp) {
  return aut_word_problem(t, set, parse_composition(comp, set)).identity;
}

// Reference: literal images compared generator by generator in the free group.
bool naive_identity(const AutomorphismSet& set, const Composition& comp, std::size_t rank) {
  for (GeneratorId g = 0; g < rank; ++g) {
    const auto img = oracle::naive_aut_compose(set, comp, g);
    REQUIRE(img);
    if (oracle::reduce(*img) != Word{pos(g)}) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("homomorphism checks") {
  const Tower t = load_tower(kG1);
  const AutomorphismFile f = load_automorphisms(
      "aut id { a -> a }\n"
      "aut swap { a -> b ; b -> a ; t -> t }\n"
      "aut inner { a -> b a b^-1 ; b -> b b b^-1 ; t -> b t b^-1 }\n",
      t);
  CHECK(check_homomorphism(t, f.set.specs[0]));
  // [ba, t] is not a relator consequence.
  const Word image = fgwp::apply(f.set.specs[1], t.relators()[0]);
  CHECK(check_homomorphism(t, f.set.specs[1]) == oracle::britton_wp_level1(t, image));
  CHECK_FALSE(check_homomorphism(t, f.set.specs[1]));
  CHECK(check_homomorphism(t, f.set.specs[2]));
  CHECK_THROWS_AS(aut_word_problem(t, f.set, parse_composition("swap", f.set)), InvalidInput);
  const AutWpResult unchecked = aut_word_problem(t, f.set, parse_composition("swap", f.set), false);
  CHECK_FALSE(unchecked.identity);
}

TEST_CASE("composition programs") {
  const Tower t = load_tower(kF3);
  const AutomorphismSet set = nielsen_catalog(t, 3);
  const CompositionProgram empty = compose_slp(t, set, {});
  for (GeneratorId g = 0; g < 3; ++g) CHECK(*expand(empty.program(g), 10) == Word{pos(g)});

  const CompositionProgram one = compose_slp(t, set, parse_composition("beta1_2", set));
  CHECK(format_word(*expand(one.program(0), 10), t.alphabet) == "x1 x2");

  for (int k = 0; k <= 10; ++k) {
    const Composition comp = parse_composition("(beta1_2 beta2_1)^" + std::to_string(k), set);
    const CompositionProgram p = compose_slp(t, set, comp);
    for (GeneratorId g = 0; g < 3; ++g) {
      const Word mine = *expand(p.program(g), 1u << 20);
      CHECK(mine == *oracle::naive_aut_compose(set, comp, g));
      CHECK(*p.dag.expand(p.inverse_images[g], 1u << 20) == inverse(mine));
    }
  }
}

TEST_CASE("Fibonacci growth") {
  const Tower t = load_tower(kF3);
  const AutomorphismSet set = nielsen_catalog(t, 3);
  std::vector<std::size_t> lens;
  for (int k = 1; k <= 6; ++k) {
    const Composition comp = parse_composition("(beta1_2 beta2_1)^" + std::to_string(k), set);
    lens.push_back(oracle::naive_aut_compose(set, comp, 0)->size());
  }
  for (std::size_t i = 2; i < lens.size(); ++i) CHECK(lens[i] > lens[i - 1] + lens[i - 2]);
}

TEST_CASE("Nielsen relations") {
  const Tower t = load_tower(kF3);
  const AutomorphismSet set = nielsen_catalog(t, 3);
  CHECK(identity(t, set, ""));
  for (int i = 1; i <= 3; ++i) {
    const std::string a = "alpha" + std::to_string(i);
    CHECK(identity(t, set, a + " " + a));
    CHECK_FALSE(identity(t, set, a));
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      const std::string b = "beta" + std::to_string(i) + "_" + std::to_string(j);
      CHECK(identity(t, set, "(" + a + " alpha" + std::to_string(j) + ")^2"));
      CHECK(identity(t, set, b + " " + b + "^-1"));
      CHECK(identity(t, set, b + "inv " + b));
      CHECK_FALSE(identity(t, set, b));
    }
  }
  const auto inv = set.find("beta1_2inv");
  REQUIRE(inv);
  CHECK(format_word(set.specs[*inv].image(0), t.alphabet) == "x1 x2^-1");
}

TEST_CASE("random compositions agree with literal composition") {
  const Tower t = load_tower(kF3);
  const AutomorphismSet set = nielsen_catalog(t, 3);
  Rng rng(1);
  int identities = 0;
  for (int i = 0; i < 150; ++i) {
    Composition comp;
    const std::size_t m = uniform(rng, 0, 10);
    for (std::size_t j = 0; j < m; ++j) comp.push_back(uniform(rng, 0, set.specs.size() - 1));
    if (i % 3 == 0) {
      // c c^-1 is always the identity.
      Composition back;
      for (auto it = comp.rbegin(); it != comp.rend(); ++it) back.push_back(*set.specs[*it].inverse);
      comp.insert(comp.end(), back.begin(), back.end());
    }
    const bool expected = naive_identity(set, comp, 3);
    identities += expected;
    CHECK(aut_word_problem(t, set, comp).identity == expected);
  }
  CHECK(identities >= 50);
}

TEST_CASE("long compositions stay small") {
  const Tower t = load_tower(kF3);
  const AutomorphismSet set = nielsen_catalog(t, 3);
  const Composition comp = parse_composition("(beta1_2 beta2_1)^40", set);
  CHECK_FALSE(oracle::naive_aut_compose(set, comp, 0).has_value());
  const AutWpResult r = aut_word_problem(t, set, comp);
  CHECK_FALSE(r.identity);
  CHECK(r.program_size < 2000);
  const Composition back = parse_composition("(beta1_2 beta2_1)^40 (beta2_1^-1 beta1_2^-1)^40", set);
  CHECK(aut_word_problem(t, set, back).identity);
}

TEST_CASE("catalogs") {
  const Tower f2 = load_tower("base x1 x2\n");
  const AutomorphismSet n2 = nielsen_catalog(f2, 2);
  for (const char* name : {"alpha1", "alpha2", "beta1_2", "beta2_1", "beta1_2inv", "beta2_1inv"})
    CHECK(n2.find(name));
  CHECK(n2.specs.size() == 6);
  CHECK(*n2.specs[*n2.find("alpha1")].inverse == *n2.find("alpha1"));

  const AutomorphismFile free_only =
      load_automorphisms("decomposition { free x1 x2 }\ncatalog whitehead\n", f2);
  for (const auto& s : free_only.set.specs)
    CHECK((s.name.rfind("alpha_", 0) == 0 || s.name.rfind("beta_", 0) == 0));

  const Tower t = load_tower(kProduct);
  const AutomorphismFile f = load_automorphisms(kProductAuts, t);
  const auto conj = f.set.find("conj_A_c");
  REQUIRE(conj);
  CHECK(format_word(f.set.specs[*conj].image(*t.alphabet.find("t1")), t.alphabet) == "c^-1 t1 c");
  CHECK(format_word(f.set.specs[*conj].image(*t.alphabet.find("d")), t.alphabet) == "d");
  CHECK_THROWS_AS(
      load_automorphisms("decomposition { factor A = a b ; factor B = b c }\ncatalog whitehead\n", t),
      InvalidInput);
}

TEST_CASE("factor swaps compose") {
  const Tower t = load_tower(kProduct);
  const AutomorphismFile f = load_automorphisms(kProductAuts, t);
  CHECK(identity(t, f.set, "swap_A_B swap_A_B"));
  CHECK(identity(t, f.set, "swap_A_B swap_B_C swap_A_B swap_A_C^-1"));
  CHECK_FALSE(identity(t, f.set, "swap_A_B swap_B_C"));
  CHECK(identity(t, f.set, "conj_A_c conj_A_c_inv"));
  CHECK_FALSE(identity(t, f.set, "conj_A_c"));
}

TEST_CASE("file errors") {
  const Tower t = load_tower(kG1);
  CHECK_THROWS_AS(load_automorphisms("aut x { q -> a }", t), ParseError);
  CHECK_THROWS_AS(load_automorphisms("aut x { a -> a ; a -> b }", t), ParseError);
  CHECK_THROWS(load_automorphisms("aut x inverse of y { a -> a }", t));
  const AutomorphismFile f = load_automorphisms("aut x { a -> a b }", t);
  CHECK_THROWS(parse_composition("x^-1", f.set));
  CHECK_THROWS(parse_composition("zz", f.set));
}
