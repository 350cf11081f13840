#include "support.hpp"

#include "fgwp/free_group.hpp"
#include "fgwp/lyndon_length.hpp"
#include "fgwp/normal_form.hpp"
#include "fgwp/phi_reduction.hpp"

#include <doctest.h>

using namespace fgwp;
using namespace fgwp::testing;

namespace {

const char* kG1 = "base a b\nlevel { centralizer u=\"a b\" count=1 letters t }\n";
const char* kG2 =
    "base a b\n"
    "level { centralizer u=\"a b\" count=1 letters t }\n"
    "level { centralizer u=\"a t\" count=1 letters s }\n";
const char* kGolden = "a (ab)^11 t^-1 a a b a^-1 t";

BigInt length_bound(const Tower& t, std::size_t len) {
  return pow(BigInt(10 * constants(t).L), t.n()) * BigInt(len);
}

// l(g_1 u^q_1 g_2 ... g_m+1) against the sum of the factor lengths.
bool lyndon_additive(const Tower& t, const NormalForm& nf, long long scale) {
  const Word& u = t.levels[0].entries[0].core;
  Word product;
  LengthVector sum;
  for (const auto& s : nf.syllables) {
    const Word uq = power(u, sigma(s.alpha) * scale);
    product = concat(concat(product, s.g), uq);
    sum = sum + lyndon_length(t, s.g) + lyndon_length(t, uq);
  }
  product = concat(product, nf.tail);
  sum = sum + lyndon_length(t, nf.tail);
  return lyndon_length(t, product) == sum;
}

}  // namespace

TEST_CASE("collection") {
  const Tower t = load_tower(kG1);
  const Word plain = parse_word("a b b^-1 a", t.alphabet);
  const CollectedForm none = britton_collect(t, 1, plain);
  CHECK(none.blocks.empty());
  CHECK(none.tail == free_reduce(plain));

  const CollectedForm merged = britton_collect(t, 1, parse_word("t a b t", t.alphabet));
  REQUIRE(merged.blocks.size() == 1);
  CHECK(merged.blocks[0].alpha == ExponentVector{2});
  CHECK(format_word(merged.blocks[0].h, t.alphabet) == "a b");
  CHECK(merged.tail.empty());

  CHECK(britton_collect(t, 1, parse_word("t a t", t.alphabet)).blocks.size() == 2);
  CHECK(britton_collect(t, 1, parse_word("t a b a^-1 t^-1 a", t.alphabet)).blocks.size() == 2);
  const CollectedForm gone = britton_collect(t, 1, parse_word("t (a b)^3 t^-1", t.alphabet));
  CHECK(gone.blocks.empty());

  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_tower_word(rng, t, uniform(rng, 0, 30), 0.3);
    const CollectedForm f = britton_collect(t, 1, w);
    const Word flat = flatten(t, f);
    CHECK(flat.size() <= w.size());
    CHECK(word_problem(t, concat(flat, inverse(w))));
  }
}

TEST_CASE("normal form of t-free words") {
  const Tower t = load_tower(kG1);
  const Word w = parse_word("a b a^-1 a b^-1", t.alphabet);
  const NormalForm nf = normal_form(t, w);
  CHECK(syllable_count(nf) == 0);
  CHECK(nf.tail == free_reduce(w));
}

TEST_CASE("golden normal form") {
  const Tower t = load_tower(kG1);
  const Word w = parse_word(kGolden, t.alphabet);
  REQUIRE(w.size() == 29);
  const NormalForm nf = normal_form(t, w);
  CHECK(syllable_count(nf) == 2);
  for (const auto& s : nf.syllables)
    CHECK(format_word(t.levels[0].entries[s.entry].core, t.alphabet) == "a b");
  CHECK(check_normal_form(t, nf).ok());
  CHECK(word_problem(t, concat(flatten(t, nf), inverse(w))));
  CHECK(flattened_length(t, nf) <= 20 * 29);
  CHECK(flatten(t, nf).size() == flattened_length(t, nf));
  CHECK(lyndon_additive(t, nf, 1));
  CHECK(lyndon_additive(t, nf, 4));
}

TEST_CASE("normal forms of random words") {
  const Tower t = load_tower(kG1);
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_tower_word(rng, t, uniform(rng, 1, 30), 0.3);
    const NormalForm nf = normal_form(t, w);
    const auto check = check_normal_form(t, nf);
    CHECK(check.ok());
    CHECK(word_problem(t, concat(flatten(t, nf), inverse(w))));
    CHECK(BigInt(flattened_length(t, nf)) <= length_bound(t, w.size()));
    for (long long q : {1, 3}) CHECK(lyndon_additive(t, nf, q));
    CHECK(syllable_count(nf) == britton_collect(t, 1, w).blocks.size());
  }
}

TEST_CASE("normal forms over two levels") {
  const Tower t = load_tower(kG2);
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const Word w = random_tower_word(rng, t, uniform(rng, 1, 10), 0.3);
    const NormalForm nf = normal_form(t, w);
    CHECK(check_normal_form(t, nf).ok());
    CHECK(word_problem(t, concat(flatten(t, nf), inverse(w))));
    CHECK(BigInt(flattened_length(t, nf)) <= length_bound(t, w.size()));
  }
}

TEST_CASE("normal form checks detect problems") {
  const Tower t = load_tower(kG1);
  NormalForm nf = normal_form(t, parse_word("t a t", t.alphabet));
  REQUIRE(nf.syllables.size() == 2);
  nf.syllables[1].g = Word{};
  CHECK_FALSE(check_normal_form(t, nf).boundaries_ok);
  nf.tail.push_back(pos(*t.alphabet.find("t")));
  CHECK_FALSE(check_normal_form(t, nf).lower_level_ok);
  nf.syllables[0].alpha = {0};
  CHECK_FALSE(check_normal_form(t, nf).alpha_nonzero);
}

TEST_CASE("formatting") {
  const Tower t = load_tower(kG1);
  const std::string text = format_normal_form(t, normal_form(t, parse_word(kGolden, t.alphabet)));
  CHECK(text.rfind("syllables 2\n", 0) == 0);
  CHECK(text.find("tail:") != std::string::npos);
}
