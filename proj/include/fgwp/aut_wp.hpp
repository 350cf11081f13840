#pragma once

#include "fgwp/slp.hpp"
#include "fgwp/slp_dag.hpp"
#include "fgwp/tower.hpp"
#include "fgwp/word.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fgwp {

/// Endomorphism given by generator images; generators without an entry are
/// fixed.
struct AutomorphismSpec {
  std::string name;
  std::map<GeneratorId, Word> images;
  std::optional<std::size_t> inverse;  // index of the inverse spec, if known

  [[nodiscard]] Word image(GeneratorId g) const;
};

struct AutomorphismSet {
  std::vector<AutomorphismSpec> specs;

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
  /// Adds a spec; `inverse_of` links the pair both ways. Throws
  /// InvalidInput on duplicate names.
  std::size_t add(AutomorphismSpec spec, std::optional<std::size_t> inverse_of = std::nullopt);
  void link_inverses(std::size_t a, std::size_t b);
};

/// phi_{i_1} o ... o phi_{i_m}; each step is a spec index.
using Composition = std::vector<std::size_t>;

/// Parses names with ^k exponents and parentheses, e.g. "(b12 b21)^40 a1^-1".
/// Negative exponents need a known inverse spec.
Composition parse_composition(std::string_view text, const AutomorphismSet& set,
                              std::size_t cap = default_expand_cap());

/// Applies the spec letterwise.
Word apply(const AutomorphismSpec& spec, const Word& w);

/// Every defining relator maps to the identity of G_n.
bool check_homomorphism(const Tower& tower, const AutomorphismSpec& spec);

/// A_{j,p} -> w_{i_p j}(A_{1,p-1}, ..., A_{n,p-1}) with barred partners for
/// inverse letters; right-hand sides are binarized left-associated.
struct CompositionProgram {
  SlpDag dag;
  std::vector<NodeId> images;          // A_{j,m} for every generator j
  std::vector<NodeId> inverse_images;  // the barred partners

  [[nodiscard]] Slp program(GeneratorId j) const { return dag.export_slp(images.at(j)); }
  [[nodiscard]] std::size_t size() const;
};

CompositionProgram compose_slp(const Tower& tower, const AutomorphismSet& set,
                               const Composition& composition);

struct AutWpResult {
  bool identity = true;
  std::vector<bool> fixes;  // per generator
  std::size_t program_size = 0;
};

/// Whether the composition acts as the identity on G_n. With `check` set,
/// every spec used must pass check_homomorphism (InvalidInput otherwise).
AutWpResult aut_word_problem(const Tower& tower, const AutomorphismSet& set,
                             const Composition& composition, bool check = true);

/// alpha_i: x_i -> x_i^-1, beta_i_j: x_i -> x_i x_j and beta_i_j_inv:
/// x_i -> x_i x_j^-1 over the first `rank` base generators.
AutomorphismSet nielsen_catalog(const Tower& tower, std::size_t rank);

/// Free-product decomposition G = F_1 * ... * F_r * F(S), trusted input.
struct Decomposition {
  struct Factor {
    std::string name;
    std::vector<GeneratorId> generators;
  };
  struct Isomorphism {
    std::size_t from = 0;
    std::size_t to = 0;
    std::map<GeneratorId, GeneratorId> map;  // generator of `from` -> generator of `to`
  };
  std::vector<Factor> factors;
  std::vector<GeneratorId> free_basis;
  std::vector<Isomorphism> isomorphisms;
};

/// Nielsen moves on S; Whitehead moves (conjugating one factor by a letter
/// x, s -> s x, s -> x^-1 s) with their inverses; factor swaps from the
/// declared isomorphisms. Throws InvalidInput on overlapping factors.
AutomorphismSet whitehead_catalog(const Tower& tower, const Decomposition& d);

struct AutomorphismFile {
  AutomorphismSet set;
  std::optional<Decomposition> decomposition;
};

/// Text format:
///   aut name { x1 -> x1 x2 ; x2 -> x2 }
///   aut name_inv inverse of name { x1 -> x1 x2^-1 }
///   catalog nielsen [rank]
///   decomposition { factor A = a b t ; free x y ; iso A B : a -> c , b -> d , t -> s }
///   catalog whitehead
AutomorphismFile load_automorphisms(std::string_view text, const Tower& tower);

std::string format_spec(const AutomorphismSpec& spec, const Alphabet& alphabet);

}  // namespace fgwp
