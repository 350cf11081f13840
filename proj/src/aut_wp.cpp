#include "fgwp/aut_wp.hpp"

#include "fgwp/errors.hpp"
#include "fgwp/phi_reduction.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace fgwp {

Word AutomorphismSpec::image(GeneratorId g) const {
  auto it = images.find(g);
  return it == images.end() ? Word{pos(g)} : it->second;
}

std::optional<std::size_t> AutomorphismSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t AutomorphismSet::add(AutomorphismSpec spec, std::optional<std::size_t> inverse_of) {
  if (find(spec.name)) throw InvalidInput("duplicate automorphism name '" + spec.name + "'");
  specs.push_back(std::move(spec));
  const std::size_t id = specs.size() - 1;
  if (inverse_of) link_inverses(id, *inverse_of);
  return id;
}

void AutomorphismSet::link_inverses(std::size_t a, std::size_t b) {
  specs.at(a).inverse = b;
  specs.at(b).inverse = a;
}

Composition parse_composition(std::string_view text, const AutomorphismSet& set, std::size_t cap) {
  Alphabet names;
  for (const auto& s : set.specs) names.add(s.name);
  const Word letters = parse_word(text, names, cap);
  Composition out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    const AutomorphismSpec& spec = set.specs[x.generator];
    if (!x.inverted) {
      out.push_back(x.generator);
    } else if (spec.inverse) {
      out.push_back(*spec.inverse);
    } else {
      throw InvalidInput("automorphism '" + spec.name + "' has no declared inverse");
    }
  }
  return out;
}

Word apply(const AutomorphismSpec& spec, const Word& w) {
  Word out;
  for (Letter x : w) {
    const Word img = spec.image(x.generator);
    const Word piece = x.inverted ? inverse(img) : img;
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

bool check_homomorphism(const Tower& tower, const AutomorphismSpec& spec) {
  for (const Word& r : tower.relators()) {
    if (!word_problem(tower, apply(spec, r))) return false;
  }
  return true;
}

std::size_t CompositionProgram::size() const {
  std::vector<NodeId> roots = images;
  roots.insert(roots.end(), inverse_images.begin(), inverse_images.end());
  return dag.reachable(roots).size();
}

CompositionProgram compose_slp(const Tower& tower, const AutomorphismSet& set,
                               const Composition& composition) {
  CompositionProgram prog;
  SlpDag& dag = prog.dag;
  const std::size_t n = tower.alphabet.size();
  for (std::size_t j = 0; j < n; ++j) {
    prog.images.push_back(dag.leaf(pos(static_cast<GeneratorId>(j))));
    prog.inverse_images.push_back(dag.leaf(neg(static_cast<GeneratorId>(j))));
  }
  for (std::size_t spec_id : composition) {
    const AutomorphismSpec& spec = set.specs.at(spec_id);
    std::vector<NodeId> next = prog.images;
    std::vector<NodeId> next_bar = prog.inverse_images;
    for (const auto& [g, word] : spec.images) {
      std::vector<NodeId> parts;
      parts.reserve(word.size());
      for (Letter x : word)
        parts.push_back(x.inverted ? prog.inverse_images[x.generator] : prog.images[x.generator]);
      next[g] = dag.concat_left(parts);
      next_bar[g] = dag.reverse_inverse(next[g]);
    }
    prog.images = std::move(next);
    prog.inverse_images = std::move(next_bar);
  }
  return prog;
}

AutWpResult aut_word_problem(const Tower& tower, const AutomorphismSet& set,
                             const Composition& composition, bool check) {
  if (check) {
    std::set<std::size_t> used(composition.begin(), composition.end());
    std::string failures;
    for (std::size_t id : used) {
      if (!check_homomorphism(tower, set.specs[id])) {
        if (!failures.empty()) failures += ", ";
        failures += set.specs[id].name;
      }
    }
    if (!failures.empty())
      throw InvalidInput("not a homomorphism of the tower group: " + failures);
  }
  CompositionProgram prog = compose_slp(tower, set, composition);
  AutWpResult result;
  result.program_size = prog.size();
  for (std::size_t j = 0; j < tower.alphabet.size(); ++j) {
    const auto g = static_cast<GeneratorId>(j);
    const NodeId probe = prog.dag.concat(prog.images[j], prog.dag.leaf(neg(g)));
    const bool fixed = compressed_word_problem(tower, prog.dag, probe);
    result.fixes.push_back(fixed);
    result.identity = result.identity && fixed;
  }
  return result;
}

AutomorphismSet nielsen_catalog(const Tower& tower, std::size_t rank) {
  if (rank == 0 || rank > tower.base_count)
    throw InvalidInput("Nielsen catalog rank must be between 1 and " +
                       std::to_string(tower.base_count));
  AutomorphismSet set;
  for (std::size_t i = 0; i < rank; ++i) {
    const auto xi = static_cast<GeneratorId>(i);
    AutomorphismSpec alpha{"alpha" + std::to_string(i + 1), {{xi, Word{neg(xi)}}}, std::nullopt};
    const std::size_t a = set.add(std::move(alpha));
    set.link_inverses(a, a);
  }
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      if (i == j) continue;
      const auto xi = static_cast<GeneratorId>(i);
      const auto xj = static_cast<GeneratorId>(j);
      const std::string name = "beta" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      const std::size_t b = set.add({name, {{xi, Word{pos(xi), pos(xj)}}}, std::nullopt});
      set.add({name + "inv", {{xi, Word{pos(xi), neg(xj)}}}, std::nullopt}, b);
    }
  }
  return set;
}

AutomorphismSet whitehead_catalog(const Tower& tower, const Decomposition& d) {
  const Alphabet& names = tower.alphabet;
  std::map<GeneratorId, std::size_t> owner;  // factor index, or factors.size() for S
  for (std::size_t f = 0; f < d.factors.size(); ++f) {
    for (GeneratorId g : d.factors[f].generators) {
      if (!owner.emplace(g, f).second)
        throw InvalidInput("generator " + names.name(g) + " lies in two factors");
    }
  }
  for (GeneratorId s : d.free_basis) {
    if (!owner.emplace(s, d.factors.size()).second)
      throw InvalidInput("free basis element " + names.name(s) + " also lies in a factor");
  }

  AutomorphismSet set;
  // Nielsen moves on the free part.
  for (GeneratorId s : d.free_basis) {
    const std::size_t a = set.add({"alpha_" + names.name(s), {{s, Word{neg(s)}}}, std::nullopt});
    set.link_inverses(a, a);
  }
  for (GeneratorId s : d.free_basis) {
    for (GeneratorId x : d.free_basis) {
      if (s == x) continue;
      const std::string name = "beta_" + names.name(s) + "_" + names.name(x);
      const std::size_t b = set.add({name, {{s, Word{pos(s), pos(x)}}}, std::nullopt});
      set.add({name + "_inv", {{s, Word{pos(s), neg(x)}}}, std::nullopt}, b);
    }
  }
  // Conjugation of one factor by a letter outside it.
  for (std::size_t f = 0; f < d.factors.size(); ++f) {
    for (const auto& [x, xf] : owner) {
      if (xf == f) continue;
      AutomorphismSpec conj{"conj_" + d.factors[f].name + "_" + names.name(x), {}, std::nullopt};
      AutomorphismSpec back{conj.name + "_inv", {}, std::nullopt};
      for (GeneratorId g : d.factors[f].generators) {
        conj.images[g] = Word{neg(x), pos(g), pos(x)};
        back.images[g] = Word{pos(x), pos(g), neg(x)};
      }
      const std::size_t c = set.add(std::move(conj));
      set.add(std::move(back), c);
    }
  }
  // s -> s x and s -> x^-1 s for x in a factor.
  for (GeneratorId s : d.free_basis) {
    for (const auto& [x, xf] : owner) {
      if (xf == d.factors.size()) continue;
      const std::string suffix = names.name(s) + "_" + names.name(x);
      const std::size_t r = set.add({"right_" + suffix, {{s, Word{pos(s), pos(x)}}}, std::nullopt});
      set.add({"right_" + suffix + "_inv", {{s, Word{pos(s), neg(x)}}}, std::nullopt}, r);
      const std::size_t l = set.add({"left_" + suffix, {{s, Word{neg(x), pos(s)}}}, std::nullopt});
      set.add({"left_" + suffix + "_inv", {{s, Word{pos(x), pos(s)}}}, std::nullopt}, l);
    }
  }
  // Factor swaps along declared isomorphisms.
  for (const auto& iso : d.isomorphisms) {
    const auto& from = d.factors.at(iso.from);
    const auto& to = d.factors.at(iso.to);
    if (from.generators.size() != to.generators.size() || iso.map.size() != from.generators.size())
      throw InvalidInput("isomorphism " + from.name + " -> " + to.name +
                         " must map every generator of " + from.name);
    AutomorphismSpec swap{"swap_" + from.name + "_" + to.name, {}, std::nullopt};
    std::set<GeneratorId> targets;
    for (const auto& [g, h] : iso.map) {
      if (owner.count(g) == 0 || owner.at(g) != iso.from || owner.count(h) == 0 ||
          owner.at(h) != iso.to || !targets.insert(h).second)
        throw InvalidInput("isomorphism " + from.name + " -> " + to.name + " is not a bijection");
      swap.images[g] = Word{pos(h)};
      swap.images[h] = Word{pos(g)};
    }
    const std::size_t p = set.add(std::move(swap));
    set.link_inverses(p, p);
  }
  return set;
}

namespace {

class AutParser {
 public:
  AutParser(std::string_view text, const Tower& tower) : text_(text), tower_(tower) {}

  AutomorphismFile parse() {
    AutomorphismFile file;
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      const std::string word = identifier();
      if (word == "aut") {
        parse_aut(file.set);
      } else if (word == "catalog") {
        const std::string kind = identifier();
        AutomorphismSet extra;
        if (kind == "nielsen") {
          skip();
          std::size_t rank = tower_.base_count;
          if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            rank = std::stoul(identifier());
          extra = nielsen_catalog(tower_, rank);
        } else if (kind == "whitehead") {
          if (!file.decomposition) fail("'catalog whitehead' needs a decomposition block first");
          extra = whitehead_catalog(tower_, *file.decomposition);
        } else {
          fail("unknown catalog '" + kind + "'");
        }
        merge(file.set, extra);
      } else if (word == "decomposition") {
        file.decomposition = parse_decomposition();
      } else {
        fail("expected 'aut', 'catalog' or 'decomposition', found '" + word + "'");
      }
    }
    return file;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(
                                                             std::min(pos_, text_.size())),
                                          '\n'));
    throw ParseError("automorphism file line " + std::to_string(line) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_' || text_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek_is(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string_view block() {
    expect('{');
    const std::size_t end = text_.find('}', pos_);
    if (end == std::string_view::npos) fail("missing '}'");
    std::string_view body = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return body;
  }

  static std::vector<std::string> statements(std::string_view body) {
    std::vector<std::string> out;
    std::string cur;
    bool comment = false;
    for (char c : body) {
      if (comment) {
        if (c == '\n') comment = false;
        else continue;
      }
      if (c == '#') {
        comment = true;
        continue;
      }
      if (c == ';' || c == '\n') {
        if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
    return out;
  }

  static std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
  }

  GeneratorId generator(const std::string& name) const {
    auto g = tower_.alphabet.find(name);
    if (!g) fail("unknown generator '" + name + "'");
    return *g;
  }

  void parse_aut(AutomorphismSet& set) {
    AutomorphismSpec spec;
    spec.name = identifier();
    std::optional<std::size_t> inverse_of;
    if (!peek_is('{')) {
      if (identifier() != "inverse" || identifier() != "of") fail("expected '{' or 'inverse of'");
      const std::string target = identifier();
      inverse_of = set.find(target);
      if (!inverse_of) fail("'inverse of " + target + "' refers to an unknown automorphism");
    }
    for (const std::string& stmt : statements(block())) {
      const auto arrow = stmt.find("->");
      if (arrow == std::string::npos) fail("expected 'generator -> word' in aut " + spec.name);
      const GeneratorId g = generator(trim(std::string_view(stmt).substr(0, arrow)));
      if (spec.images.count(g)) fail("generator mapped twice in aut " + spec.name);
      spec.images[g] = parse_word(trim(std::string_view(stmt).substr(arrow + 2)), tower_.alphabet);
    }
    set.add(std::move(spec), inverse_of);
  }

  Decomposition parse_decomposition() {
    Decomposition d;
    for (const std::string& stmt : statements(block())) {
      std::istringstream in(stmt);
      std::string kw;
      in >> kw;
      if (kw == "factor") {
        Decomposition::Factor f;
        std::string eq;
        in >> f.name >> eq;
        if (f.name.empty() || eq != "=") fail("expected 'factor NAME = generators'");
        std::string g;
        while (in >> g) f.generators.push_back(generator(g));
        if (f.generators.empty()) fail("factor " + f.name + " has no generators");
        d.factors.push_back(std::move(f));
      } else if (kw == "free") {
        std::string g;
        while (in >> g) d.free_basis.push_back(generator(g));
      } else if (kw == "iso") {
        std::string a, b, colon;
        in >> a >> b >> colon;
        if (colon != ":") fail("expected 'iso A B : g -> h, ...'");
        Decomposition::Isomorphism iso;
        iso.from = factor_index(d, a);
        iso.to = factor_index(d, b);
        std::string rest;
        std::getline(in, rest);
        std::string_view view(rest);
        while (!view.empty()) {
          const auto comma = view.find(',');
          const std::string_view pair = view.substr(0, comma);
          const auto arrow = pair.find("->");
          if (arrow == std::string_view::npos) fail("expected 'g -> h' in iso " + a + " " + b);
          iso.map[generator(trim(pair.substr(0, arrow)))] = generator(trim(pair.substr(arrow + 2)));
          if (comma == std::string_view::npos) break;
          view.remove_prefix(comma + 1);
        }
        d.isomorphisms.push_back(std::move(iso));
      } else {
        fail("unknown decomposition statement '" + kw + "'");
      }
    }
    return d;
  }

  std::size_t factor_index(const Decomposition& d, const std::string& name) const {
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      if (d.factors[i].name == name) return i;
    }
    fail("unknown factor '" + name + "'");
  }

  static void merge(AutomorphismSet& into, const AutomorphismSet& extra) {
    const std::size_t offset = into.specs.size();
    for (const auto& s : extra.specs) {
      AutomorphismSpec copy = s;
      if (copy.inverse) *copy.inverse += offset;
      if (into.find(copy.name)) throw InvalidInput("duplicate automorphism name '" + copy.name + "'");
      into.specs.push_back(std::move(copy));
    }
  }

  std::string_view text_;
  const Tower& tower_;
  std::size_t pos_ = 0;
};

}  // namespace

AutomorphismFile load_automorphisms(std::string_view text, const Tower& tower) {
  return AutParser(text, tower).parse();
}

std::string format_spec(const AutomorphismSpec& spec, const Alphabet& alphabet) {
  std::string out = "aut " + spec.name + " {";
  bool first = true;
  for (const auto& [g, w] : spec.images) {
    out += first ? " " : " ; ";
    first = false;
    out += alphabet.name(g) + " -> " + format_word(w, alphabet);
  }
  return out + " }";
}

}  // namespace fgwp
