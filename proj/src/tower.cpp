#include "fgwp/tower.hpp"

#include "fgwp/errors.hpp"
#include "fgwp/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace fgwp {

std::size_t Tower::alphabet_size_at(std::size_t k) const {
  if (k > n()) throw std::out_of_range("tower level " + std::to_string(k) + " out of range");
  std::size_t size = base_count;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& e : levels[i].entries) size += e.letters.size();
  }
  return size;
}

std::vector<GeneratorId> Tower::alphabet_at(std::size_t k) const {
  std::vector<GeneratorId> out(alphabet_size_at(k));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<GeneratorId>(i);
  return out;
}

std::optional<StableLetter> Tower::stable(GeneratorId g) const {
  if (g < base_count) return std::nullopt;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& entries = levels[k].entries;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto& letters = entries[e].letters;
      for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i] == g) return StableLetter{k + 1, e, i + 1};
      }
    }
  }
  return std::nullopt;
}

std::size_t Tower::level_of(GeneratorId g) const {
  auto s = stable(g);
  return s ? s->level : 0;
}

std::size_t Tower::level_of(const Word& w) const {
  std::size_t level = 0;
  for (Letter x : w) level = std::max(level, level_of(x.generator));
  return level;
}

const CentralizerEntry& Tower::entry_of(GeneratorId g) const {
  auto s = stable(g);
  if (!s) throw std::out_of_range("generator " + alphabet.name(g) + " is not a stable letter");
  return levels[s->level - 1].entries[s->entry];
}

Tower Tower::truncated(std::size_t k) const {
  if (k > n()) throw std::out_of_range("tower level " + std::to_string(k) + " out of range");
  Tower out = *this;
  out.levels.resize(k);
  return out;
}

bool Tower::needs_translation() const {
  if (levels.empty()) return false;
  return std::any_of(levels[0].entries.begin(), levels[0].entries.end(),
                     [](const CentralizerEntry& e) { return !e.conjugator.empty(); });
}

Word Tower::internalize(const Word& w) const {
  if (!needs_translation()) return w;
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    auto s = stable(x.generator);
    if (!s || s->level != 1) {
      out.push_back(x);
      continue;
    }
    const Word& c = levels[0].entries[s->entry].conjugator;
    out.insert(out.end(), c.begin(), c.end());
    out.push_back(x);
    Word ci = inverse(c);
    out.insert(out.end(), ci.begin(), ci.end());
  }
  return out;
}

NodeId Tower::internalize(SlpDag& dag, NodeId root) const {
  if (!needs_translation()) return root;
  const NodeId roots[] = {root};
  auto mapped = dag.map_letters(roots, [&](Letter x) {
    auto s = stable(x.generator);
    if (!s || s->level != 1) return dag.leaf(x);
    const Word& c = levels[0].entries[s->entry].conjugator;
    const NodeId conj = dag.from_word(c);
    return dag.concat(dag.concat(conj, dag.leaf(x)), dag.reverse_inverse(conj));
  });
  return mapped.front();
}

std::vector<Word> Tower::relators() const {
  std::vector<Word> out;
  for (const auto& level : levels) {
    for (const auto& e : level.entries) {
      for (std::size_t i = 0; i < e.letters.size(); ++i) {
        const Word t{pos(e.letters[i])};
        out.push_back(commutator(e.u, t));
        for (std::size_t j = i + 1; j < e.letters.size(); ++j) {
          out.push_back(commutator(t, Word{pos(e.letters[j])}));
        }
      }
    }
  }
  return out;
}

CyclicDecomposition cyclic_decomposition(const Word& reduced) {
  std::size_t i = 0;
  std::size_t j = reduced.size();
  while (j - i >= 2 && reduced[i].cancels(reduced[j - 1])) {
    ++i;
    --j;
  }
  return {Word(reduced.begin() + static_cast<std::ptrdiff_t>(i),
               reduced.begin() + static_cast<std::ptrdiff_t>(j)),
          Word(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(i))};
}

bool is_proper_power(const Word& v) {
  const std::size_t n = v.size();
  if (n < 2) return false;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t q = 1; q < n; ++q) {
    std::size_t k = border[q - 1];
    while (k > 0 && v[q] != v[k]) k = border[k - 1];
    if (v[q] == v[k]) ++k;
    border[q] = k;
  }
  const std::size_t period = n - border[n - 1];
  return period < n && n % period == 0;
}

bool cyclically_equal(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  Word doubled = concat(a, a);
  return std::search(doubled.begin(), doubled.end(), b.begin(), b.end()) != doubled.end();
}

Tower build_tower(const std::vector<std::string>& base,
                  const std::vector<std::vector<EntrySpec>>& levels) {
  Tower tower;
  for (const auto& name : base) {
    if (tower.alphabet.contains(name)) throw InvalidInput("duplicate generator '" + name + "'");
    tower.alphabet.add(name);
  }
  tower.base_count = tower.alphabet.size();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    TowerLevel level;
    // u-words may only use X_{k-1}: parse against a snapshot.
    const Alphabet previous = tower.alphabet;
    for (const auto& spec : levels[k]) {
      CentralizerEntry e;
      e.u = parse_word(spec.u, previous);
      const std::size_t count = spec.count == 0 ? spec.letters.size() : spec.count;
      if (count == 0) throw InvalidInput("centralizer u=\"" + spec.u + "\" has no stable letters");
      if (spec.letters.size() != count)
        throw InvalidInput("centralizer u=\"" + spec.u + "\": count=" + std::to_string(count) +
                           " but " + std::to_string(spec.letters.size()) + " letters given");
      for (const auto& name : spec.letters) {
        if (tower.alphabet.contains(name)) throw InvalidInput("duplicate generator '" + name + "'");
        e.letters.push_back(tower.alphabet.add(name));
      }
      e.count = count;
      const Word reduced = free_reduce(e.u);
      if (reduced.empty()) throw InvalidInput("centralizer u=\"" + spec.u + "\" is trivial");
      if (k == 0) {
        if (reduced != e.u)
          tower.warnings.push_back("u=\"" + spec.u + "\" was freely reduced");
        auto [core, conj] = cyclic_decomposition(reduced);
        if (is_proper_power(core))
          throw InvalidInput("centralizer u=\"" + spec.u + "\" is a proper power");
        e.core = std::move(core);
        e.conjugator = std::move(conj);
      } else {
        e.core = reduced;
        tower.warnings.push_back("level " + std::to_string(k + 1) + " centralizer u=\"" + spec.u +
                                 "\" is unverified");
      }
      level.entries.push_back(std::move(e));
    }
    if (k == 0) {
      const auto& entries = level.entries;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
          if (cyclically_equal(entries[i].core, entries[j].core) ||
              cyclically_equal(entries[i].core, inverse(entries[j].core))) {
            throw InvalidInput("centralizers u=\"" + format_word(entries[i].u, tower.alphabet) +
                               "\" and u=\"" + format_word(entries[j].u, tower.alphabet) +
                               "\" are conjugate");
          }
        }
      }
    }
    tower.levels.push_back(std::move(level));
  }
  // Higher levels see level-1 letters through the translation.
  for (std::size_t k = 1; k < tower.levels.size(); ++k) {
    for (auto& e : tower.levels[k].entries) e.core = free_reduce(tower.internalize(e.u));
  }
  return tower;
}

namespace {

struct Token {
  enum Kind { Name, String, Symbol, End } kind = End;
  std::string text;
  std::size_t line = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '"') {
      std::size_t j = text.find('"', i + 1);
      if (j == std::string_view::npos)
        throw ParseError("tower line " + std::to_string(line) + ": unterminated string");
      out.push_back({Token::String, std::string(text.substr(i + 1, j - i - 1)), line});
      i = j + 1;
    } else if (c == '{' || c == '}' || c == '=' || c == ';') {
      out.push_back({Token::Symbol, std::string(1, c), line});
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             std::string_view("{}=;\"#").find(text[j]) == std::string_view::npos)
        ++j;
      out.push_back({Token::Name, std::string(text.substr(i, j - i)), line});
      i = j;
    }
  }
  out.push_back({Token::End, "", line});
  return out;
}

class TowerParser {
 public:
  explicit TowerParser(std::string_view text) : tokens_(tokenize(text)) {}

  Tower parse() {
    std::vector<std::string> base;
    std::vector<std::vector<EntrySpec>> levels;
    bool seen_base = false;
    while (peek().kind != Token::End) {
      const Token& t = next();
      if (t.kind == Token::Name && t.text == "base") {
        if (seen_base) fail(t, "duplicate 'base' line");
        seen_base = true;
        while (peek().kind == Token::Name && peek().text != "level") base.push_back(next().text);
        if (peek().kind == Token::Symbol && peek().text == ";") next();
      } else if (t.kind == Token::Name && t.text == "level") {
        levels.push_back(parse_level());
      } else {
        fail(t, "expected 'base' or 'level', found '" + t.text + "'");
      }
    }
    if (!seen_base) throw ParseError("tower: missing 'base' line");
    return build_tower(base, levels);
  }

 private:
  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw ParseError("tower line " + std::to_string(t.line) + ": " + what);
  }
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::End) ++pos_;
    return t;
  }
  void expect(const std::string& symbol) {
    const Token& t = next();
    if (t.kind != Token::Symbol || t.text != symbol) fail(t, "expected '" + symbol + "'");
  }
  bool at_symbol(const std::string& s) const {
    return peek().kind == Token::Symbol && peek().text == s;
  }
  bool at_key() const {
    return peek().kind == Token::Name && tokens_[pos_ + 1].kind == Token::Symbol &&
           tokens_[pos_ + 1].text == "=";
  }

  std::vector<EntrySpec> parse_level() {
    expect("{");
    std::vector<EntrySpec> entries;
    while (!at_symbol("}")) {
      const Token& t = next();
      if (t.kind == Token::Symbol && t.text == ";") continue;
      if (t.kind != Token::Name || t.text != "centralizer") fail(t, "expected 'centralizer'");
      entries.push_back(parse_entry());
    }
    expect("}");
    return entries;
  }

  EntrySpec parse_entry() {
    EntrySpec e;
    bool has_u = false;
    while (true) {
      if (at_symbol("}") || at_symbol(";") || peek().kind == Token::End) break;
      if (peek().kind == Token::Name && peek().text == "centralizer") break;
      const Token& t = next();
      if (t.kind == Token::Name && t.text == "letters") {
        while (peek().kind == Token::Name && peek().text != "centralizer" && !at_key())
          e.letters.push_back(next().text);
        continue;
      }
      if (t.kind != Token::Name) fail(t, "unexpected '" + t.text + "'");
      expect("=");
      const Token& v = next();
      if (t.text == "u") {
        if (v.kind != Token::String && v.kind != Token::Name) fail(v, "expected a word for u");
        e.u = v.text;
        has_u = true;
      } else if (t.text == "count") {
        try {
          std::size_t used = 0;
          const long long c = std::stoll(v.text, &used);
          if (used != v.text.size() || c < 1) throw std::invalid_argument("count");
          e.count = static_cast<std::size_t>(c);
        } catch (const std::exception&) {
          fail(v, "count must be a positive integer");
        }
      } else {
        fail(t, "unknown attribute '" + t.text + "'");
      }
    }
    if (!has_u) throw ParseError("tower: centralizer without u=");
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Tower load_tower(std::string_view text) { return TowerParser(text).parse(); }

TowerConstants constants(const Tower& tower) {
  TowerConstants c;
  c.n = tower.n();
  std::size_t max_count = 0;
  for (const auto& level : tower.levels) {
    c.M = std::max(c.M, level.entries.size());
    for (const auto& e : level.entries) {
      c.L = std::max(c.L, e.core.size());
      max_count = std::max(max_count, e.count);
    }
  }
  c.N = 1 + max_count;
  return c;
}

std::string describe(const Tower& tower) {
  std::string out = "base";
  for (std::size_t g = 0; g < tower.base_count; ++g)
    out += " " + tower.alphabet.name(static_cast<GeneratorId>(g));
  out += "\n";
  for (const auto& level : tower.levels) {
    out += "level {";
    for (const auto& e : level.entries) {
      out += " centralizer u=\"" + format_word(e.u, tower.alphabet) +
             "\" count=" + std::to_string(e.count) + " letters";
      for (GeneratorId t : e.letters) out += " " + tower.alphabet.name(t);
      out += ";";
    }
    out += " }\n";
  }
  return out;
}

}  // namespace fgwp
