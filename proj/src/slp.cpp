#include "fgwp/slp.hpp"

#include "fgwp/errors.hpp"
#include "fgwp/slp_dag.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace fgwp {

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.nonterminal == 0 ? std::string("program") : "A" + std::to_string(v.nonterminal);
    out += ": " + v.message;
  }
  return out;
}

ValidationReport validate(const Slp& slp) {
  ValidationReport report;
  if (slp.productions.empty()) {
    report.violations.push_back({0, "program has no nonterminals"});
    return report;
  }
  for (std::size_t i = 0; i < slp.size(); ++i) {
    if (const auto* p = std::get_if<PairRule>(&slp.productions[i])) {
      for (std::size_t child : {p->left, p->right}) {
        if (child >= i) {
          report.violations.push_back(
              {i + 1, "refers to A" + std::to_string(child + 1) + ", which is not below it"});
        }
      }
    }
  }
  return report;
}

void require_valid(const Slp& slp) {
  auto report = validate(slp);
  if (!report.ok()) throw InvalidInput("invalid SLP: " + report.to_string());
}

std::vector<BigInt> produced_lengths(const Slp& slp) {
  require_valid(slp);
  std::vector<BigInt> len(slp.size());
  for (std::size_t i = 0; i < slp.size(); ++i) {
    const Production& p = slp.productions[i];
    if (const auto* pr = std::get_if<PairRule>(&p)) {
      len[i] = len[pr->left] + len[pr->right];
    } else if (std::holds_alternative<TerminalRule>(p)) {
      len[i] = 1;
    }
  }
  return len;
}

BigInt produced_length(const Slp& slp) { return produced_lengths(slp).back(); }

std::size_t height(const Slp& slp) {
  require_valid(slp);
  std::vector<std::size_t> h(slp.size(), 0);
  for (std::size_t i = 0; i < slp.size(); ++i) {
    if (const auto* pr = std::get_if<PairRule>(&slp.productions[i])) {
      h[i] = 1 + std::max(h[pr->left], h[pr->right]);
    } else {
      h[i] = 1;
    }
  }
  return h.back();
}

std::size_t bit_size(const Slp& slp, std::size_t alphabet_size) {
  const std::size_t index_bits = std::max<std::size_t>(1, ceil_log2(BigInt(slp.size())));
  const std::size_t letter_bits = std::max<std::size_t>(1, ceil_log2(BigInt(2 * alphabet_size)));
  std::size_t bits = 0;
  for (const auto& p : slp.productions) {
    bits += 2;
    if (std::holds_alternative<PairRule>(p)) bits += 2 * index_bits;
    if (std::holds_alternative<TerminalRule>(p)) bits += letter_bits;
  }
  return bits;
}

std::optional<Word> expand(const Slp& slp, std::size_t cap) {
  const auto len = produced_lengths(slp);
  if (len.back() > cap) return std::nullopt;
  Word out;
  out.reserve(len.back().convert_to<std::size_t>());
  std::vector<std::size_t> stack{slp.root()};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    const Production& p = slp.productions[i];
    if (const auto* pr = std::get_if<PairRule>(&p)) {
      stack.push_back(pr->right);
      stack.push_back(pr->left);
    } else if (const auto* t = std::get_if<TerminalRule>(&p)) {
      out.push_back(t->letter);
    }
  }
  return out;
}

Slp from_word(const Word& w) {
  SlpDag dag;
  return dag.export_slp(dag.from_word(w));
}

std::size_t power_correction(const BigInt& q) {
  const std::size_t bits = popcount(q);
  return bits == 0 ? 0 : bits - 1;
}

Slp power_slp(const Word& w, const BigInt& q) {
  SlpDag dag;
  return dag.export_slp(dag.power(dag.from_word(w), q));
}

Slp cut_prefix(const Slp& slp, const BigInt& k) {
  SlpDag dag;
  NodeId root = dag.import_slp(slp);
  return dag.export_slp(dag.cut_prefix(root, k));
}

Slp cut_suffix(const Slp& slp, const BigInt& k) {
  SlpDag dag;
  NodeId root = dag.import_slp(slp);
  return dag.export_slp(dag.cut_suffix(root, k));
}

Slp reverse_inverse(const Slp& slp) {
  Slp out = slp;
  for (auto& p : out.productions) {
    if (auto* pr = std::get_if<PairRule>(&p)) {
      std::swap(pr->left, pr->right);
    } else if (auto* t = std::get_if<TerminalRule>(&p)) {
      t->letter = t->letter.inverse();
    }
  }
  return out;
}

namespace {

// Appends `part` to `out`, shifting its indices; returns the index of its root.
std::size_t append_program(Slp& out, const Slp& part) {
  const std::size_t offset = out.size();
  for (Production p : part.productions) {
    if (auto* pr = std::get_if<PairRule>(&p)) {
      pr->left += offset;
      pr->right += offset;
    }
    out.productions.push_back(p);
  }
  return out.size() - 1;
}

}  // namespace

Slp concat(const Slp& a, const Slp& b) {
  require_valid(a);
  require_valid(b);
  Slp out;
  out.productions.reserve(a.size() + b.size() + 1);
  const std::size_t ra = append_program(out, a);
  const std::size_t rb = append_program(out, b);
  out.productions.emplace_back(PairRule{ra, rb});
  return out;
}

Slp substitute(const Slp& slp, const std::map<GeneratorId, Slp>& images) {
  require_valid(slp);
  std::set<Letter> needed;
  for (const auto& p : slp.productions) {
    if (const auto* t = std::get_if<TerminalRule>(&p)) needed.insert(t->letter);
  }
  Slp out;
  std::map<Letter, std::size_t> image_root;
  for (Letter x : needed) {
    auto it = images.find(x.generator);
    if (it == images.end())
      throw InvalidInput("substitute: no image for generator " + std::to_string(x.generator));
    require_valid(it->second);
    image_root[x] = append_program(out, x.inverted ? reverse_inverse(it->second) : it->second);
  }
  std::vector<std::size_t> index(slp.size());
  for (std::size_t i = 0; i < slp.size(); ++i) {
    const Production& p = slp.productions[i];
    if (const auto* pr = std::get_if<PairRule>(&p)) {
      out.productions.emplace_back(PairRule{index[pr->left], index[pr->right]});
      index[i] = out.size() - 1;
    } else if (const auto* t = std::get_if<TerminalRule>(&p)) {
      index[i] = image_root.at(t->letter);
    } else {
      out.productions.emplace_back(EmptyRule{});
      index[i] = out.size() - 1;
    }
  }
  // The root may be an image root that is not last; trimming restores the
  // root-last convention.
  Slp rooted = out;
  const std::size_t root = index[slp.root()];
  rooted.productions.resize(root + 1);
  return trim(rooted);
}

Slp trim(const Slp& slp) {
  require_valid(slp);
  std::vector<char> live(slp.size(), 0);
  live[slp.root()] = 1;
  for (std::size_t i = slp.size(); i-- > 0;) {
    if (!live[i]) continue;
    if (const auto* pr = std::get_if<PairRule>(&slp.productions[i])) {
      live[pr->left] = 1;
      live[pr->right] = 1;
    }
  }
  std::vector<std::size_t> index(slp.size());
  Slp out;
  for (std::size_t i = 0; i < slp.size(); ++i) {
    if (!live[i]) continue;
    Production p = slp.productions[i];
    if (auto* pr = std::get_if<PairRule>(&p)) {
      pr->left = index[pr->left];
      pr->right = index[pr->right];
    }
    index[i] = out.size();
    out.productions.push_back(p);
  }
  return out;
}

Slp rebalance(const Slp& slp) {
  SlpDag dag;
  NodeId root = dag.import_slp(slp);
  return dag.export_slp(dag.rebalance(root));
}

namespace {

std::vector<std::string> tokenize_line(std::string_view line) {
  std::string spaced;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line.substr(i, 2) == "->") {
      spaced += " -> ";
      ++i;
    } else {
      spaced += line[i];
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::optional<std::size_t> nonterminal_index(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'A') return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value == 0) return std::nullopt;
  return value;
}

Letter parse_letter_token(const std::string& tok, Alphabet& alphabet, std::size_t line_no) {
  std::string name = tok;
  bool inverted = false;
  if (auto caret = tok.find('^'); caret != std::string::npos) {
    const std::string exp = tok.substr(caret + 1);
    name = tok.substr(0, caret);
    if (exp == "-1") {
      inverted = true;
    } else if (exp != "1" && exp != "+1") {
      throw ParseError("SLP line " + std::to_string(line_no) + ": letter exponent must be 1 or -1");
    }
  }
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    throw ParseError("SLP line " + std::to_string(line_no) + ": bad letter '" + tok + "'");
  return {alphabet.add(name), inverted};
}

}  // namespace

ParsedSlp parse_slp_text(std::string_view text, Alphabet& alphabet) {
  std::map<std::size_t, Production> rules;
  std::optional<std::size_t> root;
  ValidationReport report;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize_line(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = "SLP line " + std::to_string(line_no);
    if (tokens[0] == "root") {
      if (tokens.size() != 2) throw ParseError(where + ": expected 'root A<n>'");
      auto idx = nonterminal_index(tokens[1]);
      if (!idx) throw ParseError(where + ": bad nonterminal '" + tokens[1] + "'");
      if (root) report.violations.push_back({0, "root declared twice"});
      root = idx;
      continue;
    }
    auto lhs = nonterminal_index(tokens[0]);
    if (!lhs || tokens.size() < 3 || tokens[1] != "->")
      throw ParseError(where + ": expected 'A<i> -> ...'");
    Production p;
    if (tokens.size() == 4) {
      auto l = nonterminal_index(tokens[2]);
      auto r = nonterminal_index(tokens[3]);
      if (!l || !r) throw ParseError(where + ": expected two nonterminals");
      p = PairRule{*l - 1, *r - 1};
    } else if (tokens.size() == 3) {
      if (tokens[2] == "^") {
        p = EmptyRule{};
      } else {
        p = TerminalRule{parse_letter_token(tokens[2], alphabet, line_no)};
      }
    } else {
      throw ParseError(where + ": too many symbols on the right-hand side");
    }
    if (!rules.emplace(*lhs, p).second)
      report.violations.push_back({*lhs, "defined more than once"});
    if (end == text.size()) break;
  }
  ParsedSlp out;
  if (rules.empty()) {
    report.violations.push_back({0, "program has no productions"});
    out.slp = Slp::empty();
    out.report = report;
    return out;
  }
  const std::size_t n = rules.rbegin()->first;
  out.slp.productions.assign(n, EmptyRule{});
  for (std::size_t i = 1; i <= n; ++i) {
    auto it = rules.find(i);
    if (it == rules.end()) {
      report.violations.push_back({i, "undefined (nonterminal indices must be contiguous)"});
    } else {
      out.slp.productions[i - 1] = it->second;
    }
  }
  for (const auto& [idx, p] : rules) {
    if (const auto* pr = std::get_if<PairRule>(&p)) {
      for (std::size_t child : {pr->left, pr->right}) {
        if (child + 1 > n || !rules.count(child + 1))
          report.violations.push_back({idx, "refers to undefined A" + std::to_string(child + 1)});
      }
    }
  }
  if (!root) {
    report.violations.push_back({0, "missing 'root A<n>' line"});
  } else if (*root != n) {
    report.violations.push_back(
        {*root, "root must be the highest nonterminal A" + std::to_string(n)});
  }
  for (auto& v : validate(out.slp).violations) report.violations.push_back(std::move(v));
  out.report = std::move(report);
  return out;
}

Slp read_slp(std::string_view text, Alphabet& alphabet) {
  auto parsed = parse_slp_text(text, alphabet);
  if (!parsed.report.ok()) throw InvalidInput("invalid SLP: " + parsed.report.to_string());
  return std::move(parsed.slp);
}

std::string format_slp(const Slp& slp, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < slp.size(); ++i) {
    out += "A" + std::to_string(i + 1) + " -> ";
    const Production& p = slp.productions[i];
    if (const auto* pr = std::get_if<PairRule>(&p)) {
      out += "A" + std::to_string(pr->left + 1) + " A" + std::to_string(pr->right + 1);
    } else if (const auto* t = std::get_if<TerminalRule>(&p)) {
      out += format_letter(t->letter, alphabet);
    } else {
      out += "^";
    }
    out += '\n';
  }
  out += "root A" + std::to_string(slp.size()) + "\n";
  return out;
}

}  // namespace fgwp
