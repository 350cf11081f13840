#include "fgwp/cli.hpp"

#include "fgwp/aut_wp.hpp"
#include "fgwp/bigint.hpp"
#include "fgwp/compressed_compare.hpp"
#include "fgwp/errors.hpp"
#include "fgwp/free_group.hpp"
#include "fgwp/lyndon_length.hpp"
#include "fgwp/normal_form.hpp"
#include "fgwp/oracles.hpp"
#include "fgwp/slp.hpp"
#include "fgwp/slp_dag.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace fgwp {

using json = nlohmann::ordered_json;

json RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["result"] = result;
  j["metrics"] = metrics;
  if (wall_ms) j["wall_ms"] = *wall_ms;
  return j;
}

bool SizeGrowth::within_bound() const {
  for (const auto& r : rows)
    if (double(r.output_size) > r.bound) return false;
  return true;
}

Word default_seed(const Tower& tower) {
  Word seed;
  const std::size_t b = std::max<std::size_t>(tower.base_count, 1);
  std::size_t j = 0;
  for (const auto& level : tower.levels) {
    for (const auto& e : level.entries) {
      for (GeneratorId t : e.letters) {
        seed.push_back(pos(t));
        if (tower.base_count) seed.push_back(pos(GeneratorId(j % b)));
        seed.push_back(neg(t));
        if (tower.base_count) seed.push_back(pos(GeneratorId((j + 1) % b)));
        ++j;
      }
    }
  }
  if (seed.empty())
    for (std::size_t g = 0; g < tower.base_count; ++g) seed.push_back(pos(GeneratorId(g)));
  return seed;
}

SizeGrowth bench_size_growth(const Tower& tower, const Word& seed, std::size_t from,
                             std::size_t to) {
  SizeGrowth g;
  g.bound = size_bound(constants(tower));
  for (std::size_t k = from; k <= to && from <= to; ++k) {
    SlpDag dag;
    NodeId x = dag.from_word(seed);
    for (std::size_t i = 0; i < k; ++i) x = dag.concat(x, x);
    CwpReport rep;
    SizeGrowthRow row;
    row.k = k;
    row.trivial = compressed_word_problem(tower, dag, x, &rep);
    row.input_size = rep.input_size;
    row.output_size = rep.level_sizes.empty() ? rep.input_size : rep.level_sizes.back();
    row.length = to_string(rep.input_length);
    row.bound = g.bound.at(row.input_size);
    g.rows.push_back(std::move(row));
  }
  const double n = double(g.rows.size());
  if (g.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : g.rows) {
      const double x = double(r.input_size), y = double(r.output_size);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (den != 0) {
      g.has_fit = true;
      g.slope = (n * sxy - sx * sy) / den;
      g.intercept = (sy - g.slope * sx) / n;
      for (const auto& r : g.rows)
        g.max_residual = std::max(
            g.max_residual,
            std::abs(double(r.output_size) - (g.slope * double(r.input_size) + g.intercept)));
    }
  }
  return g;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Tower tower_file(const std::string& path) { return load_tower(read_file(path)); }

// An SLP read against a tower may only use the tower's letters.
Slp slp_over(const Tower& tower, const std::string& path) {
  Alphabet a = tower.alphabet;
  Slp slp = read_slp(read_file(path), a);
  if (a.size() != tower.alphabet.size())
    throw InvalidInput(path + ": letter " + a.name(GeneratorId(tower.alphabet.size())) +
                       " is not in the tower");
  return slp;
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

void boolean(RunReport& r, bool v) {
  r.result = v;
  r.text = v ? "true\n" : "false\n";
}

json p_values(const CwpReport& rep) {
  json arr = json::array();
  for (const auto& p : rep.p_values) arr.push_back(to_string(p));
  return arr;
}

void size_metrics(RunReport& r, const CwpReport& rep) {
  r.metrics["input_size"] = rep.input_size;
  r.metrics["output_size"] = rep.level_sizes.empty() ? rep.input_size : rep.level_sizes.back();
  r.metrics["level_sizes"] = rep.level_sizes;
  r.metrics["input_length"] = to_string(rep.input_length);
  r.metrics["P"] = to_string(rep.P);
  r.metrics["p_values"] = p_values(rep);
}

void bench_report(RunReport& r, const SizeGrowth& g) {
  std::ostringstream t;
  json rows = json::array();
  t << "k |A| |A_1| bound\n";
  for (const auto& row : g.rows) {
    t << row.k << ' ' << row.input_size << ' ' << row.output_size << ' ' << fixed(row.bound, 1)
      << '\n';
    rows.push_back({{"k", row.k},
                    {"input_size", row.input_size},
                    {"output_size", row.output_size},
                    {"length", row.length},
                    {"bound", row.bound},
                    {"trivial", row.trivial}});
  }
  if (g.has_fit) {
    t << "fit: |A_1| = " << fixed(g.slope) << " |A| + " << fixed(g.intercept)
      << " (max residual " << fixed(g.max_residual) << ")\n";
  } else {
    t << "fit: none\n";
  }
  const bool ok = g.within_bound();
  t << "bound: C1 = " << fixed(g.bound.C1) << " C2 = " << fixed(g.bound.C2) << ' '
    << (ok ? "ok" : "exceeded") << '\n';
  r.result = rows;
  r.metrics["C1"] = g.bound.C1;
  r.metrics["C2"] = g.bound.C2;
  r.metrics["within_bound"] = ok;
  if (g.has_fit) {
    r.metrics["slope"] = g.slope;
    r.metrics["intercept"] = g.intercept;
    r.metrics["max_residual"] = g.max_residual;
  }
  r.text = t.str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word problems over grammar-compressed words", "fgwp"};
  app.fallthrough();
  app.require_subcommand(1);
  bool as_json = false;
  bool timed = false;
  app.add_flag("--json", as_json, "structured output");
  app.add_flag("--time", timed, "report wall time");

  RunReport report;
  std::function<void()> action;
  std::string f1, f2, f3, w1, w2;
  bool flag = false;
  std::size_t from = 5, to = 20;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::string command, std::function<void()> body) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&report, &action, command = std::move(command), body = std::move(body)] {
      report.command = command;
      action = body;
    });
    return sub;
  };

  CLI::App* slp = app.add_subcommand("slp", "straight-line programs");
  slp->require_subcommand(1);
  leaf(slp, "eval", "print the produced word", "slp eval", [&] {
    Alphabet a;
    const Slp s = read_slp(read_file(f1), a);
    auto w = expand(s, default_expand_cap());
    if (!w) throw ExpansionOverflow("produced word exceeds the expansion cap");
    report.inputs["slp"] = f1;
    report.result = format_word(*w, a);
    report.metrics["size"] = s.size();
    report.text = format_word(*w, a) + "\n";
  })->add_option("slp", f1)->required();
  leaf(slp, "len", "print the produced length", "slp len", [&] {
    Alphabet a;
    const Slp s = read_slp(read_file(f1), a);
    report.inputs["slp"] = f1;
    report.result = to_string(produced_length(s));
    report.metrics["size"] = s.size();
    report.metrics["bit_size"] = bit_size(s, a.size());
    report.metrics["height"] = height(s);
    report.text = to_string(produced_length(s)) + "\n";
  })->add_option("slp", f1)->required();
  {
    CLI::App* eq = leaf(slp, "equal", "compare two programs", "slp equal", [&] {
      Alphabet a;
      const Slp x = read_slp(read_file(f1), a);
      const Slp y = read_slp(read_file(f2), a);
      SlpDag dag;
      const NodeId rx = dag.import_slp(x), ry = dag.import_slp(y);
      CompareStats stats;
      report.inputs["a"] = f1;
      report.inputs["b"] = f2;
      boolean(report, equal(dag, rx, ry, &stats));
      report.metrics["sizes"] = {x.size(), y.size()};
      report.metrics["recompression"] = stats.used_recompression;
      report.metrics["phases"] = stats.phases;
    });
    eq->add_option("a", f1)->required();
    eq->add_option("b", f2)->required();
  }

  CLI::App* fg = app.add_subcommand("fg", "free groups");
  fg->require_subcommand(1);
  leaf(fg, "reduce", "freely reduce a word", "fg reduce", [&] {
    Alphabet a;
    const Word w = parse_word_extending(w1, a);
    const Word r = free_reduce(w);
    report.inputs["word"] = w1;
    report.result = format_word(r, a);
    report.metrics["input_length"] = w.size();
    report.metrics["output_length"] = r.size();
    report.text = format_word(r, a) + "\n";
  })->add_option("word", w1)->required();
  leaf(fg, "cwp", "is a compressed word trivial in the free group", "fg cwp", [&] {
    Alphabet a;
    const Slp s = read_slp(read_file(f1), a);
    report.inputs["slp"] = f1;
    report.metrics["input_size"] = s.size();
    boolean(report, is_trivial_compressed(s));
  })->add_option("slp", f1)->required();

  CLI::App* tw = app.add_subcommand("tower", "towers of centralizer extensions");
  tw->require_subcommand(1);
  leaf(tw, "check", "load and check a tower file", "tower check", [&] {
    const Tower t = tower_file(f1);
    report.inputs["tower"] = f1;
    report.result = true;
    json warnings = json::array();
    std::string text = describe(t);
    for (const auto& w : t.warnings) {
      warnings.push_back(w);
      text += "warning: " + w + "\n";
    }
    report.metrics["levels"] = t.n();
    report.metrics["generators"] = t.alphabet.size();
    report.metrics["warnings"] = warnings;
    report.text = text + "ok\n";
  })->add_option("tower", f1)->required();
  leaf(tw, "constants", "print L, N, M and n", "tower constants", [&] {
    const Tower t = tower_file(f1);
    const TowerConstants c = constants(t);
    report.inputs["tower"] = f1;
    report.result = {{"L", c.L}, {"N", c.N}, {"M", c.M}, {"n", c.n}};
    report.text = "L=" + std::to_string(c.L) + " N=" + std::to_string(c.N) +
                  " M=" + std::to_string(c.M) + " n=" + std::to_string(c.n) + "\n";
  })->add_option("tower", f1)->required();

  {
    CLI::App* s = leaf(&app, "wp", "word problem", "wp", [&] {
      const Tower t = tower_file(f1);
      const Word w = parse_word(w1, t.alphabet);
      report.inputs["tower"] = f1;
      report.inputs["word"] = w1;
      report.metrics["length"] = w.size();
      boolean(report, word_problem(t, w));
    });
    s->add_option("tower", f1)->required();
    s->add_option("word", w1)->required();
  }
  {
    CLI::App* s = leaf(&app, "cwp", "compressed word problem", "cwp", [&] {
      const Tower t = tower_file(f1);
      const Slp a = slp_over(t, f2);
      const CwpReport rep = compressed_word_problem_report(t, a, flag);
      report.inputs["tower"] = f1;
      report.inputs["slp"] = f2;
      boolean(report, rep.trivial);
      size_metrics(report, rep);
      if (flag && rep.base_program) {
        const std::string text = format_slp(*rep.base_program, t.alphabet);
        report.metrics["reduced"] = text;
        report.text += text;
      }
    });
    s->add_option("tower", f1)->required();
    s->add_option("slp", f2)->required();
    s->add_flag("--emit-reduced", flag, "print the program over the base alphabet");
  }
  {
    CLI::App* s = leaf(&app, "nf", "normal form", "nf", [&] {
      const Tower t = tower_file(f1);
      const Word w = parse_word(w1, t.alphabet);
      const NormalForm nf = normal_form(t, w);
      const NormalFormCheck check = check_normal_form(t, nf);
      const std::size_t len = flattened_length(t, nf);
      const BigInt bound =
          pow(BigInt(10 * constants(t).L), t.n()) * BigInt(t.internalize(w).size());
      const bool within = BigInt(len) <= bound || t.n() == 0;
      report.inputs["tower"] = f1;
      report.inputs["word"] = w1;
      json syl = json::array();
      for (const auto& s : nf.syllables)
        syl.push_back({{"g", format_word(s.g, t.alphabet)},
                       {"u", format_word(t.levels[nf.level - 1].entries[s.entry].core,
                                         t.alphabet)},
                       {"c", s.c},
                       {"alpha", s.alpha}});
      report.result = {{"syllables", syl}, {"tail", format_word(nf.tail, t.alphabet)}};
      report.metrics["length"] = len;
      report.metrics["bound"] = to_string(bound);
      report.metrics["within_bound"] = within;
      report.metrics["conditions_ok"] = check.ok();
      report.metrics["problems"] = check.problems;
      std::string text = format_normal_form(t, nf);
      text += "length " + std::to_string(len) + " <= " + to_string(bound) + ": " +
              (within ? "ok" : "exceeded") + "\n";
      text += "conditions: " + std::string(check.ok() ? "ok" : "violated") + "\n";
      for (const auto& p : check.problems) text += "  " + p + "\n";
      report.text = text;
    });
    s->add_option("tower", f1)->required();
    s->add_option("word", w1)->required();
  }
  {
    CLI::App* s = leaf(&app, "len", "Lyndon length", "len", [&] {
      const Tower t = tower_file(f1);
      const Word w = parse_word(w1, t.alphabet);
      const LengthVector v = lyndon_length(t, w);
      report.inputs["tower"] = f1;
      report.inputs["word"] = w1;
      report.result = v.coefficients();
      report.text = v.to_string() + "\n";
    });
    s->add_option("tower", f1)->required();
    s->add_option("word", w1)->required();
  }

  CLI::App* aut = app.add_subcommand("aut", "automorphisms");
  aut->require_subcommand(1);
  {
    CLI::App* s = leaf(aut, "wp", "is a composition the identity", "aut wp", [&] {
      const Tower t = tower_file(f1);
      const AutomorphismFile file = load_automorphisms(read_file(f2), t);
      const Composition comp = parse_composition(w1, file.set);
      const AutWpResult res = aut_word_problem(t, file.set, comp, !flag);
      report.inputs["tower"] = f1;
      report.inputs["automorphisms"] = f2;
      report.inputs["composition"] = w1;
      boolean(report, res.identity);
      report.metrics["steps"] = comp.size();
      report.metrics["program_size"] = res.program_size;
      json fixes = json::object();
      for (std::size_t g = 0; g < res.fixes.size(); ++g)
        fixes[t.alphabet.name(GeneratorId(g))] = bool(res.fixes[g]);
      report.metrics["fixes"] = fixes;
    });
    s->add_option("tower", f1)->required();
    s->add_option("automorphisms", f2)->required();
    s->add_option("composition", w1)->required();
    s->add_flag("--unsafe", flag, "skip the homomorphism check");
  }
  {
    CLI::App* s = leaf(aut, "catalog", "list the automorphisms of a file", "aut catalog", [&] {
      const Tower t = tower_file(f1);
      const AutomorphismFile file = load_automorphisms(read_file(f2), t);
      report.inputs["tower"] = f1;
      report.inputs["automorphisms"] = f2;
      json names = json::array();
      for (const auto& spec : file.set.specs) {
        names.push_back(spec.name);
        report.text += format_spec(spec, t.alphabet) + "\n";
      }
      report.result = names;
    });
    s->add_option("tower", f1)->required();
    s->add_option("automorphisms", f2)->required();
  }

  CLI::App* orc = app.add_subcommand("oracle", "reference computations");
  orc->require_subcommand(1);
  leaf(orc, "expand-reduce", "expand and freely reduce", "oracle expand-reduce", [&] {
    Alphabet a;
    const Slp s = read_slp(read_file(f1), a);
    auto w = oracle::expand_reduce(s, default_expand_cap());
    if (!w) throw ExpansionOverflow("produced word exceeds the expansion cap");
    report.inputs["slp"] = f1;
    report.result = format_word(*w, a);
    report.text = format_word(*w, a) + "\n";
  })->add_option("slp", f1)->required();
  {
    CLI::App* s = leaf(orc, "britton", "Britton reduction at level 1", "oracle britton", [&] {
      const Tower t = tower_file(f1);
      require_single_extension(t);
      const Word w = parse_word(w1, t.alphabet);
      report.inputs["tower"] = f1;
      report.inputs["word"] = w1;
      boolean(report, oracle::britton_wp_level1(t, w));
    });
    s->add_option("tower", f1)->required();
    s->add_option("word", w1)->required();
  }
  {
    CLI::App* s = leaf(orc, "power", "exponent c with g = u^c", "oracle power", [&] {
      Alphabet a;
      const Word u = oracle::reduce(parse_word_extending(w1, a));
      const Word g = parse_word_extending(w2, a);
      if (u.empty()) throw InvalidInput("u must be nontrivial");
      report.inputs["u"] = w1;
      report.inputs["g"] = w2;
      const auto c = oracle::power_membership(u, g);
      if (c) {
        report.result = *c;
        report.text = std::to_string(*c) + "\n";
      } else {
        report.result = nullptr;
        report.text = "not a power\n";
      }
    });
    s->add_option("u", w1)->required();
    s->add_option("g", w2)->required();
  }
  {
    CLI::App* s = leaf(orc, "aut", "literal image of a generator", "oracle aut", [&] {
      const Tower t = tower_file(f1);
      const AutomorphismFile file = load_automorphisms(read_file(f2), t);
      const Composition comp = parse_composition(w1, file.set);
      const auto g = t.alphabet.find(w2);
      if (!g) throw InvalidInput("unknown generator " + w2);
      auto img = oracle::naive_aut_compose(file.set, comp, *g, default_expand_cap());
      if (!img) throw ExpansionOverflow("image exceeds the expansion cap");
      report.inputs["tower"] = f1;
      report.inputs["automorphisms"] = f2;
      report.inputs["composition"] = w1;
      report.inputs["generator"] = w2;
      report.result = format_word(*img, t.alphabet);
      report.metrics["length"] = img->size();
      report.text = format_word(*img, t.alphabet) + "\n";
    });
    s->add_option("tower", f1)->required();
    s->add_option("automorphisms", f2)->required();
    s->add_option("composition", w1)->required();
    s->add_option("generator", w2)->required();
  }

  CLI::App* bench = app.add_subcommand("bench", "benchmarks");
  bench->require_subcommand(1);
  {
    CLI::App* s = leaf(bench, "size-growth", "|A_1| against |A| on a doubling family",
                       "bench size-growth", [&] {
      const Tower t = tower_file(f1);
      const Word seed = w1.empty() ? default_seed(t) : parse_word(w1, t.alphabet);
      report.inputs["tower"] = f1;
      report.inputs["seed"] = format_word(seed, t.alphabet);
      report.inputs["from"] = from;
      report.inputs["to"] = to;
      bench_report(report, bench_size_growth(t, seed, from, to));
    });
    s->add_option("tower", f1)->required();
    s->add_option("--from", from, "first doubling count")->capture_default_str();
    s->add_option("--to", to, "last doubling count")->capture_default_str();
    s->add_option("--seed", w1, "word repeated 2^k times");
  }

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("fgwp");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    action();
    if (timed)
      report.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const ExpansionOverflow& e) {
    err << "overflow: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }

  if (as_json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << report.text;
    if (report.wall_ms) out << "time " << fixed(*report.wall_ms) << " ms\n";
  }
  return 0;
}

}  // namespace fgwp
