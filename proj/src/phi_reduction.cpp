#include "fgwp/phi_reduction.hpp"

#include "fgwp/errors.hpp"
#include "fgwp/free_group.hpp"

#include <cmath>

namespace fgwp {

PSequence p_sequence(const TowerConstants& c, const BigInt& P) {
  PSequence seq;
  seq.P = P;
  seq.values.push_back(P);
  for (std::size_t i = 0; i < c.n; ++i) seq.values.push_back(pow(seq.values.back(), c.N) * c.L);
  return seq;
}

PSequence p_sequence(const Tower& tower, const BigInt& P) { return p_sequence(constants(tower), P); }

BigInt reduction_parameter(const TowerConstants& c, const BigInt& length) {
  return pow(BigInt(10 * c.L), c.n) * length + 1;
}

SizeBound size_bound(const TowerConstants& c) {
  SizeBound b;
  if (c.n == 0) return b;
  const double n = double(c.n), L = double(c.L), N = double(c.N), M = double(c.M);
  // Doubling chain, its odd corrections and the mirrored inverse copy: 2 * 2.
  const double chain = 2.0 * N * M * 2.0;
  double sum_powers = 0, sum_logs = 0;
  for (std::size_t i = 0; i < c.n; ++i) {
    const double Ni = std::pow(N, double(i));
    sum_powers += Ni;
    sum_logs += Ni * n * std::log2(10 * L) + (Ni - 1) / (N - 1) * std::log2(L);
  }
  b.C1 = 1 + chain / 2.0 * sum_powers;
  b.C2 = 2 * (2 * n * L * M) + chain / 2.0 * sum_logs;
  return b;
}

Word phi_level_word(const Tower& tower, std::size_t k, const BigInt& Pk, const Word& w,
                    std::size_t cap) {
  Word out;
  auto append = [&](const Word& piece, const BigInt& reps) {
    if (BigInt(out.size()) + BigInt(piece.size()) * reps > cap)
      throw ExpansionOverflow("phi image exceeds the expansion cap of " + std::to_string(cap));
    const auto r = reps.convert_to<std::size_t>();
    for (std::size_t i = 0; i < r; ++i) out.insert(out.end(), piece.begin(), piece.end());
  };
  for (Letter x : w) {
    auto s = tower.stable(x.generator);
    if (!s || s->level != k) {
      append(Word{x}, 1);
      continue;
    }
    const Word& u = tower.levels[k - 1].entries[s->entry].core;
    append(x.inverted ? inverse(u) : u, pow(Pk, s->index));
  }
  return out;
}

NodeId phi_level_node(SlpDag& dag, const Tower& tower, std::size_t k, const BigInt& Pk,
                      NodeId root) {
  const auto& entries = tower.levels.at(k - 1).entries;
  std::vector<std::vector<NodeId>> chains(entries.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    NodeId cur = dag.from_word(entries[e].core);
    for (std::size_t i = 1; i <= entries[e].count; ++i) {
      cur = dag.power(cur, Pk);
      chains[e].push_back(cur);
    }
  }
  const NodeId roots[] = {root};
  auto mapped = dag.map_letters(roots, [&](Letter x) {
    auto s = tower.stable(x.generator);
    if (!s || s->level != k) return dag.leaf(x);
    const NodeId image = chains[s->entry][s->index - 1];
    return x.inverted ? dag.reverse_inverse(image) : image;
  });
  return mapped.front();
}

Slp phi_level_slp(const Tower& tower, std::size_t k, const BigInt& Pk, const Slp& a) {
  SlpDag dag;
  const NodeId root = dag.import_slp(a);
  return dag.export_slp(phi_level_node(dag, tower, k, Pk, root));
}

bool compressed_word_problem(const Tower& tower, SlpDag& dag, NodeId root, CwpReport* report) {
  return internal_compressed_word_problem(tower, dag, tower.internalize(dag, root), report);
}

bool internal_compressed_word_problem(const Tower& tower, SlpDag& dag, NodeId root,
                                      CwpReport* report) {
  NodeId cur = root;
  const TowerConstants c = constants(tower);
  const BigInt P = reduction_parameter(c, dag.length(cur));
  const PSequence seq = p_sequence(c, P);
  if (report) {
    report->P = P;
    report->input_size = dag.program_size(cur);
    report->input_length = dag.length(cur);
    report->p_values.assign(seq.values.begin(), seq.values.end() - 1);
  }
  for (std::size_t k = tower.n(); k >= 1; --k) {
    cur = phi_level_node(dag, tower, k, seq.at(k), cur);
    if (report) report->level_sizes.push_back(dag.program_size(cur));
  }
  if (report && report->keep_program) report->base_program = dag.export_slp(cur);
  const NodeId reduced = reduced_node(dag, cur);
  const bool trivial = dag.length(reduced) == 0;
  if (report) {
    report->trivial = trivial;
    if (report->level_sizes.empty()) report->level_sizes.push_back(report->input_size);
  }
  return trivial;
}

CwpReport compressed_word_problem_report(const Tower& tower, const Slp& a, bool keep_program) {
  CwpReport report;
  report.keep_program = keep_program;
  SlpDag dag;
  const NodeId root = dag.import_slp(a);
  compressed_word_problem(tower, dag, root, &report);
  return report;
}

bool compressed_word_problem(const Tower& tower, const Slp& a) {
  SlpDag dag;
  const NodeId root = dag.import_slp(a);
  return compressed_word_problem(tower, dag, root);
}

bool word_problem(const Tower& tower, const Word& w) {
  SlpDag dag;
  const NodeId root = dag.from_word(w);
  return compressed_word_problem(tower, dag, root);
}

bool internal_word_problem(const Tower& tower, const Word& w) {
  SlpDag dag;
  const NodeId root = dag.from_word(w);
  return internal_compressed_word_problem(tower, dag, root);
}

}  // namespace fgwp
