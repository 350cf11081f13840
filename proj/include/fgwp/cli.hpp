#pragma once

#include "fgwp/phi_reduction.hpp"
#include "fgwp/tower.hpp"
#include "fgwp/word.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fgwp {

/// What a command computed. `text` is the plain-text rendering; the JSON
/// rendering is built from the remaining fields.
struct RunReport {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json result;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  std::string text;
  std::optional<double> wall_ms;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

struct SizeGrowthRow {
  std::size_t k = 0;
  std::size_t input_size = 0;   // |A|
  std::size_t output_size = 0;  // |A_1|
  std::string length;           // |w_A| in decimal
  double bound = 0;             // C1 |A| + C2
  bool trivial = false;
};

struct SizeGrowth {
  std::vector<SizeGrowthRow> rows;
  SizeBound bound;
  bool has_fit = false;
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
  [[nodiscard]] bool within_bound() const;
};

/// One stable letter after another, each conjugating a base letter:
/// t b_1 t^-1 b_2 ... Falls back to the base letters for n = 0.
Word default_seed(const Tower& tower);

/// The doubling family seed^(2^k), k = from..to, pushed through the
/// compressed word problem. `from > to` gives an empty table.
SizeGrowth bench_size_growth(const Tower& tower, const Word& seed, std::size_t from,
                             std::size_t to);

/// Runs one command line (without the program name). Exit status: 0 on
/// success (booleans included), 2 for usage, parse and input errors, 3 for
/// internal failures.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fgwp
