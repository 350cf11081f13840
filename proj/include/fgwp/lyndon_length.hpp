#pragma once

#include "fgwp/normal_form.hpp"
#include "fgwp/tower.hpp"
#include "fgwp/word.hpp"

#include <compare>
#include <string>
#include <vector>

namespace fgwp {

/// Finitely supported integer sequence, read as a polynomial in t and
/// ordered right-lexicographically (highest degree decides).
class LengthVector {
 public:
  LengthVector() = default;
  explicit LengthVector(std::vector<long long> coefficients);

  [[nodiscard]] long long operator[](std::size_t i) const;
  [[nodiscard]] std::size_t dimension() const { return coeffs_.size(); }
  /// -1 for the zero vector.
  [[nodiscard]] int degree() const;
  [[nodiscard]] const std::vector<long long>& coefficients() const { return coeffs_; }

  friend LengthVector operator+(const LengthVector& a, const LengthVector& b);
  friend LengthVector operator-(const LengthVector& a, const LengthVector& b);
  friend bool operator==(const LengthVector& a, const LengthVector& b);
  friend std::strong_ordering operator<=>(const LengthVector& a, const LengthVector& b);

  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<long long> coeffs_;  // trailing zeros trimmed
};

/// The single-extension tower shape the length function is defined for:
/// one level, one centralizer entry, one stable letter.
void require_single_extension(const Tower& tower);

/// l_F(g_1 u^{e_1 M} g_2 ... g_m u^{e_m M} g_{m+1}) - m l_F(u^M) for a
/// collected form with e_i = sgn(a_i).
long long l1(const Tower& tower, const CollectedForm& form, long long M);

/// (l_1(w, |w|+1), sum |a_i|), computed on the reduced HNN form of w.
LengthVector lyndon_length(const Tower& tower, const Word& w);

struct CommonPrefix {
  LengthVector value;
  bool integral = true;  // false when l(g1)+l(g2)-l(g1^-1 g2) has an odd coordinate
};

/// (l(g1) + l(g2) - l(g1^-1 g2)) / 2.
CommonPrefix common_prefix_length(const Tower& tower, const Word& g1, const Word& g2);

}  // namespace fgwp
