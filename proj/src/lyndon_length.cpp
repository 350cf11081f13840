#include "fgwp/lyndon_length.hpp"

#include "fgwp/errors.hpp"
#include "fgwp/free_group.hpp"

#include <algorithm>

namespace fgwp {

LengthVector::LengthVector(std::vector<long long> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long long LengthVector::operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

int LengthVector::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

LengthVector operator+(const LengthVector& a, const LengthVector& b) {
  std::vector<long long> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return LengthVector(std::move(out));
}

LengthVector operator-(const LengthVector& a, const LengthVector& b) {
  std::vector<long long> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return LengthVector(std::move(out));
}

bool operator==(const LengthVector& a, const LengthVector& b) { return a.coeffs_ == b.coeffs_; }

std::strong_ordering operator<=>(const LengthVector& a, const LengthVector& b) {
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

std::string LengthVector::to_string() const {
  const std::size_t n = std::max<std::size_t>(2, coeffs_.size());
  std::string out = "(";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ", ";
    out += std::to_string((*this)[i]);
  }
  return out + ")";
}

void require_single_extension(const Tower& tower) {
  if (tower.n() != 1 || tower.levels[0].entries.size() != 1 ||
      tower.levels[0].entries[0].count != 1)
    throw InvalidInput(
        "the length function needs a tower with one level, one centralizer and one stable letter");
}

long long l1(const Tower& tower, const CollectedForm& form, long long M) {
  require_single_extension(tower);
  const Word& u = tower.levels[0].entries[0].core;
  Word product;
  for (const auto& block : form.blocks) {
    product.insert(product.end(), block.h.begin(), block.h.end());
    const Word p = power(u, sigma(block.alpha) * M);
    product.insert(product.end(), p.begin(), p.end());
  }
  product.insert(product.end(), form.tail.begin(), form.tail.end());
  const auto m = static_cast<long long>(form.blocks.size());
  return static_cast<long long>(free_reduce(product).size()) -
         m * static_cast<long long>(free_reduce(power(u, M)).size());
}

LengthVector lyndon_length(const Tower& tower, const Word& w) {
  require_single_extension(tower);
  const Word internal = tower.internalize(w);
  const CollectedForm form = britton_collect(tower, 1, internal);
  long long stable = 0;
  for (const auto& block : form.blocks) stable += std::abs(block.alpha[0]);
  const long long M = static_cast<long long>(internal.size()) + 1;
  return LengthVector({l1(tower, form, M), stable});
}

CommonPrefix common_prefix_length(const Tower& tower, const Word& g1, const Word& g2) {
  const LengthVector sum =
      lyndon_length(tower, g1) + lyndon_length(tower, g2) - lyndon_length(tower, concat(inverse(g1), g2));
  CommonPrefix out;
  std::vector<long long> half;
  for (long long c : sum.coefficients()) {
    if (c % 2 != 0) out.integral = false;
    half.push_back(c / 2);
  }
  out.value = LengthVector(std::move(half));
  return out;
}

}  // namespace fgwp
