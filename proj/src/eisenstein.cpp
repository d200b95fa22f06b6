#include "ramify/eisenstein.hpp"

#include "ramify/error.hpp"

namespace ramify {

EisensteinData::EisensteinData(BaseField base, std::int64_t n, std::int64_t depth)
    : base_(std::move(base)), n_(n), depth_(depth) {
  require(n >= 1, "degree must be >= 1");
  require(depth >= 1, "digit depth must be >= 1");
  digits_.assign(static_cast<std::size_t>(n * depth), base_.zero());
}

EisensteinData EisensteinData::from_digits(BaseField base, std::int64_t n, const std::vector<DigitEntry>& digits) {
  std::int64_t depth = 1;
  for (const auto& d : digits) {
    require(d.i >= 0 && d.i < n, "digit index i must lie in [0, n)");
    if (d.k < 1) {
      if (!d.value.is_zero()) fail(ErrorCode::NotEisenstein, "coefficient " + std::to_string(d.i) + " is not divisible by pi");
      continue;
    }
    depth = std::max(depth, d.k);
  }
  EisensteinData f(std::move(base), n, depth);
  for (const auto& d : digits)
    if (d.k >= 1) f.set_digit(d.i, d.k, d.value);
  f.validate();
  return f;
}

std::size_t EisensteinData::index(std::int64_t i, std::int64_t k) const {
  return static_cast<std::size_t>(i * depth_ + (k - 1));
}

FqElement EisensteinData::digit(std::int64_t i, std::int64_t k) const {
  require(i >= 0 && i < n_ && k >= 1, "digit index out of range");
  if (k > depth_) return base_.zero();
  return digits_[index(i, k)];
}

void EisensteinData::set_digit(std::int64_t i, std::int64_t k, FqElement v) {
  require(i >= 0 && i < n_ && k >= 1 && k <= depth_, "digit index out of range");
  require(v.code() < base_.q(), "digit is not an element of the residue field");
  digits_[index(i, k)] = v;
}

std::optional<std::int64_t> EisensteinData::F(std::int64_t i) const {
  if (i == n_) return 0;
  for (std::int64_t k = 1; k <= depth_; ++k)
    if (!digits_[index(i, k)].is_zero()) return k;
  return std::nullopt;
}

FqElement EisensteinData::phi(std::int64_t i) const {
  if (i == n_) return base_.one();
  const auto k = F(i);
  require(k.has_value(), "phi of a vanishing coefficient");
  return digit(i, *k);
}

void EisensteinData::validate() const {
  if (digit(0, 1).is_zero()) fail(ErrorCode::NotEisenstein, "constant coefficient does not have valuation exactly 1");
}

std::vector<DigitEntry> EisensteinData::nonzero_digits() const {
  std::vector<DigitEntry> out;
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int64_t k = 1; k <= depth_; ++k)
      if (const auto v = digits_[index(i, k)]; !v.is_zero()) out.push_back({i, k, v});
  return out;
}

}  // namespace ramify
