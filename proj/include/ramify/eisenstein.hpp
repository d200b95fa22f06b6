#pragma once

// Finite digit tables of monic Eisenstein polynomials: coefficient i has the
// pi-adic residue digits digit(i, 1), digit(i, 2), ... ; the leading
// coefficient is implicitly 1.

#include <cstdint>
#include <optional>
#include <vector>

#include "ramify/residue_field.hpp"

namespace ramify {

struct DigitEntry {
  std::int64_t i = 0;
  std::int64_t k = 0;
  FqElement value;
  friend bool operator==(const DigitEntry&, const DigitEntry&) = default;
};

class EisensteinData {
 public:
  /// All digits zero; digits k = 1..depth are addressable.
  EisensteinData(BaseField base, std::int64_t n, std::int64_t depth);
  /// Throws ErrorCode::NotEisenstein unless the result is Eisenstein.
  static EisensteinData from_digits(BaseField base, std::int64_t n, const std::vector<DigitEntry>& digits);

  const BaseField& base() const { return base_; }
  std::int64_t degree() const { return n_; }
  std::int64_t depth() const { return depth_; }

  /// Zero beyond the stored depth.
  FqElement digit(std::int64_t i, std::int64_t k) const;
  void set_digit(std::int64_t i, std::int64_t k, FqElement v);

  /// First nonzero digit index of f_i; 0 for the leading coefficient and
  /// nullopt when f_i vanishes within the table.
  std::optional<std::int64_t> F(std::int64_t i) const;
  /// digit(i, F_i); 1 for i = n.
  FqElement phi(std::int64_t i) const;

  /// Throws ErrorCode::NotEisenstein if digit(0, 1) is zero.
  void validate() const;

  std::vector<DigitEntry> nonzero_digits() const;

  friend bool operator==(const EisensteinData& a, const EisensteinData& b) {
    return a.n_ == b.n_ && a.nonzero_digits() == b.nonzero_digits();
  }

 private:
  std::size_t index(std::int64_t i, std::int64_t k) const;

  BaseField base_;
  std::int64_t n_;
  std::int64_t depth_;
  std::vector<FqElement> digits_;
};

}  // namespace ramify
