#pragma once

// Valuations and residues of factorials and binomial coefficients, normalized
// so that v(pi) = 1 in the base field.

#include <cstdint>

#include "ramify/residue_field.hpp"

namespace ramify {

/// v_p(n) for n != 0.
std::int64_t vp(std::int64_t p, std::int64_t n);

/// Legendre: v_p(k!) = sum_{i >= 1} floor(k / p^i).
std::int64_t vp_factorial(std::int64_t p, std::int64_t k);

/// Residue mod p of the product of all 1 <= i <= k prime to p; by Wilson's
/// theorem this is (-1)^a * b! for k = a p + b.
std::int64_t unit_factorial(std::int64_t p, std::int64_t k);

/// Residue mod p of k! / p^{v_p(k!)}, as the product of unit_factorial over
/// floor(k / p^i) for i >= 0.
std::int64_t shifted_factorial(std::int64_t p, std::int64_t k);

class BinomialContext {
 public:
  explicit BinomialContext(BaseField base) : base_(std::move(base)) {}

  const BaseField& base() const { return base_; }
  std::int64_t p() const { return base_.p(); }

  /// Normalized valuation v(x) = e * v_p(x) of a nonzero integer.
  std::int64_t v(std::int64_t x) const { return base_.e() * vp(base_.p(), x); }

  /// B(i, j) = v(binomial(i, j)) = e * v_p(binomial(i, j)); 0 <= j <= i.
  std::int64_t B(std::int64_t i, std::int64_t j) const;

  /// Residue of binomial(r, k) * pi^{-B(r, k)}.
  FqElement beta(std::int64_t r, std::int64_t k) const;

 private:
  BaseField base_;
};

}  // namespace ramify
