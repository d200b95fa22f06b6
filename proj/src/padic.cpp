#include "ramify/padic.hpp"

#include "ramify/error.hpp"

namespace ramify {

std::int64_t vp(std::int64_t p, std::int64_t n) {
  require(n != 0, "valuation of zero");
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::int64_t vp_factorial(std::int64_t p, std::int64_t k) {
  require(k >= 0, "factorial of a negative integer");
  std::int64_t total = 0;
  for (std::int64_t q = k / p; q > 0; q /= p) total += q;
  return total;
}

std::int64_t unit_factorial(std::int64_t p, std::int64_t k) {
  require(k >= 0, "factorial of a negative integer");
  const std::int64_t a = k / p;
  const std::int64_t b = k % p;
  std::int64_t r = 1;
  for (std::int64_t i = 2; i <= b; ++i) r = (r * i) % p;
  if (a % 2 == 1) r = (p - r) % p;
  return r;
}

std::int64_t shifted_factorial(std::int64_t p, std::int64_t k) {
  require(k >= 0, "factorial of a negative integer");
  std::int64_t r = 1;
  for (std::int64_t q = k; q > 0; q /= p) r = (r * unit_factorial(p, q)) % p;
  return r;
}

std::int64_t BinomialContext::B(std::int64_t i, std::int64_t j) const {
  require(0 <= j && j <= i, "binomial index out of range");
  const std::int64_t p = base_.p();
  return base_.e() * (vp_factorial(p, i) - vp_factorial(p, j) - vp_factorial(p, i - j));
}

FqElement BinomialContext::beta(std::int64_t r, std::int64_t k) const {
  require(0 <= k && k <= r, "binomial index out of range");
  const std::int64_t p = base_.p();
  const FqElement num = base_.from_int(shifted_factorial(p, r));
  const FqElement den = base_.from_int(shifted_factorial(p, k) * shifted_factorial(p, r - k));
  const std::int64_t w = vp_factorial(p, r) - vp_factorial(p, k) - vp_factorial(p, r - k);
  return base_.mul(base_.div(num, den), base_.pow(base_.gamma(), -w));
}

}  // namespace ramify
