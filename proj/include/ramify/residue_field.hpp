#pragma once

// Exact arithmetic in the residue field F_q of a p-adic base field K, plus the
// multiplicative and additive solvers used by the invariant machinery.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ramify {

/// Element of F_q. The code is the coefficient vector (constant first) read as
/// a base-p number with the constant coefficient most significant, so code
/// order is the lexicographic order of coefficient vectors.
class FqElement {
 public:
  constexpr FqElement() = default;
  constexpr explicit FqElement(std::uint32_t code) : code_(code) {}

  constexpr std::uint32_t code() const { return code_; }
  constexpr bool is_zero() const { return code_ == 0; }

  friend constexpr auto operator<=>(FqElement, FqElement) = default;

 private:
  std::uint32_t code_ = 0;
};

namespace detail {
struct FieldTables;
}

/// Exact description of K: residue characteristic p, residue degree f,
/// absolute ramification index e and the uniformizer residue gamma (residue
/// of pi^e / p). Immutable; copies share the arithmetic tables.
class BaseField {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  /// gamma_spec is either "g" (least primitive element), or comma separated
  /// coefficients, constant first; missing trailing coefficients are zero.
  static BaseField make(std::int64_t p, int f, int e, std::string_view gamma_spec = "1");

  /// Q_p itself.
  static BaseField rationals(std::int64_t p) { return make(p, 1, 1, "1"); }

  std::int64_t p() const;
  int f() const;
  int e() const;
  std::uint32_t q() const;
  FqElement gamma() const { return gamma_; }
  /// Monic modulus coefficients, constant first (length f + 1).
  const std::vector<int>& modulus() const;
  /// Least primitive element.
  FqElement generator() const;

  FqElement zero() const { return FqElement{}; }
  FqElement one() const;
  /// Image of an integer in the prime subfield.
  FqElement from_int(std::int64_t v) const;
  /// Prime-subfield value of an element of F_p embedded in F_q; throws if x is
  /// not in the prime subfield.
  std::int64_t to_int(FqElement x) const;

  std::vector<int> coefficients(FqElement x) const;
  FqElement from_coefficients(std::span<const int> coeffs) const;

  FqElement add(FqElement a, FqElement b) const;
  FqElement sub(FqElement a, FqElement b) const;
  FqElement neg(FqElement a) const;
  FqElement mul(FqElement a, FqElement b) const;
  FqElement inv(FqElement a) const;
  FqElement div(FqElement a, FqElement b) const { return mul(a, inv(b)); }
  /// a^k; negative k requires a != 0. 0^0 = 1.
  FqElement pow(FqElement a, std::int64_t k) const;
  /// Discrete log base generator(); a must be nonzero.
  std::uint32_t log(FqElement a) const;

  /// All elements in lexicographic order.
  std::vector<FqElement> elements() const;
  /// All nonzero elements in lexicographic order.
  std::vector<FqElement> units() const;

  std::string to_string(FqElement x) const;
  FqElement parse(std::string_view text) const;

  friend bool operator==(const BaseField& a, const BaseField& b);

 private:
  std::shared_ptr<const detail::FieldTables> tables_;
  FqElement gamma_;
  int e_ = 1;
};

struct PowerEquation {
  std::int64_t exponent;
  FqElement value;
};

/// All x in F_q^x with x^{k_i} = a_i for every equation. The system is first
/// reduced to a single equation x^K = A with K the gcd of the exponents
/// (including q - 1), then solved by scanning the unit group.
std::vector<FqElement> solve_power_system(const BaseField& field, std::span<const PowerEquation> eqs);

/// F_p-linear self-map of F_q, stored as the images of the basis 1, x, ..., x^{f-1}.
struct AdditiveMap {
  std::vector<FqElement> basis_images;

  template <class Fn>
  static AdditiveMap from_function(const BaseField& field, Fn&& fn) {
    AdditiveMap map;
    std::vector<int> unit(static_cast<std::size_t>(field.f()), 0);
    for (int i = 0; i < field.f(); ++i) {
      unit.assign(unit.size(), 0);
      unit[static_cast<std::size_t>(i)] = 1;
      map.basis_images.push_back(fn(field.from_coefficients(unit)));
    }
    return map;
  }

  FqElement apply(const BaseField& field, FqElement x) const;
};

/// One lexicographically least representative per coset of
/// F_q / (scale * Image(map)); zero represents the zero coset.
std::vector<FqElement> additive_coset_representatives(const BaseField& field, const AdditiveMap& map,
                                                      FqElement scale);

/// Let H = { d^{-J} : d^{J_k} = 1 for every constraint exponent J_k }. Returns
/// the lexicographically least element of every H-orbit of F_q^x.
std::vector<FqElement> orbit_representatives(const BaseField& field, std::int64_t J,
                                             std::span<const std::int64_t> constraint_exponents);

}  // namespace ramify
