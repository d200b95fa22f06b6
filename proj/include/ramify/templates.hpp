#pragma once

// Digit templates X_{i,k} describing families of Eisenstein polynomials, the
// Krasner truncation, and the change-of-uniformizer reduction.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ramify/eisenstein.hpp"
#include "ramify/polygon.hpp"

namespace ramify {

/// Unlisted slots follow the default rule: {0} at k = 0 and at k >= cutoff,
/// the full residue field otherwise.
class Template {
 public:
  using Slot = std::pair<std::int64_t, std::int64_t>;

  Template(BaseField base, std::int64_t n);

  const BaseField& base() const { return base_; }
  std::int64_t degree() const { return n_; }
  std::optional<std::int64_t> cutoff() const { return cutoff_; }
  /// Zeroes every digit k >= cutoff, including listed slots.
  void set_cutoff(std::int64_t cutoff);

  std::vector<FqElement> at(std::int64_t i, std::int64_t k) const;
  bool is_full(std::int64_t i, std::int64_t k) const;
  void set(std::int64_t i, std::int64_t k, std::vector<FqElement> values);
  /// Intersects the slot with `values`.
  void restrict(std::int64_t i, std::int64_t k, const std::vector<FqElement>& values);
  /// Slots that differ from the default rule, ordered by (i, k).
  std::map<Slot, std::vector<FqElement>> listed() const;

  /// Number of polynomials; throws if there is no cutoff or on overflow.
  std::uint64_t cardinality() const;
  /// True if every digit k <= max_digit of f lies in its slot.
  bool admits(const EisensteinData& f, std::int64_t max_digit) const;
  /// Calls `fn` once per polynomial, digits odometer-ordered by (i, k).
  void expand(const std::function<void(const EisensteinData&)>& fn) const;

  friend bool operator==(const Template& a, const Template& b) {
    return a.n_ == b.n_ && a.cutoff_ == b.cutoff_ && a.listed() == b.listed();
  }

 private:
  void check_slot(std::int64_t i, std::int64_t k) const;
  std::vector<FqElement> default_at(std::int64_t k) const;

  BaseField base_;
  std::int64_t n_;
  std::optional<std::int64_t> cutoff_;
  std::map<Slot, std::vector<FqElement>> slots_;
};

Template eisenstein_template(const BinomialContext& ctx, std::int64_t n);
Template template_for_polygon(const BinomialContext& ctx, const RamPolygon& P);
Template template_for_fine(const BinomialContext& ctx, const FinePolygon& Pstar);
Template template_for_invariant(const BinomialContext& ctx, const InvariantWithUnif& inv);

/// Least integer strictly greater than 1 + 2 J0 / n.
std::int64_t krasner_cutoff(std::int64_t J0, std::int64_t n);
Template truncate_krasner(Template T, std::int64_t J0);

struct SmData {
  std::int64_t m = 0;
  std::int64_t C = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;
  AdditiveMap map;
  /// (j, rho_j) for the minimizing points; the map is u -> sum rho_j u^j.
  std::vector<std::pair<std::int64_t, FqElement>> terms;
};

SmData compute_Sm(const BinomialContext& ctx, const FinePolygonWithResidues& Pres, std::int64_t m);

/// Replaces each still-free slot (d_m, 1 + c_m) below the cutoff by coset
/// representatives of F_q / (-phi_0)^{1+c_m} S_m(F_q).
Template reduce_template(const BinomialContext& ctx, const Template& T, const InvariantWithUnif& inv);

}  // namespace ramify
