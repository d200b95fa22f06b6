#pragma once

// Validity, weak validity and equivalence at every level of the invariant
// hierarchy, and the solubility system for the uniformizer residue.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramify/polygon.hpp"

namespace ramify {

enum class Condition { BRange, Ore1, Ore2, Ore3, Consistency, Bounding, Tame, ResidueForced, ResidueSystem };

std::string_view to_string(Condition c);

struct Violation {
  Condition condition;
  std::string detail;
};

struct ValidityReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(Condition c, std::string detail) {
    ok = false;
    violations.push_back({c, std::move(detail)});
  }
  bool has(Condition c) const;
};

/// Fault-injection switches used by the self test to prove the cross checks
/// can fail. Production callers leave these at their defaults.
struct ValidityOptions {
  bool skip_ore2 = false;
};

/// The Ore / Consistency / Bounding family with s restricted to `s_values`
/// (plus the tame condition for fine polygons). Weak validity is the special
/// case s_values = {s_t}; full validity uses every s in 0..v_p(n).
ValidityReport check_ram_conditions(const BinomialContext& ctx, const RamPolygon& P, std::span<const int> s_values,
                                    const ValidityOptions& opts = {});
ValidityReport check_fine_conditions(const BinomialContext& ctx, const FinePolygon& Pstar,
                                     std::span<const int> s_values, const ValidityOptions& opts = {});

ValidityReport is_valid_ram(const BinomialContext& ctx, const RamPolygon& P, const ValidityOptions& opts = {});
ValidityReport is_weakly_valid_ram(const BinomialContext& ctx, const RamPolygon& P, const ValidityOptions& opts = {});
ValidityReport is_valid_fine(const BinomialContext& ctx, const FinePolygon& Pstar, const ValidityOptions& opts = {});
ValidityReport is_weakly_valid_fine(const BinomialContext& ctx, const FinePolygon& Pstar,
                                    const ValidityOptions& opts = {});

/// Power equations in x = -phi_0 for the residues assigned so far. Entries of
/// `gamma` are parallel to Pstar.wild_points(); unassigned entries are skipped.
std::vector<PowerEquation> residue_equations(const BinomialContext& ctx, const FinePolygon& Pstar,
                                             const std::vector<std::optional<FqElement>>& gamma);

/// Condition (b): tame residues are binomial(n, j) mod p.
ValidityReport check_tame_residues(const BinomialContext& ctx, const FinePolygonWithResidues& Pres);

/// Every phi_0 in F_q^x for which the residues are soluble. Throws
/// ErrorCode::ResidueMismatch if a tame residue is wrong.
std::vector<FqElement> admissible_phi0(const BinomialContext& ctx, const FinePolygonWithResidues& Pres);

/// Fine validity, tame residues and a nonempty admissible set.
ValidityReport is_valid_res(const BinomialContext& ctx, const FinePolygonWithResidues& Pres);

ValidityReport is_valid_with_unif(const BinomialContext& ctx, const InvariantWithUnif& inv);

/// Same fine polygon and some delta in F_q^x with rho'_j = rho_j delta^{-R_j}.
bool equivalent_res(const BinomialContext& ctx, const FinePolygonWithResidues& A, const FinePolygonWithResidues& B);

/// Same fine polygon and some delta with rho'_j = rho_j delta^{-R_j} and
/// phi'_0 = delta^n phi_0.
bool equivalent_with_unif(const BinomialContext& ctx, const InvariantWithUnif& A, const InvariantWithUnif& B);

/// gcd of all ordinates of the fine polygon.
std::int64_t ordinate_gcd(const FinePolygon& Pstar);

}  // namespace ramify
