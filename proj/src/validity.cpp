#include "ramify/validity.hpp"

#include <algorithm>
#include <numeric>

#include "ramify/error.hpp"

namespace ramify {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::BRange: return "BRange";
    case Condition::Ore1: return "Ore1";
    case Condition::Ore2: return "Ore2";
    case Condition::Ore3: return "Ore3";
    case Condition::Consistency: return "Consistency";
    case Condition::Bounding: return "Bounding";
    case Condition::Tame: return "Tame";
    case Condition::ResidueForced: return "ResidueForced";
    case Condition::ResidueSystem: return "ResidueSystem";
  }
  return "?";
}

bool ValidityReport::has(Condition c) const {
  return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.condition == c; });
}

namespace {

std::string at(const WildPoint& t) { return "(" + std::to_string(t.x) + "," + std::to_string(t.J) + ")"; }

// The Ore / Consistency / Bounding family shared by plain and fine polygons;
// `ell(i, s)` is the level's lower bound on v(f_i) and `s_values` the
// exponents the conditions quantify over.
template <class Ell>
void check_family(ValidityReport& rep, std::int64_t p, std::int64_t n, const std::vector<WildPoint>& pts,
                  std::span<const int> s_values, Ell&& ell, const ValidityOptions& opts) {
  std::vector<bool> in_range(pts.size());
  for (std::size_t t = 0; t < pts.size(); ++t) {
    in_range[t] = pts[t].x <= pts[t].b;
    if (!in_range[t]) rep.add(Condition::BRange, "p^s_t > b_t at " + at(pts[t]));
  }

  for (const auto& t : pts)
    if (t.b == n && ell(n, t.s) != 0) rep.add(Condition::Ore1, "ell(n, s_t) != 0 at " + at(t));

  if (!opts.skip_ore2)
    for (int s : s_values)
      if (ell(n, s) > 0) rep.add(Condition::Ore2, "ell(n, " + std::to_string(s) + ") > 0");

  for (std::size_t t = 0; t < pts.size(); ++t)
    if (in_range[t] && pts[t].b < n && ell(pts[t].b, pts[t].s) < 1)
      rep.add(Condition::Ore3, "ell(b_t, s_t) < 1 at " + at(pts[t]));

  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (!in_range[t] || pts[t].b >= n) continue;
    for (std::size_t r = t + 1; r < pts.size(); ++r) {
      if (!in_range[r] || pts[r].b != pts[t].b) continue;
      if (ell(pts[t].b, pts[t].s) != ell(pts[r].b, pts[r].s))
        rep.add(Condition::Consistency, "unequal ell at " + at(pts[t]) + " and " + at(pts[r]));
    }
  }

  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (!in_range[t] || pts[t].b >= n) continue;
    const std::int64_t own = ell(pts[t].b, pts[t].s);
    for (int s : s_values) {
      if (ipow(p, s) > pts[t].b) continue;
      if (own < ell(pts[t].b, s))
        rep.add(Condition::Bounding, "ell(b_t, s_t) < ell(b_t, " + std::to_string(s) + ") at " + at(pts[t]));
    }
  }
}

std::vector<int> all_exponents(int s_u) {
  std::vector<int> out(static_cast<std::size_t>(s_u) + 1);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<int> exponents_of(const std::vector<WildPoint>& pts) {
  std::vector<int> out;
  for (const auto& t : pts) out.push_back(t.s);
  return out;
}

void check_tame_points(ValidityReport& rep, const BinomialContext& ctx, const FinePolygon& Pstar) {
  const std::int64_t n = Pstar.degree();
  for (std::int64_t j = Pstar.wild_end(); j <= n; ++j) {
    const bool unit = ctx.B(n, j) == 0;
    const bool present = Pstar.point_at(j).has_value();
    if (unit != present)
      rep.add(Condition::Tame, std::string(unit ? "missing" : "unexpected") + " tame point at j = " + std::to_string(j));
  }
}

ValidityReport ram_report(const BinomialContext& ctx, const RamPolygon& P, bool weak, const ValidityOptions& opts) {
  const auto s_values = weak ? exponents_of(P.wild_vertices()) : all_exponents(P.s_u());
  return check_ram_conditions(ctx, P, s_values, opts);
}

ValidityReport fine_report(const BinomialContext& ctx, const FinePolygon& Pstar, bool weak,
                           const ValidityOptions& opts) {
  const auto s_values = weak ? exponents_of(Pstar.wild_points()) : all_exponents(Pstar.s_u());
  return check_fine_conditions(ctx, Pstar, s_values, opts);
}

}  // namespace

ValidityReport check_ram_conditions(const BinomialContext& ctx, const RamPolygon& P, std::span<const int> s_values,
                                    const ValidityOptions& opts) {
  ValidityReport rep;
  check_family(rep, P.p(), P.degree(), P.wild_vertices(), s_values,
               [&](std::int64_t i, int s) { return ell_P(ctx, P, i, s); }, opts);
  return rep;
}

ValidityReport check_fine_conditions(const BinomialContext& ctx, const FinePolygon& Pstar,
                                     std::span<const int> s_values, const ValidityOptions& opts) {
  ValidityReport rep;
  check_tame_points(rep, ctx, Pstar);
  check_family(rep, Pstar.p(), Pstar.degree(), Pstar.wild_points(), s_values,
               [&](std::int64_t i, int s) { return ell_fine(ctx, Pstar, i, s); }, opts);
  return rep;
}

ValidityReport is_valid_ram(const BinomialContext& ctx, const RamPolygon& P, const ValidityOptions& opts) {
  return ram_report(ctx, P, false, opts);
}

ValidityReport is_weakly_valid_ram(const BinomialContext& ctx, const RamPolygon& P, const ValidityOptions& opts) {
  return ram_report(ctx, P, true, opts);
}

ValidityReport is_valid_fine(const BinomialContext& ctx, const FinePolygon& Pstar, const ValidityOptions& opts) {
  return fine_report(ctx, Pstar, false, opts);
}

ValidityReport is_weakly_valid_fine(const BinomialContext& ctx, const FinePolygon& Pstar,
                                    const ValidityOptions& opts) {
  return fine_report(ctx, Pstar, true, opts);
}

std::vector<PowerEquation> residue_equations(const BinomialContext& ctx, const FinePolygon& Pstar,
                                             const std::vector<std::optional<FqElement>>& gamma) {
  const auto& field = ctx.base();
  const std::int64_t n = Pstar.degree();
  const auto pts = Pstar.wild_points();
  require(gamma.size() == pts.size(), "one residue slot per wild point is required");

  std::vector<PowerEquation> eqs;
  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (!gamma[t] || pts[t].b != n) continue;
    // gamma_t = beta(n, p^s_t) x^{-a_t-1}
    eqs.push_back({-(pts[t].a + 1), field.div(*gamma[t], ctx.beta(n, pts[t].x))});
  }
  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (!gamma[t] || pts[t].b >= n || pts[t].x > pts[t].b) continue;
    for (std::size_t r = t + 1; r < pts.size(); ++r) {
      if (!gamma[r] || pts[r].b != pts[t].b || pts[r].x > pts[r].b) continue;
      // gamma_t / gamma_r = beta(b, p^s_t) / beta(b, p^s_r) x^{a_r - a_t}
      const FqElement ratio = field.div(*gamma[t], *gamma[r]);
      const FqElement betas = field.div(ctx.beta(pts[r].b, pts[r].x), ctx.beta(pts[t].b, pts[t].x));
      eqs.push_back({pts[r].a - pts[t].a, field.mul(ratio, betas)});
    }
  }
  return eqs;
}

ValidityReport check_tame_residues(const BinomialContext& ctx, const FinePolygonWithResidues& Pres) {
  ValidityReport rep;
  const auto& pts = Pres.polygon.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!Pres.polygon.is_tame(pts[i])) continue;
    if (Pres.residues[i] != forced_tame_residue(ctx, Pres.polygon.degree(), pts[i].x))
      rep.add(Condition::ResidueForced, "tame residue at j = " + std::to_string(pts[i].x));
  }
  return rep;
}

std::vector<FqElement> admissible_phi0(const BinomialContext& ctx, const FinePolygonWithResidues& Pres) {
  if (const auto rep = check_tame_residues(ctx, Pres); !rep.ok)
    fail(ErrorCode::ResidueMismatch, rep.violations.front().detail + " must equal binomial(n, j) mod p");

  const auto& field = ctx.base();
  std::vector<std::optional<FqElement>> gamma;
  for (const auto& t : Pres.polygon.wild_points()) gamma.emplace_back(Pres.residue_at(t.x));
  const auto xs = solve_power_system(field, residue_equations(ctx, Pres.polygon, gamma));

  std::vector<FqElement> out;
  for (FqElement x : xs) out.push_back(field.neg(x));
  std::sort(out.begin(), out.end());
  return out;
}

ValidityReport is_valid_res(const BinomialContext& ctx, const FinePolygonWithResidues& Pres) {
  ValidityReport rep = is_valid_fine(ctx, Pres.polygon);
  const auto tame = check_tame_residues(ctx, Pres);
  for (const auto& v : tame.violations) rep.add(v.condition, v.detail);
  if (rep.ok && admissible_phi0(ctx, Pres).empty()) rep.add(Condition::ResidueSystem, "no admissible phi_0");
  return rep;
}

ValidityReport is_valid_with_unif(const BinomialContext& ctx, const InvariantWithUnif& inv) {
  ValidityReport rep = is_valid_fine(ctx, inv.residues.polygon);
  const auto tame = check_tame_residues(ctx, inv.residues);
  for (const auto& v : tame.violations) rep.add(v.condition, v.detail);
  if (!rep.ok) return rep;
  const auto adm = admissible_phi0(ctx, inv.residues);
  if (!std::binary_search(adm.begin(), adm.end(), inv.phi0))
    rep.add(Condition::ResidueSystem, "phi_0 = " + ctx.base().to_string(inv.phi0) + " is not admissible");
  return rep;
}

namespace {

std::vector<PowerEquation> delta_equations(const BinomialContext& ctx, const FinePolygonWithResidues& A,
                                           const FinePolygonWithResidues& B) {
  const auto& field = ctx.base();
  std::vector<PowerEquation> eqs;
  const auto& pts = A.polygon.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    eqs.push_back({pts[i].J, field.div(A.residues[i], B.residues[i])});
  return eqs;
}

}  // namespace

bool equivalent_res(const BinomialContext& ctx, const FinePolygonWithResidues& A, const FinePolygonWithResidues& B) {
  if (!(A.polygon == B.polygon)) return false;
  return !solve_power_system(ctx.base(), delta_equations(ctx, A, B)).empty();
}

bool equivalent_with_unif(const BinomialContext& ctx, const InvariantWithUnif& A, const InvariantWithUnif& B) {
  if (!(A.residues.polygon == B.residues.polygon)) return false;
  auto eqs = delta_equations(ctx, A.residues, B.residues);
  eqs.push_back({A.residues.polygon.degree(), ctx.base().div(B.phi0, A.phi0)});
  return !solve_power_system(ctx.base(), eqs).empty();
}

std::int64_t ordinate_gcd(const FinePolygon& Pstar) {
  std::int64_t g = 0;
  for (const auto& pt : Pstar.points()) g = std::gcd(g, pt.J);
  return g;
}

}  // namespace ramify
