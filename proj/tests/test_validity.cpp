#include <functional>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ramify/enumeration.hpp"
#include "ramify/error.hpp"
#include "ramify/validity.hpp"

using namespace ramify;

namespace {

bool left_turn(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.J - o.J) - (a.J - o.J) * (b.x - o.x) > 0;
}

/// Every convex chain that could be a ramification polygon of degree n with
/// J_0 <= n v_p(n) + 2, built without the library's enumerator.
void candidate_polygons(std::int64_t p, std::int64_t n, const std::function<void(const RamPolygon&)>& fn) {
  std::int64_t wild_end = 1;
  int s_u = 0;
  while (n % (wild_end * p) == 0) {
    wild_end *= p;
    ++s_u;
  }
  std::vector<std::int64_t> xs;
  for (std::int64_t x = p; x < wild_end; x *= p) xs.push_back(x);
  std::vector<Point> tail{{wild_end, 0}};
  if (n != wild_end) tail.push_back({n, 0});

  std::vector<Point> chain;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == xs.size()) {
      auto verts = chain;
      if (verts.back().x == wild_end) {
        if (n != wild_end) verts.push_back({n, 0});
      } else {
        verts.insert(verts.end(), tail.begin(), tail.end());
      }
      for (std::size_t i = 2; i < verts.size(); ++i)
        if (!left_turn(verts[i - 2], verts[i - 1], verts[i])) return;
      fn(RamPolygon::make(p, n, verts));
      return;
    }
    rec(idx + 1);
    for (std::int64_t J = 1; J < chain.back().J; ++J) {
      const Point next{xs[idx], J};
      if (chain.size() >= 2 && !left_turn(chain[chain.size() - 2], chain.back(), next)) continue;
      chain.push_back(next);
      rec(idx + 1);
      chain.pop_back();
    }
  };
  if (wild_end == 1) {
    chain = {{1, 0}};
    rec(0);
    return;
  }
  for (std::int64_t J0 = 1; J0 <= n * s_u + 2; ++J0) {
    chain = {{1, J0}};
    rec(0);
  }
}

/// Fine polygons over P: hull vertices, any subset of the other on-hull
/// p-power points, and the correct tame points.
std::vector<FinePolygon> candidate_fine(const BinomialContext& ctx, const RamPolygon& P) {
  std::vector<Point> base, optional;
  for (std::int64_t x = 1; x < P.wild_end(); x *= P.p()) {
    if (auto J = P.vertex_at(x))
      base.push_back({x, *J});
    else if (P.at(x).denominator() == 1)
      optional.push_back({x, P.at(x).numerator()});
  }
  for (std::int64_t j = P.wild_end(); j <= P.degree(); ++j)
    if (ctx.B(P.degree(), j) == 0) base.push_back({j, 0});
  std::vector<FinePolygon> out;
  for (std::uint32_t mask = 0; mask < (1u << optional.size()); ++mask) {
    auto pts = base;
    for (std::size_t k = 0; k < optional.size(); ++k)
      if (mask & (1u << k)) pts.push_back(optional[k]);
    out.push_back(FinePolygon::make(P.p(), P.degree(), pts));
  }
  return out;
}

/// Removable points: wild, strictly between abscissa 1 and p^{s_u}.
std::vector<FinePolygon> with_points_removed(const FinePolygon& F) {
  std::vector<Point> keep, removable;
  for (const auto& pt : F.points())
    (pt.x > 1 && pt.x < F.wild_end() ? removable : keep).push_back(pt);
  std::vector<FinePolygon> out;
  for (std::uint32_t mask = 1; mask < (1u << removable.size()); ++mask) {
    auto pts = keep;
    for (std::size_t k = 0; k < removable.size(); ++k)
      if (!(mask & (1u << k))) pts.push_back(removable[k]);
    out.push_back(FinePolygon::make(F.p(), F.degree(), pts));
  }
  return out;
}

/// phi_0 for which the residues come from a consistent choice of leading
/// digits phi_b, with phi_n = 1; scanned directly.
std::vector<FqElement> brute_admissible(const BinomialContext& ctx, const FinePolygonWithResidues& Pres) {
  const auto& F = ctx.base();
  const std::int64_t n = Pres.polygon.degree();
  std::vector<FqElement> out;
  for (auto phi0 : F.units()) {
    const auto x = F.neg(phi0);
    std::map<std::int64_t, FqElement> phi{{n, F.one()}};
    bool ok = true;
    for (const auto& w : Pres.polygon.wild_points()) {
      if (w.x > w.b) continue;
      const auto implied = F.mul(F.div(Pres.residue_at(w.x), ctx.beta(w.b, w.x)), F.pow(x, w.a + 1));
      auto [it, fresh] = phi.emplace(w.b, implied);
      ok = ok && (fresh || it->second == implied);
    }
    if (ok) out.push_back(phi0);
  }
  return out;
}

FinePolygonWithResidues random_residues(const BinomialContext& ctx, const FinePolygon& F) {
  const auto units = ctx.base().units();
  std::vector<FqElement> rho;
  for (const auto& pt : F.points())
    rho.push_back(F.is_tame(pt) ? forced_tame_residue(ctx, F.degree(), pt.x)
                                : units[static_cast<std::size_t>(
                                      oracle::uniform(0, static_cast<std::int64_t>(units.size()) - 1))]);
  return FinePolygonWithResidues::make(ctx, F, rho);
}

}  // namespace

TEST_SUITE("validity") {
  TEST_CASE("ramification polygon examples over Q_2") {
    const BinomialContext ctx(BaseField::rationals(2));
    CHECK(is_valid_ram(ctx, RamPolygon::make(2, 2, {{1, 2}, {2, 0}})).ok);
    CHECK(is_valid_ram(ctx, RamPolygon::make(2, 2, {{1, 1}, {2, 0}})).ok);
    const auto bad = RamPolygon::make(2, 2, {{1, 3}, {2, 0}});
    CHECK_FALSE(is_valid_ram(ctx, bad).ok);
    const auto weak = is_weakly_valid_ram(ctx, bad);
    CHECK_FALSE(weak.ok);
    CHECK(weak.has(Condition::Ore2));
  }

  TEST_CASE("fine polygon examples") {
    const BinomialContext ctx(BaseField::rationals(2));
    CHECK(is_valid_fine(ctx, FinePolygon::make(2, 8, {{1, 7}, {2, 6}, {4, 4}, {8, 0}})).ok);
    CHECK(is_valid_fine(ctx, FinePolygon::make(2, 2, {{1, 2}, {2, 0}})).ok);

    // n = 6: tame points must be exactly 2, 4, 6
    const std::vector<std::int64_t> optional_tame{3, 4, 5};
    int valid = 0;
    for (std::int64_t J0 = 1; J0 <= 6; ++J0)
      for (std::uint32_t mask = 0; mask < 8; ++mask) {
        std::vector<Point> pts{{1, J0}, {2, 0}, {6, 0}};
        std::set<std::int64_t> tame{2, 6};
        for (std::size_t k = 0; k < 3; ++k)
          if (mask & (1u << k)) {
            pts.push_back({optional_tame[k], 0});
            tame.insert(optional_tame[k]);
          }
        const auto rep = is_valid_fine(ctx, FinePolygon::make(2, 6, pts));
        if (tame == std::set<std::int64_t>{2, 4, 6}) {
          CHECK_FALSE(rep.has(Condition::Tame));
          valid += rep.ok;
        } else {
          CHECK(rep.has(Condition::Tame));
        }
      }
    CHECK(valid > 0);
  }

  TEST_CASE("consistency failure for two points sharing b") {
    const BinomialContext ctx(BaseField::rationals(2));
    // J = 15 and J = 7 both give b = 7, with a = 1 and a = 0
    const auto F = FinePolygon::make(2, 8, {{1, 15}, {2, 7}, {8, 0}});
    CHECK(ell_fine(ctx, F, 7, 0) != ell_fine(ctx, F, 7, 1));
    const auto rep = is_weakly_valid_fine(ctx, F);
    CHECK(rep.has(Condition::Consistency));
  }

  TEST_CASE("admissible uniformizer residues") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto P2 = FinePolygonWithResidues::make(q2, FinePolygon::make(2, 2, {{1, 2}, {2, 0}}),
                                                  {q2.base().one(), q2.base().one()});
    CHECK(admissible_phi0(q2, P2) == std::vector<FqElement>{q2.base().one()});
    CHECK(is_valid_with_unif(q2, {P2, q2.base().one()}).ok);

    const BinomialContext q3(BaseField::rationals(3));
    const auto& F = q3.base();
    const auto P3 = FinePolygonWithResidues::make(q3, FinePolygon::make(3, 3, {{1, 1}, {3, 0}}), {F.one(), F.one()});
    CHECK(admissible_phi0(q3, P3) == F.units());

    // b_0 = n pins -phi_0 = 1 / rho_0
    const auto pinned =
        FinePolygonWithResidues::make(q3, FinePolygon::make(3, 3, {{1, 3}, {3, 0}}), {F.one(), F.one()});
    REQUIRE(is_valid_fine(q3, pinned.polygon).ok);
    CHECK(admissible_phi0(q3, pinned) == std::vector<FqElement>{F.from_int(2)});
    CHECK(is_valid_with_unif(q3, {pinned, F.from_int(2)}).ok);
    CHECK(is_valid_with_unif(q3, {pinned, F.one()}).has(Condition::ResidueSystem));
  }

  TEST_CASE("insoluble residue systems leave no admissible phi_0") {
    // Q_3, n = 9, J_0 = 18 pins (-phi_0)^{-2} = rho_0, which has no solution for rho_0 = 2
    const BinomialContext ctx(BaseField::rationals(3));
    const auto& F = ctx.base();
    int empty = 0;
    for (const auto& P : enumerate_ram_polygons(ctx, 9).items)
      for (const auto& fine : enumerate_fine_polygons(ctx, P).items) {
        std::vector<std::size_t> free;
        for (std::size_t k = 0; k < fine.points().size(); ++k)
          if (!fine.is_tame(fine.points()[k])) free.push_back(k);
        for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
          std::vector<FqElement> res;
          for (const auto& pt : fine.points()) res.push_back(forced_tame_residue(ctx, 9, pt.x));
          for (std::size_t k = 0; k < free.size(); ++k) res[free[k]] = (mask & (1u << k)) ? F.from_int(2) : F.one();
          const auto Pres = FinePolygonWithResidues::make(ctx, fine, res);
          const auto adm = admissible_phi0(ctx, Pres);
          CHECK(adm == brute_admissible(ctx, Pres));
          if (adm.empty()) {
            ++empty;
            CHECK(is_valid_res(ctx, Pres).has(Condition::ResidueSystem));
          }
        }
      }
    CHECK(empty > 0);
    const auto top = FinePolygonWithResidues::make(ctx, FinePolygon::make(3, 9, {{1, 18}, {9, 0}}), {F.from_int(2), F.one()});
    CHECK(admissible_phi0(ctx, top).empty());
  }

  TEST_CASE("equivalence examples") {
    const BinomialContext q3(BaseField::rationals(3));
    const auto& F = q3.base();
    const auto fine = FinePolygon::make(3, 3, {{1, 1}, {3, 0}});
    const auto A = FinePolygonWithResidues::make(q3, fine, {F.one(), F.one()});
    const auto B = FinePolygonWithResidues::make(q3, fine, {F.from_int(2), F.one()});
    CHECK(equivalent_res(q3, A, A));
    CHECK(equivalent_res(q3, A, B));
    CHECK_FALSE(equivalent_with_unif(q3, {A, F.one()}, {A, F.from_int(2)}));
    CHECK(equivalent_with_unif(q3, {A, F.one()}, {A, F.one()}));
    const auto other = FinePolygonWithResidues::make(q3, FinePolygon::make(3, 3, {{1, 2}, {3, 0}}), {F.one(), F.one()});
    CHECK_FALSE(equivalent_res(q3, A, other));
  }

  TEST_CASE("property: candidate polygons, validity implies weak validity, and the valid set is the enumerated set") {
    std::vector<std::pair<std::int64_t, std::int64_t>> cases{{3, 3}, {3, 6}, {3, 9}};
    for (std::int64_t n = 2; n <= 16; ++n) cases.emplace_back(2, n);
    for (auto [p, n] : cases) {
      CAPTURE(p);
      CAPTURE(n);
      const BinomialContext ctx(BaseField::rationals(p));
      std::set<RamPolygon> valid;
      std::uint64_t candidates = 0;
      candidate_polygons(p, n, [&](const RamPolygon& P) {
        ++candidates;
        if (!is_valid_ram(ctx, P).ok) return;
        CHECK(is_weakly_valid_ram(ctx, P).ok);
        valid.insert(P);
        if (n <= 12)
          for (const auto& F : candidate_fine(ctx, P))
            if (is_valid_fine(ctx, F).ok) CHECK(is_weakly_valid_fine(ctx, F).ok);
      });
      const auto listed = enumerate_ram_polygons(ctx, n).items;
      CHECK(valid == std::set<RamPolygon>(listed.begin(), listed.end()));
      CHECK(candidates >= valid.size());
    }
  }

  TEST_CASE("property: weak validity survives removing vertices and points") {
    for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 4}, {2, 6}, {2, 8}, {2, 10}, {2, 12}, {2, 14}, {2, 16},
                        {3, 9}, {3, 18}}) {
      const BinomialContext ctx(BaseField::rationals(p));
      for (const auto& P : enumerate_ram_polygons(ctx, n).items) {
        std::vector<Point> keep, removable;
        for (const auto& v : P.vertices()) (v.x > 1 && v.x < P.wild_end() ? removable : keep).push_back(v);
        for (std::uint32_t mask = 1; mask < (1u << removable.size()); ++mask) {
          auto verts = keep;
          for (std::size_t k = 0; k < removable.size(); ++k)
            if (!(mask & (1u << k))) verts.push_back(removable[k]);
          std::sort(verts.begin(), verts.end());
          CHECK(is_weakly_valid_ram(ctx, RamPolygon::make(p, n, verts)).ok);
        }
        for (const auto& F : enumerate_fine_polygons(ctx, P).items)
          for (const auto& G : with_points_removed(F)) CHECK(is_weakly_valid_fine(ctx, G).ok);
      }
    }
  }

  TEST_CASE("property: admissible phi_0 agrees with a direct scan for q <= 9") {
    struct Case {
      std::int64_t p;
      int f;
      const char* gamma;
      std::vector<std::int64_t> degrees;
    };
    const std::vector<Case> cases{{2, 1, "1", {2, 4, 8}}, {2, 2, "1", {2, 4, 6}}, {2, 2, "g", {2, 4}},
                                  {2, 3, "g", {2, 4}},    {3, 1, "1", {3, 6, 9}}, {3, 2, "g", {3, 6}},
                                  {5, 1, "1", {5}},       {5, 1, "2", {5, 10}},   {7, 1, "3", {7}}};
    int checked = 0;
    for (const auto& c : cases) {
      const BinomialContext ctx(BaseField::make(c.p, c.f, 1, c.gamma));
      for (auto n : c.degrees)
        for (const auto& P : enumerate_ram_polygons(ctx, n).items)
          for (const auto& fine : enumerate_fine_polygons(ctx, P).items)
            for (int rep = 0; rep < 8; ++rep, ++checked) {
              const auto Pres = random_residues(ctx, fine);
              CHECK(admissible_phi0(ctx, Pres) == brute_admissible(ctx, Pres));
            }
    }
    CHECK(checked >= 1000);
  }

  TEST_CASE("property: equivalence relations match a delta scan and are equivalence relations") {
    int checked = 0;
    for (auto [p, f, n] : {std::tuple<std::int64_t, int, std::int64_t>{2, 2, 4}, {3, 1, 3}, {3, 2, 3}, {5, 1, 5}, {7, 1, 7}}) {
      const BinomialContext ctx(BaseField::make(p, f, 1));
      const auto& F = ctx.base();
      const auto units = F.units();
      for (const auto& P : enumerate_ram_polygons(ctx, n).items)
        for (const auto& fine : enumerate_fine_polygons(ctx, P).items) {
          std::vector<InvariantWithUnif> pool;
          for (int k = 0; k < 8; ++k)
            pool.push_back({random_residues(ctx, fine),
                            units[static_cast<std::size_t>(oracle::uniform(0, static_cast<std::int64_t>(units.size()) - 1))]});
          for (const auto& a : pool) {
            CHECK(equivalent_res(ctx, a.residues, a.residues));
            CHECK(equivalent_with_unif(ctx, a, a));
            for (const auto& b : pool) {
              ++checked;
              const bool res = equivalent_res(ctx, a.residues, b.residues);
              const bool unif = equivalent_with_unif(ctx, a, b);
              CHECK(res == oracle::delta_equivalent(F, a, b, false));
              CHECK(unif == oracle::delta_equivalent(F, a, b, true));
              CHECK(res == equivalent_res(ctx, b.residues, a.residues));
              CHECK(unif == equivalent_with_unif(ctx, b, a));
              for (const auto& c : pool) {
                if (res && equivalent_res(ctx, b.residues, c.residues)) CHECK(equivalent_res(ctx, a.residues, c.residues));
                if (unif && equivalent_with_unif(ctx, b, c)) CHECK(equivalent_with_unif(ctx, a, c));
              }
            }
          }
        }
    }
    CHECK(checked >= 1000);
  }
}
