#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ramify/analyzer.hpp"
#include "ramify/enumeration.hpp"
#include "ramify/error.hpp"
#include "ramify/templates.hpp"

using namespace ramify;

namespace {

std::vector<FqElement> ints(const BaseField& F, std::initializer_list<int> xs) {
  std::vector<FqElement> out;
  for (int x : xs) out.push_back(F.from_int(x));
  return out;
}

/// Integer coefficients f_0 .. f_{n-1} of a digit table over Q_p.
std::vector<std::int64_t> integer_coefficients(const EisensteinData& f) {
  const auto p = f.base().p();
  std::vector<std::int64_t> out(static_cast<std::size_t>(f.degree()), 0);
  for (const auto& d : f.nonzero_digits()) {
    std::int64_t pk = 1;
    for (std::int64_t t = 0; t < d.k; ++t) pk *= p;
    out[static_cast<std::size_t>(d.i)] += f.base().to_int(d.value) * pk;
  }
  return out;
}

std::vector<std::vector<std::int64_t>> expansion(const Template& T) {
  std::vector<std::vector<std::int64_t>> out;
  T.expand([&](const EisensteinData& f) { out.push_back(integer_coefficients(f)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<InvariantWithUnif> unif_invariants(const BinomialContext& ctx, std::int64_t n) {
  std::vector<InvariantWithUnif> out;
  for (auto& inv : enumerate_invariants(ctx, n, Level::Unif).items) out.push_back(std::get<InvariantWithUnif>(inv));
  return out;
}

InvariantWithUnif q2_quadratic(const BinomialContext& ctx, std::int64_t J0) {
  const auto& F = ctx.base();
  return {FinePolygonWithResidues::make(ctx, FinePolygon::make(2, 2, {{1, J0}, {2, 0}}), {F.one(), F.one()}), F.one()};
}

Template reduced_for(const BinomialContext& ctx, const InvariantWithUnif& inv) {
  const auto T = truncate_krasner(template_for_invariant(ctx, inv), inv.residues.polygon.points().front().J);
  return reduce_template(ctx, T, inv);
}

}  // namespace

TEST_SUITE("templates") {
  TEST_CASE("Eisenstein template") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto T = eisenstein_template(q2, 2);
    CHECK(T.at(0, 1) == ints(q2.base(), {1}));
    CHECK(T.at(1, 0) == ints(q2.base(), {0}));
    CHECK(T.at(1, 1) == q2.base().elements());
    for (std::int64_t i = 0; i < 5; ++i) CHECK(eisenstein_template(q2, 5).at(i, 0) == ints(q2.base(), {0}));
    const BinomialContext q3(BaseField::rationals(3));
    CHECK(eisenstein_template(q3, 3).at(0, 1) == ints(q3.base(), {1, 2}));
  }

  TEST_CASE("polygon and fine templates") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto& F = q2.base();
    const auto T2 = template_for_polygon(q2, RamPolygon::make(2, 2, {{1, 2}, {2, 0}}));
    CHECK(T2.at(1, 1) == ints(F, {0}));
    CHECK(T2.at(0, 1) == ints(F, {1}));
    CHECK(template_for_polygon(q2, RamPolygon::make(2, 2, {{1, 1}, {2, 0}})).at(1, 1) == ints(F, {1}));
    CHECK(template_for_polygon(q2, RamPolygon::make(2, 3, {{1, 0}, {3, 0}})) == eisenstein_template(q2, 3));
    CHECK(template_for_fine(q2, FinePolygon::make(2, 2, {{1, 2}, {2, 0}})) == T2);

    const auto T8 = template_for_fine(q2, FinePolygon::make(2, 8, {{1, 7}, {2, 6}, {4, 4}, {8, 0}}));
    for (std::int64_t i : {7, 6, 4}) CHECK(T8.at(i, 1) == ints(F, {1}));
    CHECK(T8.at(5, 1) == ints(F, {0}));
    const auto degree8 = EisensteinData::from_digits(F, 8, {{0, 1, F.one()}, {4, 1, F.one()}, {6, 1, F.one()}, {7, 1, F.one()}});
    CHECK(T8.admits(degree8, 1));

    CHECK_THROWS_AS(template_for_polygon(q2, RamPolygon::make(2, 2, {{1, 3}, {2, 0}})), Error);
  }

  TEST_CASE("invariant templates") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto& F = q2.base();
    const auto T1 = template_for_invariant(q2, q2_quadratic(q2, 1));
    CHECK(T1.at(0, 1) == ints(F, {1}));
    CHECK(T1.at(1, 1) == ints(F, {1}));
    const auto T2 = template_for_invariant(q2, q2_quadratic(q2, 2));
    CHECK(T2.at(0, 1) == ints(F, {1}));
    CHECK(T2.at(1, 1) == ints(F, {0}));

    const BinomialContext q3(BaseField::rationals(3));
    const auto& G = q3.base();
    const InvariantWithUnif inv{
        FinePolygonWithResidues::make(q3, FinePolygon::make(3, 3, {{1, 1}, {3, 0}}), {G.one(), G.one()}), G.from_int(2)};
    CHECK(template_for_invariant(q3, inv).at(0, 1) == ints(G, {2}));
  }

  TEST_CASE("Krasner cutoff") {
    CHECK(krasner_cutoff(2, 2) == 4);
    CHECK(krasner_cutoff(1, 2) == 3);
    for (std::int64_t n = 1; n < 10; ++n) CHECK(krasner_cutoff(0, n) == 2);
    CHECK(krasner_cutoff(7, 8) == 3);
    CHECK(krasner_cutoff(3, 8) == 2);
    CHECK(krasner_cutoff(4, 8) == 3);
    const BinomialContext q2(BaseField::rationals(2));
    auto T = eisenstein_template(q2, 2);
    T.set(1, 5, ints(q2.base(), {1}));
    T = truncate_krasner(T, 2);
    CHECK(T.cutoff() == 4);
    CHECK(T.at(1, 5) == ints(q2.base(), {0}));
    CHECK(T.at(1, 3) == q2.base().elements());
    CHECK(T.at(1, 4) == ints(q2.base(), {0}));
  }

  TEST_CASE("cardinality examples") {
    const BinomialContext q2(BaseField::rationals(2));
    auto T = eisenstein_template(q2, 2);
    CHECK_THROWS_AS(T.cardinality(), Error);
    T.set_cutoff(3);
    CHECK(T.cardinality() == 8);
    CHECK(expansion(T).size() == 8);
    auto empty = T;
    empty.set(1, 2, {});
    CHECK(empty.cardinality() == 0);
    CHECK(expansion(empty).empty());
    CHECK(reduced_for(q2, q2_quadratic(q2, 2)).cardinality() == 4);
  }

  TEST_CASE("S_m examples") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto& F = q2.base();
    const auto inv = q2_quadratic(q2, 2);
    const auto s1 = compute_Sm(q2, inv.residues, 1);
    CHECK(s1.C == 2);
    CHECK(s1.c == 1);
    CHECK(s1.d == 0);
    CHECK(s1.terms == std::vector<std::pair<std::int64_t, FqElement>>{{2, F.one()}});
    const auto s2 = compute_Sm(q2, inv.residues, 2);
    CHECK(s2.C == 4);
    CHECK(s2.c == 2);
    CHECK(s2.d == 0);
    CHECK(s2.terms.size() == 2);
    CHECK(s2.map.apply(F, F.one()) == F.zero());

    // past the steepest slope only j = 1 attains the minimum
    for (const auto& u : unif_invariants(q2, 8)) {
      const auto J0 = u.residues.polygon.points().front().J;
      for (std::int64_t m = J0 + 1; m < J0 + 4; ++m) {
        const auto s = compute_Sm(q2, u.residues, m);
        CHECK(s.C == J0 + m);
        REQUIRE(s.terms.size() == 1);
        CHECK(s.terms[0].first == 1);
        CHECK(s.terms[0].second == u.residues.residues.front());
      }
    }
  }

  TEST_CASE("reduction examples for Q_2 quadratics") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto& F = q2.base();
    const auto R2 = reduced_for(q2, q2_quadratic(q2, 2));
    CHECK(R2.at(0, 2) == ints(F, {0}));
    CHECK(R2.at(0, 3) == F.elements());
    CHECK(R2.at(1, 3) == ints(F, {0}));
    CHECK(expansion(R2) == std::vector<std::vector<std::int64_t>>{{2, 0}, {2, 4}, {10, 0}, {10, 4}});

    const auto R1 = reduced_for(q2, q2_quadratic(q2, 1));
    CHECK(R1.at(1, 2) == ints(F, {0}));
    CHECK(R1.at(0, 2) == F.elements());
    CHECK(expansion(R1) == std::vector<std::vector<std::int64_t>>{{2, 2}, {6, 2}});
  }

  TEST_CASE("property: C_m increases strictly and reduction slots are distinct") {
    for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 3}, {2, 4}, {2, 6}, {2, 8}, {3, 3}, {3, 6}, {3, 9}}) {
      CAPTURE(n);
      const BinomialContext ctx(BaseField::rationals(p));
      for (const auto& inv : unif_invariants(ctx, n)) {
        const auto J0 = inv.residues.polygon.points().front().J;
        const auto cutoff = krasner_cutoff(J0, n);
        std::set<std::pair<std::int64_t, std::int64_t>> slots;
        std::int64_t last = -1;
        for (std::int64_t m = 1;; ++m) {
          const auto s = compute_Sm(ctx, inv.residues, m);
          CHECK(s.C > last);
          last = s.C;
          CHECK(s.C == s.c * n + s.d);
          CHECK(slots.insert({s.d, 1 + s.c}).second);
          if (1 + s.c >= cutoff + 1) break;
        }
        CHECK_NOTHROW(reduced_for(ctx, inv));
      }
    }
  }

  TEST_CASE("property: S_m is additive and equals the sum of its terms") {
    int checked = 0;
    for (auto [p, f, n] : {std::tuple<std::int64_t, int, std::int64_t>{2, 2, 2}, {2, 2, 4}, {3, 2, 3}, {2, 3, 2}, {5, 1, 5}}) {
      const BinomialContext ctx(BaseField::make(p, f, 1, "g"));
      const auto& F = ctx.base();
      for (const auto& inv : unif_invariants(ctx, n))
        for (std::int64_t m = 1; m <= 12; ++m) {
          const auto s = compute_Sm(ctx, inv.residues, m);
          for (auto u : F.elements()) {
            FqElement direct = F.zero();
            for (const auto& [j, rho] : s.terms) direct = F.add(direct, F.mul(rho, F.pow(u, j)));
            CHECK(s.map.apply(F, u) == direct);
            for (auto v : F.elements()) {
              ++checked;
              CHECK(s.map.apply(F, F.add(u, v)) == F.add(s.map.apply(F, u), s.map.apply(F, v)));
            }
          }
        }
    }
    CHECK(checked >= 1000);
  }

  TEST_CASE("property: cardinality equals expansion length and reduction divides it") {
    for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 3}, {2, 4}, {3, 3}, {5, 5}}) {
      const BinomialContext ctx(BaseField::rationals(p));
      for (const auto& inv : unif_invariants(ctx, n)) {
        const auto J0 = inv.residues.polygon.points().front().J;
        const auto full = truncate_krasner(template_for_invariant(ctx, inv), J0);
        const auto fine = truncate_krasner(template_for_fine(ctx, inv.residues.polygon), J0);
        const auto reduced = reduce_template(ctx, full, inv);
        for (const auto* T : {&full, &fine, &reduced}) {
          std::uint64_t count = 0;
          T->expand([&](const EisensteinData&) { ++count; });
          CHECK(count == T->cardinality());
        }
        CHECK(full.cardinality() % reduced.cardinality() == 0);
      }
    }
  }

  TEST_CASE("property: template expansions analyze back to their invariant") {
    for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 4}, {3, 3}}) {
      CAPTURE(n);
      const BinomialContext ctx(BaseField::rationals(p));
      std::uint64_t polys = 0;
      for (const auto& inv : unif_invariants(ctx, n)) {
        const auto& Pstar = inv.residues.polygon;
        const auto J0 = Pstar.points().front().J;
        truncate_krasner(template_for_fine(ctx, Pstar), J0).expand([&](const EisensteinData& f) {
          ++polys;
          CHECK(fine_of(ctx, f) == Pstar);
        });
        truncate_krasner(template_for_invariant(ctx, inv), J0).expand([&](const EisensteinData& f) {
          ++polys;
          CHECK(unif_of(ctx, f) == inv);
        });
        reduced_for(ctx, inv).expand([&](const EisensteinData& f) {
          ++polys;
          CHECK(equivalent_with_unif(ctx, unif_of(ctx, f), inv));
        });
      }
      CHECK(polys > 0);
    }
  }
}
