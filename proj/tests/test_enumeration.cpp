#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ramify/enumeration.hpp"

using namespace ramify;

namespace {

std::vector<oracle::Pt> to_pts(const std::vector<Point>& pts) {
  std::vector<oracle::Pt> out;
  for (const auto& p : pts) out.push_back({p.x, p.J});
  return out;
}

std::vector<FinePolygon> all_fine(const BinomialContext& ctx, std::int64_t n, const EnumOptions& opts = {}) {
  std::vector<FinePolygon> out;
  for (const auto& P : enumerate_ram_polygons(ctx, n, opts).items)
    for (auto& F : enumerate_fine_polygons(ctx, P, opts).items) out.push_back(std::move(F));
  return out;
}

/// Every valid residue decoration of Pstar, by cartesian product over F_q^x.
std::vector<FinePolygonWithResidues> all_decorations(const BinomialContext& ctx, const FinePolygon& Pstar) {
  const auto units = ctx.base().units();
  std::vector<std::size_t> free;
  std::vector<FqElement> res;
  for (std::size_t k = 0; k < Pstar.points().size(); ++k) {
    const auto& pt = Pstar.points()[k];
    res.push_back(forced_tame_residue(ctx, Pstar.degree(), pt.x));
    if (!Pstar.is_tame(pt)) free.push_back(k);
  }
  std::vector<FinePolygonWithResidues> out;
  std::vector<std::size_t> idx(free.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < free.size(); ++k) res[free[k]] = units[idx[k]];
    auto Pres = FinePolygonWithResidues::make(ctx, Pstar, res);
    if (is_valid_res(ctx, Pres).ok) out.push_back(std::move(Pres));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == units.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

/// Number of classes of `items` under `same`, by greedy partition.
template <class T, class Eq>
std::size_t class_count(const std::vector<T>& items, Eq&& same) {
  std::vector<T> reps;
  for (const auto& x : items)
    if (std::none_of(reps.begin(), reps.end(), [&](const T& r) { return same(r, x); })) reps.push_back(x);
  return reps.size();
}

}  // namespace

TEST_SUITE("enumeration") {
  TEST_CASE("ramification polygon examples") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto two = enumerate_ram_polygons(q2, 2).items;
    REQUIRE(two.size() == 2);
    CHECK(two[0].vertices() == std::vector<Point>{{1, 1}, {2, 0}});
    CHECK(two[1].vertices() == std::vector<Point>{{1, 2}, {2, 0}});
    for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 3}, {2, 5}, {2, 9}, {3, 4}, {3, 5}, {5, 12}}) {
      const BinomialContext ctx(BaseField::rationals(p));
      const auto items = enumerate_ram_polygons(ctx, n).items;
      REQUIRE(items.size() == 1);
      CHECK(items[0].vertices() == std::vector<Point>{{1, 0}, {n, 0}});
    }
  }

  TEST_CASE("fine polygon examples") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto one = enumerate_fine_polygons(q2, RamPolygon::make(2, 2, {{1, 2}, {2, 0}})).items;
    REQUIRE(one.size() == 1);
    CHECK(one[0].points() == std::vector<Point>{{1, 2}, {2, 0}});

    const auto eight = enumerate_fine_polygons(q2, RamPolygon::make(2, 8, {{1, 7}, {8, 0}})).items;
    const auto target = FinePolygon::make(2, 8, {{1, 7}, {2, 6}, {4, 4}, {8, 0}});
    CHECK(std::find(eight.begin(), eight.end(), target) != eight.end());

    int seen = 0;
    for (const auto& P : enumerate_ram_polygons(q2, 6).items)
      for (const auto& F : enumerate_fine_polygons(q2, P).items) {
        ++seen;
        std::vector<std::int64_t> tame;
        for (const auto& pt : F.points())
          if (F.is_tame(pt)) tame.push_back(pt.x);
        CHECK(tame == std::vector<std::int64_t>{2, 4, 6});
      }
    CHECK(seen > 0);
  }

  TEST_CASE("residue class examples") {
    const BinomialContext q2(BaseField::rationals(2));
    for (const auto& F : all_fine(q2, 8)) CHECK(enumerate_residue_classes(q2, F).items.size() == 1);
    const BinomialContext q3(BaseField::rationals(3));
    CHECK(enumerate_residue_classes(q3, FinePolygon::make(3, 3, {{1, 1}, {3, 0}})).items.size() == 1);
  }

  TEST_CASE("uniformizer class examples") {
    const BinomialContext q2(BaseField::rationals(2));
    const auto& F2 = q2.base();
    const auto Pres2 = FinePolygonWithResidues::make(q2, FinePolygon::make(2, 2, {{1, 2}, {2, 0}}), {F2.one(), F2.one()});
    const auto u2 = enumerate_unif_classes(q2, Pres2).items;
    REQUIRE(u2.size() == 1);
    CHECK(u2[0].phi0 == F2.one());
    for (const auto& F : all_fine(q2, 8))
      for (const auto& R : enumerate_residue_classes(q2, F).items) CHECK(enumerate_unif_classes(q2, R).items.size() <= 1);

    const BinomialContext q3(BaseField::rationals(3));
    const auto& F3 = q3.base();
    const auto Pres3 = FinePolygonWithResidues::make(q3, FinePolygon::make(3, 3, {{1, 1}, {3, 0}}), {F3.one(), F3.one()});
    const auto u3 = enumerate_unif_classes(q3, Pres3).items;
    REQUIRE(u3.size() == 2);
    CHECK(u3[0].phi0 == F3.one());
    CHECK(u3[1].phi0 == F3.from_int(2));
  }

  TEST_CASE("invariant counts by level") {
    const BinomialContext q2(BaseField::rationals(2));
    CHECK(enumerate_invariants(q2, 2, Level::Unif).items.size() == 2);
    CHECK(enumerate_invariants(q2, 3, Level::Ram).items.size() == 1);
  }

  TEST_CASE("Ore bound range") {
    for (auto [p, e] : {std::pair<std::int64_t, int>{2, 1}, {3, 1}, {2, 2}, {3, 3}}) {
      const BinomialContext ctx(BaseField::make(p, 1, e));
      for (std::int64_t n = 1; n <= 27; ++n) {
        std::vector<std::int64_t> expected;
        const auto top = n * e * oracle::valuation(n, p);
        for (std::int64_t J0 = 0; J0 <= top; ++J0) {
          const std::int64_t b = (J0 % n == 0) ? n : J0 % n;
          if (std::min<std::int64_t>(n * e * oracle::valuation(b, p), top) <= J0) expected.push_back(J0);
        }
        CHECK(ore_bound_range(ctx, n) == expected);
      }
    }
  }

  TEST_CASE("polygon sets agree with the dynamic-programming oracle") {
    for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 4}, {2, 8}, {2, 12}, {2, 16}, {3, 9}, {3, 18}}) {
      CAPTURE(n);
      const BinomialContext ctx(BaseField::rationals(p));
      const auto expected = oracle::polygon_oracle(p, n);
      std::set<std::vector<oracle::Pt>> hulls, fine;
      for (const auto& P : enumerate_ram_polygons(ctx, n).items) {
        hulls.insert(to_pts(P.vertices()));
        for (const auto& F : enumerate_fine_polygons(ctx, P).items) fine.insert(to_pts(F.points()));
      }
      CHECK(hulls == expected.hulls);
      CHECK(fine == expected.fine);
    }
  }

  TEST_CASE("pruning does not change the output") {
    EnumOptions unpruned;
    unpruned.prune = false;
    for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 4}, {2, 6}, {2, 8}, {3, 3}, {3, 6}, {3, 9}}) {
      CAPTURE(n);
      const BinomialContext ctx(BaseField::rationals(p));
      for (auto level : {Level::Ram, Level::Fine, Level::Res, Level::Unif}) {
        const auto a = enumerate_invariants(ctx, n, level);
        const auto b = enumerate_invariants(ctx, n, level, unpruned);
        CHECK(a.items == b.items);
        CHECK(a.stats.branches_visited <= b.stats.branches_visited);
      }
    }
  }

  TEST_CASE("residue and uniformizer classes against full cartesian enumeration") {
    struct Case {
      std::int64_t p;
      int f;
      const char* gamma;
      std::int64_t n;
    };
    for (const auto& c : {Case{3, 1, "1", 3}, Case{3, 1, "1", 6}, Case{3, 1, "1", 9}, Case{2, 2, "g", 4},
                          Case{5, 1, "2", 5}, Case{3, 2, "g", 3}, Case{7, 1, "1", 7}}) {
      CAPTURE(c.p);
      CAPTURE(c.n);
      const BinomialContext ctx(BaseField::make(c.p, c.f, 1, c.gamma));
      const auto& F = ctx.base();
      for (const auto& fine : all_fine(ctx, c.n)) {
        const auto decorations = all_decorations(ctx, fine);
        const auto classes = enumerate_residue_classes(ctx, fine).items;
        auto same_res = [&](const FinePolygonWithResidues& a, const FinePolygonWithResidues& b) {
          return oracle::delta_equivalent(F, {a, F.one()}, {b, F.one()}, false);
        };
        CHECK(classes.size() == class_count(decorations, same_res));
        for (std::size_t i = 0; i < classes.size(); ++i) {
          CHECK(is_valid_res(ctx, classes[i]).ok);
          for (std::size_t j = i + 1; j < classes.size(); ++j) CHECK_FALSE(same_res(classes[i], classes[j]));
        }
        for (const auto& R : classes) {
          std::vector<InvariantWithUnif> pairs;
          for (const auto& D : decorations)
            if (same_res(R, D))
              for (auto phi0 : admissible_phi0(ctx, D)) pairs.push_back({D, phi0});
          const auto unif = enumerate_unif_classes(ctx, R).items;
          auto same_unif = [&](const InvariantWithUnif& a, const InvariantWithUnif& b) {
            return oracle::delta_equivalent(F, a, b, true);
          };
          CHECK(unif.size() == class_count(pairs, same_unif));
          for (const auto& U : unif) CHECK(is_valid_with_unif(ctx, U).ok);
        }
      }
    }
  }

  TEST_CASE("results do not depend on the thread count") {
    const BinomialContext q2(BaseField::rationals(2));
    EnumOptions serial, parallel;
    parallel.threads = 4;
    const auto a = enumerate_ram_polygons(q2, 16, serial);
    const auto b = enumerate_ram_polygons(q2, 16, parallel);
    CHECK(a.items == b.items);
    CHECK(a.stats.branches_visited == b.stats.branches_visited);
    CHECK(a.stats.results == a.items.size());
    CHECK(a.stats.results <= a.stats.branches_visited);
  }
}
