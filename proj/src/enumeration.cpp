#include "ramify/enumeration.hpp"

#include <algorithm>
#include <future>

#include "ramify/error.hpp"

namespace ramify {

std::vector<std::int64_t> ore_bound_range(const BinomialContext& ctx, std::int64_t n) {
  require(n >= 1, "degree must be >= 1");
  const std::int64_t top = n * ctx.v(n);
  std::vector<std::int64_t> out;
  for (std::int64_t J0 = 0; J0 <= top; ++J0) {
    const auto d = decompose(J0, n);
    if (std::min(n * ctx.v(d.b), top) <= J0) out.push_back(J0);
  }
  return out;
}

namespace {

class RamSearch {
 public:
  RamSearch(const BinomialContext& ctx, std::int64_t n, const EnumOptions& opts)
      : ctx_(ctx), n_(n), opts_(opts), s_u_(static_cast<int>(vp(ctx.p(), n))), wild_end_(ipow(ctx.p(), s_u_)) {}

  Enumerated<RamPolygon> run(std::int64_t J0) {
    Enumerated<RamPolygon> out;
    std::vector<Point> wild;
    if (J0 > 0) wild.push_back({1, J0});
    visit(wild, 1, out);
    return out;
  }

 private:
  RamPolygon build(const std::vector<Point>& wild) const {
    std::vector<Point> verts = wild;
    verts.push_back({wild_end_, 0});
    if (n_ != wild_end_) verts.push_back({n_, 0});
    return RamPolygon::make(ctx_.p(), n_, std::move(verts));
  }

  void visit(std::vector<Point>& wild, int S, Enumerated<RamPolygon>& out) const {
    ++out.stats.branches_visited;
    const RamPolygon P = build(wild);
    // Left of the last chosen vertex the polygon is final, so every s up to
    // that vertex can be checked in full alongside the weak conditions.
    if (opts_.prune) {
      const int settled = wild.empty() ? -1 : static_cast<int>(vp(ctx_.p(), wild.back().x));
      std::vector<int> s_values;
      for (int s = 0; s <= settled; ++s) s_values.push_back(s);
      for (const auto& t : P.wild_vertices())
        if (t.s > settled) s_values.push_back(t.s);
      if (!check_ram_conditions(ctx_, P, s_values, opts_.validity).ok) return;
    }
    if (S >= s_u_) {
      if (is_valid_ram(ctx_, P, opts_.validity).ok) out.items.push_back(P);
      return;
    }

    visit(wild, S + 1, out);

    // New vertex (p^S, J) strictly below the current polygon and keeping the
    // slopes strictly increasing at the previous vertex.
    const std::int64_t X = ipow(ctx_.p(), S);
    const std::int64_t hi = ceil_of(P.at(X)) - 1;
    std::int64_t lo = 1;
    if (wild.size() >= 2) {
      const auto& a = wild[wild.size() - 2];
      const auto& b = wild.back();
      const Rational through = Rational(b.J) + Rational((b.J - a.J) * (X - b.x), b.x - a.x);
      lo = std::max(lo, floor_of(through) + 1);
    }
    for (std::int64_t J = lo; J <= hi; ++J) {
      wild.push_back({X, J});
      visit(wild, S + 1, out);
      wild.pop_back();
    }
  }

  const BinomialContext& ctx_;
  std::int64_t n_;
  EnumOptions opts_;
  int s_u_;
  std::int64_t wild_end_;
};

}  // namespace

Enumerated<RamPolygon> enumerate_ram_polygons(const BinomialContext& ctx, std::int64_t n, const EnumOptions& opts) {
  const auto starts = ore_bound_range(ctx, n);
  const RamSearch search(ctx, n, opts);

  std::vector<Enumerated<RamPolygon>> parts(starts.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(starts.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) parts[i] = RamSearch(search).run(starts[i]);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < starts.size(); i += workers) parts[i] = RamSearch(search).run(starts[i]);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  Enumerated<RamPolygon> out;
  for (auto& part : parts) {
    out.stats += part.stats;
    for (auto& P : part.items) out.items.push_back(std::move(P));
  }
  std::sort(out.items.begin(), out.items.end());
  out.stats.results = out.items.size();
  return out;
}

Enumerated<FinePolygon> enumerate_fine_polygons(const BinomialContext& ctx, const RamPolygon& P,
                                                const EnumOptions& opts) {
  require(is_valid_ram(ctx, P, opts.validity).ok, "enumerate_fine_polygons needs a valid ramification polygon");
  const std::int64_t n = P.degree();

  std::vector<Point> base = P.vertices();
  for (std::int64_t j = P.wild_end(); j <= n; ++j)
    if (ctx.B(n, j) == 0 && !P.vertex_at(j)) base.push_back({j, 0});

  std::vector<Point> candidates;
  for (int s = 1; s < P.s_u(); ++s) {
    const std::int64_t x = ipow(P.p(), s);
    const Rational y = P.at(x);
    if (!P.vertex_at(x) && y.denominator() == 1) candidates.push_back({x, y.numerator()});
  }

  Enumerated<FinePolygon> out;
  std::vector<Point> pts = base;
  auto visit = [&](auto&& self, std::size_t idx) -> void {
    ++out.stats.branches_visited;
    const FinePolygon F = FinePolygon::make(P.p(), n, pts);
    if (opts.prune && !is_weakly_valid_fine(ctx, F, opts.validity).ok) return;
    if (idx == candidates.size()) {
      if (is_valid_fine(ctx, F, opts.validity).ok) out.items.push_back(F);
      return;
    }
    self(self, idx + 1);
    pts.push_back(candidates[idx]);
    self(self, idx + 1);
    pts.pop_back();
  };
  visit(visit, 0);

  std::sort(out.items.begin(), out.items.end());
  out.stats.results = out.items.size();
  return out;
}

Enumerated<FinePolygonWithResidues> enumerate_residue_classes(const BinomialContext& ctx, const FinePolygon& Pstar,
                                                              const EnumOptions& opts) {
  require(is_valid_fine(ctx, Pstar, opts.validity).ok, "enumerate_residue_classes needs a valid fine polygon");
  const auto& field = ctx.base();
  const std::int64_t n = Pstar.degree();
  const auto wild = Pstar.wild_points();

  // The last wild point is (p^{s_u}, 0), whose residue is forced.
  std::vector<std::optional<FqElement>> gamma(wild.size());
  gamma.back() = forced_tame_residue(ctx, n, wild.back().x);
  const std::size_t free_count = wild.size() - 1;

  auto assemble = [&] {
    std::vector<FqElement> residues;
    for (const auto& pt : Pstar.points()) {
      if (Pstar.is_tame(pt)) {
        residues.push_back(forced_tame_residue(ctx, n, pt.x));
      } else {
        const auto it = std::find_if(wild.begin(), wild.end(), [&](const WildPoint& w) { return w.x == pt.x; });
        residues.push_back(*gamma[static_cast<std::size_t>(it - wild.begin())]);
      }
    }
    return FinePolygonWithResidues::make(ctx, Pstar, std::move(residues));
  };

  Enumerated<FinePolygonWithResidues> out;
  std::vector<std::int64_t> fixed;
  auto visit = [&](auto&& self, std::size_t t) -> void {
    ++out.stats.branches_visited;
    if (opts.prune && solve_power_system(field, residue_equations(ctx, Pstar, gamma)).empty()) return;
    if (t == free_count) {
      auto Pres = assemble();
      if (!admissible_phi0(ctx, Pres).empty()) out.items.push_back(std::move(Pres));
      return;
    }
    const auto reps = orbit_representatives(field, wild[t].J, fixed);
    fixed.push_back(wild[t].J);
    for (FqElement g : reps) {
      gamma[t] = g;
      self(self, t + 1);
    }
    gamma[t].reset();
    fixed.pop_back();
  };
  visit(visit, 0);

  out.stats.results = out.items.size();
  return out;
}

Enumerated<InvariantWithUnif> enumerate_unif_classes(const BinomialContext& ctx, const FinePolygonWithResidues& Pres,
                                                     const EnumOptions&) {
  Enumerated<InvariantWithUnif> out;
  for (FqElement phi0 : admissible_phi0(ctx, Pres)) {
    ++out.stats.branches_visited;
    InvariantWithUnif cand{Pres, phi0};
    const bool known = std::any_of(out.items.begin(), out.items.end(),
                                   [&](const InvariantWithUnif& r) { return equivalent_with_unif(ctx, r, cand); });
    if (!known) out.items.push_back(std::move(cand));
  }
  out.stats.results = out.items.size();
  return out;
}

Enumerated<Invariant> enumerate_invariants(const BinomialContext& ctx, std::int64_t n, Level level,
                                           const EnumOptions& opts) {
  Enumerated<Invariant> out;
  auto rams = enumerate_ram_polygons(ctx, n, opts);
  out.stats += rams.stats;
  for (auto& P : rams.items) {
    if (level == Level::Ram) {
      out.items.emplace_back(std::move(P));
      continue;
    }
    auto fines = enumerate_fine_polygons(ctx, P, opts);
    out.stats += fines.stats;
    for (auto& F : fines.items) {
      if (level == Level::Fine) {
        out.items.emplace_back(std::move(F));
        continue;
      }
      auto res = enumerate_residue_classes(ctx, F, opts);
      out.stats += res.stats;
      for (auto& R : res.items) {
        if (level == Level::Res) {
          out.items.emplace_back(std::move(R));
          continue;
        }
        auto unif = enumerate_unif_classes(ctx, R, opts);
        out.stats += unif.stats;
        for (auto& U : unif.items) out.items.emplace_back(std::move(U));
      }
    }
  }
  out.stats.results = out.items.size();
  return out;
}

}  // namespace ramify
