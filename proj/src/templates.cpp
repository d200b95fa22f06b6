#include "ramify/templates.hpp"

#include <algorithm>

#include "ramify/error.hpp"
#include "ramify/validity.hpp"

namespace ramify {

Template::Template(BaseField base, std::int64_t n) : base_(std::move(base)), n_(n) {
  require(n >= 1, "degree must be >= 1");
}

void Template::check_slot(std::int64_t i, std::int64_t k) const {
  require(i >= 0 && i < n_ && k >= 0, "template slot out of range");
}

std::vector<FqElement> Template::default_at(std::int64_t k) const {
  if (k == 0 || (cutoff_ && k >= *cutoff_)) return {base_.zero()};
  return base_.elements();
}

void Template::set_cutoff(std::int64_t cutoff) {
  require(cutoff >= 2, "cutoff must leave digit 1 free");
  cutoff_ = cutoff;
  std::erase_if(slots_, [&](const auto& kv) { return kv.first.second >= cutoff; });
}

std::vector<FqElement> Template::at(std::int64_t i, std::int64_t k) const {
  check_slot(i, k);
  if (auto it = slots_.find({i, k}); it != slots_.end()) return it->second;
  return default_at(k);
}

bool Template::is_full(std::int64_t i, std::int64_t k) const { return at(i, k).size() == base_.q(); }

void Template::set(std::int64_t i, std::int64_t k, std::vector<FqElement> values) {
  check_slot(i, k);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values == default_at(k))
    slots_.erase({i, k});
  else
    slots_[{i, k}] = std::move(values);
}

void Template::restrict(std::int64_t i, std::int64_t k, const std::vector<FqElement>& values) {
  auto current = at(i, k);
  auto wanted = values;
  std::sort(wanted.begin(), wanted.end());
  std::vector<FqElement> both;
  std::set_intersection(current.begin(), current.end(), wanted.begin(), wanted.end(), std::back_inserter(both));
  set(i, k, std::move(both));
}

std::map<Template::Slot, std::vector<FqElement>> Template::listed() const { return slots_; }

std::uint64_t Template::cardinality() const {
  if (!cutoff_) fail(ErrorCode::InvalidArgument, "template has no cutoff");
  std::uint64_t total = 1;
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int64_t k = 1; k < *cutoff_; ++k) {
      const std::uint64_t size = at(i, k).size();
      if (size == 0) return 0;
      if (total > UINT64_MAX / size) fail(ErrorCode::GuardExceeded, "template cardinality overflows 64 bits");
      total *= size;
    }
  return total;
}

bool Template::admits(const EisensteinData& f, std::int64_t max_digit) const {
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int64_t k = 1; k <= max_digit; ++k) {
      const auto allowed = at(i, k);
      if (!std::binary_search(allowed.begin(), allowed.end(), f.digit(i, k))) return false;
    }
  return true;
}

void Template::expand(const std::function<void(const EisensteinData&)>& fn) const {
  if (!cutoff_) fail(ErrorCode::InvalidArgument, "template has no cutoff");
  const std::int64_t depth = *cutoff_ - 1;

  struct Free {
    std::int64_t i, k;
    std::vector<FqElement> values;
  };
  std::vector<Free> slots;
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int64_t k = 1; k <= depth; ++k) {
      auto values = at(i, k);
      if (values.empty()) return;
      slots.push_back({i, k, std::move(values)});
    }

  EisensteinData f(base_, n_, depth);
  std::vector<std::size_t> pos(slots.size(), 0);
  for (const auto& s : slots) f.set_digit(s.i, s.k, s.values.front());
  for (;;) {
    fn(f);
    std::size_t idx = slots.size();
    while (idx > 0) {
      --idx;
      if (++pos[idx] < slots[idx].values.size()) {
        f.set_digit(slots[idx].i, slots[idx].k, slots[idx].values[pos[idx]]);
        break;
      }
      pos[idx] = 0;
      f.set_digit(slots[idx].i, slots[idx].k, slots[idx].values.front());
      if (idx == 0) return;
    }
    if (slots.empty()) return;
  }
}

Template eisenstein_template(const BinomialContext& ctx, std::int64_t n) {
  Template T(ctx.base(), n);
  for (std::int64_t i = 0; i < n; ++i) T.set(i, 0, {ctx.base().zero()});
  T.set(0, 1, ctx.base().units());
  return T;
}

namespace {

// F_i >= ell(i, s) for every p^s <= i < n, and F_{b_t} = ell(b_t, s_t).
template <class Ell>
void constrain(Template& T, const BinomialContext& ctx, std::int64_t n, int s_u, const std::vector<WildPoint>& pts,
               Ell&& ell) {
  const auto zero = std::vector<FqElement>{ctx.base().zero()};
  for (int s = 0; s <= s_u; ++s)
    for (std::int64_t i = ipow(ctx.p(), s); i < n; ++i)
      for (std::int64_t k = 1; k < ell(i, s); ++k) T.restrict(i, k, zero);
  for (const auto& t : pts)
    if (t.b < n && t.x <= t.b) T.restrict(t.b, ell(t.b, t.s), ctx.base().units());
}

}  // namespace

Template template_for_polygon(const BinomialContext& ctx, const RamPolygon& P) {
  require(is_valid_ram(ctx, P).ok, "template_for_polygon needs a valid ramification polygon");
  Template T = eisenstein_template(ctx, P.degree());
  constrain(T, ctx, P.degree(), P.s_u(), P.wild_vertices(),
            [&](std::int64_t i, int s) { return ell_P(ctx, P, i, s); });
  return T;
}

Template template_for_fine(const BinomialContext& ctx, const FinePolygon& Pstar) {
  require(is_valid_fine(ctx, Pstar).ok, "template_for_fine needs a valid fine polygon");
  Template T = eisenstein_template(ctx, Pstar.degree());
  constrain(T, ctx, Pstar.degree(), Pstar.s_u(), Pstar.wild_points(),
            [&](std::int64_t i, int s) { return ell_fine(ctx, Pstar, i, s); });
  return T;
}

Template template_for_invariant(const BinomialContext& ctx, const InvariantWithUnif& inv) {
  require(is_valid_with_unif(ctx, inv).ok, "template_for_invariant needs a valid invariant");
  const auto& field = ctx.base();
  const auto& Pstar = inv.residues.polygon;
  const std::int64_t n = Pstar.degree();
  Template T = template_for_fine(ctx, Pstar);
  T.restrict(0, 1, {inv.phi0});
  const FqElement x = field.neg(inv.phi0);
  for (const auto& t : Pstar.wild_points()) {
    if (t.b >= n || t.x > t.b) continue;
    // phi_b = gamma_t beta(b_t, p^s_t)^{-1} (-phi_0)^{a_t+1}
    const FqElement value =
        field.mul(field.div(inv.residues.residue_at(t.x), ctx.beta(t.b, t.x)), field.pow(x, t.a + 1));
    T.restrict(t.b, ell_fine(ctx, Pstar, t.b, t.s), {value});
  }
  return T;
}

std::int64_t krasner_cutoff(std::int64_t J0, std::int64_t n) {
  require(n >= 1 && J0 >= 0, "krasner_cutoff needs n >= 1 and J0 >= 0");
  return floor_of(Rational(1) + Rational(2 * J0, n)) + 1;
}

Template truncate_krasner(Template T, std::int64_t J0) {
  T.set_cutoff(krasner_cutoff(J0, T.degree()));
  return T;
}

SmData compute_Sm(const BinomialContext& ctx, const FinePolygonWithResidues& Pres, std::int64_t m) {
  require(m >= 1, "m must be >= 1");
  const auto& field = ctx.base();
  const auto& pts = Pres.polygon.points();
  const std::int64_t n = Pres.polygon.degree();

  SmData out;
  out.m = m;
  out.C = pts.front().J + m * pts.front().x;
  for (const auto& pt : pts) out.C = std::min(out.C, pt.J + m * pt.x);
  out.c = out.C / n;
  out.d = out.C % n;

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].J + m * pts[i].x != out.C) continue;
    if (!p_power_exponent(ctx.p(), pts[i].x))
      fail(ErrorCode::Internal, "S_" + std::to_string(m) + " has a term at the non p-power j = " +
                                    std::to_string(pts[i].x));
    out.terms.emplace_back(pts[i].x, Pres.residues[i]);
  }
  out.map = AdditiveMap::from_function(field, [&](FqElement u) {
    FqElement sum = field.zero();
    for (const auto& [j, rho] : out.terms) sum = field.add(sum, field.mul(rho, field.pow(u, j)));
    return sum;
  });
  return out;
}

Template reduce_template(const BinomialContext& ctx, const Template& T, const InvariantWithUnif& inv) {
  require(T.cutoff().has_value(), "reduce_template needs a truncated template");
  const auto& field = ctx.base();
  const std::int64_t cutoff = *T.cutoff();
  const FqElement x = field.neg(inv.phi0);

  Template out = T;
  std::optional<std::int64_t> last_C;
  std::vector<Template::Slot> seen;
  for (std::int64_t m = 1;; ++m) {
    const SmData sm = compute_Sm(ctx, inv.residues, m);
    if (last_C && sm.C <= *last_C) fail(ErrorCode::Internal, "C_m is not strictly increasing at m = " + std::to_string(m));
    last_C = sm.C;
    const Template::Slot slot{sm.d, 1 + sm.c};
    if (std::find(seen.begin(), seen.end(), slot) != seen.end())
      fail(ErrorCode::Internal, "reduction slot repeated at m = " + std::to_string(m));
    seen.push_back(slot);
    if (slot.second >= cutoff) break;
    if (!out.is_full(slot.first, slot.second)) continue;
    out.set(slot.first, slot.second, additive_coset_representatives(field, sm.map, field.pow(x, 1 + sm.c)));
  }
  return out;
}

}  // namespace ramify
