#include "ramify/polygon.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ramify/error.hpp"

namespace ramify {

std::int64_t floor_of(const Rational& r) {
  const std::int64_t n = r.numerator();
  const std::int64_t d = r.denominator();  // boost keeps d > 0
  std::int64_t q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

std::int64_t ceil_of(const Rational& r) { return -floor_of(-r); }

std::int64_t ipow(std::int64_t p, int s) {
  std::int64_t r = 1;
  for (int i = 0; i < s; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / p) fail(ErrorCode::InvalidArgument, "power overflow");
    r *= p;
  }
  return r;
}

std::optional<int> p_power_exponent(std::int64_t p, std::int64_t x) {
  if (x < 1) return std::nullopt;
  int s = 0;
  while (x % p == 0) {
    x /= p;
    ++s;
  }
  if (x != 1) return std::nullopt;
  return s;
}

namespace {

// Cross product of (a - o) and (b - o).
Rational cross(const HullPoint& o, const HullPoint& a, const HullPoint& b) {
  return Rational(a.x - o.x) * (b.y - o.y) - (a.y - o.y) * Rational(b.x - o.x);
}

}  // namespace

std::vector<HullPoint> lower_convex_hull(std::vector<HullPoint> points) {
  std::sort(points.begin(), points.end(), [](const HullPoint& a, const HullPoint& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].x == points[i - 1].x) fail(ErrorCode::InvalidArgument, "duplicate abscissa in hull input");

  std::vector<HullPoint> hull;
  for (const auto& pt : points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
    hull.push_back(pt);
  }
  return hull;
}

std::vector<Point> lower_convex_hull(std::span<const Point> points) {
  std::vector<HullPoint> in;
  in.reserve(points.size());
  for (const auto& pt : points) in.push_back({pt.x, Rational(pt.J)});
  std::vector<Point> out;
  for (const auto& h : lower_convex_hull(std::move(in))) out.push_back({h.x, h.y.numerator()});
  return out;
}

Decomposition decompose(std::int64_t J, std::int64_t n) {
  require(n >= 1, "decompose needs n >= 1");
  // b in [1, n]
  std::int64_t b = ((J - 1) % n + n) % n + 1;
  return {(J - b) / n, b};
}

RamPolygon RamPolygon::make(std::int64_t p, std::int64_t n, std::vector<Point> vertices) {
  require(n >= 1, "polygon degree must be >= 1");
  require(!vertices.empty(), "polygon needs vertices");
  require(vertices.front().x == 1, "first vertex must have abscissa 1");
  require(vertices.back().x == n && vertices.back().J == 0, "last vertex must be (n, 0)");

  RamPolygon P;
  P.p_ = p;
  P.n_ = n;
  P.s_u_ = static_cast<int>(vp(p, n));
  P.wild_end_ = ipow(p, P.s_u_);

  bool has_wild_end = false;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& v = vertices[i];
    if (i > 0) require(vertices[i - 1].x < v.x, "vertex abscissas must increase strictly");
    require(v.J >= 0, "vertex ordinates must be nonnegative");
    if (v.x < P.wild_end_) {
      require(p_power_exponent(p, v.x).has_value(), "interior vertices must sit at powers of p");
      require(v.J > 0, "vertices left of p^{v_p(n)} must have positive ordinate");
    } else if (v.x == P.wild_end_) {
      require(v.J == 0, "vertex at p^{v_p(n)} must have ordinate 0");
      has_wild_end = true;
    } else {
      require(v.x == n, "only (n, 0) may follow (p^{v_p(n)}, 0)");
    }
  }
  require(has_wild_end, "polygon must have a vertex at (p^{v_p(n)}, 0)");

  for (std::size_t i = 2; i < vertices.size(); ++i) {
    const auto& o = vertices[i - 2];
    const auto& a = vertices[i - 1];
    const auto& b = vertices[i];
    // Strictly increasing slopes.
    const std::int64_t c = (a.x - o.x) * (b.J - o.J) - (a.J - o.J) * (b.x - o.x);
    require(c > 0, "polygon slopes must increase strictly");
  }
  P.vertices_ = std::move(vertices);
  return P;
}

Rational RamPolygon::at(std::int64_t j) const {
  require(1 <= j && j <= n_, "polygon evaluated outside [1, n]");
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[i + 1];
    if (a.x <= j && j <= b.x) return Rational(a.J) + Rational((b.J - a.J) * (j - a.x), b.x - a.x);
  }
  return Rational(vertices_.back().J);
}

std::optional<std::int64_t> RamPolygon::vertex_at(std::int64_t x) const {
  for (const auto& v : vertices_)
    if (v.x == x) return v.J;
  return std::nullopt;
}

std::vector<WildPoint> RamPolygon::wild_vertices() const {
  std::vector<WildPoint> out;
  for (const auto& v : vertices_) {
    if (v.x > wild_end_) break;
    const auto d = decompose(v.J, n_);
    out.push_back({*p_power_exponent(p_, v.x), v.x, v.J, d.a, d.b});
  }
  return out;
}

Rational eval_polygon(const RamPolygon& P, std::int64_t j) { return P.at(j); }

FinePolygon FinePolygon::make(std::int64_t p, std::int64_t n, std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  FinePolygon F;
  F.hull_ = RamPolygon::make(p, n, lower_convex_hull(points));
  for (const auto& pt : points) {
    require(F.hull_.at(pt.x) == Rational(pt.J), "fine polygon point lies above its hull");
    if (pt.x < F.hull_.wild_end())
      require(p_power_exponent(p, pt.x).has_value(), "fine polygon points left of p^{v_p(n)} must be at powers of p");
  }
  F.points_ = std::move(points);
  return F;
}

std::optional<std::int64_t> FinePolygon::point_at(std::int64_t x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), Point{x, std::numeric_limits<std::int64_t>::min()});
  if (it != points_.end() && it->x == x) return it->J;
  return std::nullopt;
}

std::vector<WildPoint> FinePolygon::wild_points() const {
  std::vector<WildPoint> out;
  for (const auto& pt : points_) {
    if (pt.x > wild_end()) break;
    const auto d = decompose(pt.J, degree());
    out.push_back({*p_power_exponent(p(), pt.x), pt.x, pt.J, d.a, d.b});
  }
  return out;
}

FqElement forced_tame_residue(const BinomialContext& ctx, std::int64_t n, std::int64_t j) { return ctx.beta(n, j); }

FinePolygonWithResidues FinePolygonWithResidues::unchecked(FinePolygon polygon, std::vector<FqElement> residues) {
  require(polygon.points().size() == residues.size(), "one residue per point is required");
  for (FqElement r : residues) require(!r.is_zero(), "residues must be nonzero");
  return {std::move(polygon), std::move(residues)};
}

FinePolygonWithResidues FinePolygonWithResidues::make(const BinomialContext& ctx, FinePolygon polygon,
                                                      std::vector<FqElement> residues) {
  auto out = unchecked(std::move(polygon), std::move(residues));
  const auto& pts = out.polygon.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!out.polygon.is_tame(pts[i])) continue;
    if (out.residues[i] != forced_tame_residue(ctx, out.polygon.degree(), pts[i].x))
      fail(ErrorCode::ResidueMismatch, "tame residue at j = " + std::to_string(pts[i].x) +
                                           " must equal binomial(n, j) mod p");
  }
  return out;
}

FqElement FinePolygonWithResidues::residue_at(std::int64_t x) const {
  const auto& pts = polygon.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].x == x) return residues[i];
  fail(ErrorCode::InvalidArgument, "no point at abscissa " + std::to_string(x));
}

std::vector<PointSpec> to_point_specs(const RamPolygon& P) {
  std::vector<PointSpec> out;
  for (int s = 0; s <= P.s_u(); ++s) {
    const std::int64_t x = ipow(P.p(), s);
    if (auto J = P.vertex_at(x))
      out.push_back({x, *J, Relation::EQ, std::nullopt});
    else
      out.push_back({x, ceil_of(P.at(x)), Relation::GE, std::nullopt});
  }
  if (P.degree() != P.wild_end()) out.push_back({P.degree(), 0, Relation::EQ, std::nullopt});
  return out;
}

std::vector<PointSpec> to_point_specs(const FinePolygon& Pstar) {
  std::vector<PointSpec> out;
  for (int s = 0; s <= Pstar.s_u(); ++s) {
    const std::int64_t x = ipow(Pstar.p(), s);
    if (auto J = Pstar.point_at(x))
      out.push_back({x, *J, Relation::EQ, std::nullopt});
    else
      out.push_back({x, floor_of(Pstar.hull().at(x)), Relation::GT, std::nullopt});
  }
  for (const auto& pt : Pstar.points())
    if (pt.x > Pstar.wild_end()) out.push_back({pt.x, pt.J, Relation::EQ, std::nullopt});
  return out;
}

std::vector<PointSpec> to_point_specs(const FinePolygonWithResidues& Pres) {
  auto out = to_point_specs(Pres.polygon);
  for (auto& spec : out)
    if (spec.rel == Relation::EQ) spec.rho = Pres.residue_at(spec.x);
  return out;
}

std::int64_t ell_P(const BinomialContext& ctx, const RamPolygon& P, std::int64_t i, int s) {
  const std::int64_t x = ipow(P.p(), s);
  require(s <= P.s_u() && x <= i && i <= P.degree(), "ell_P needs p^s <= i <= n");
  return ceil_of((P.at(x) - Rational(i)) / Rational(P.degree())) - ctx.B(i, x) + 1;
}

std::int64_t ell_fine(const BinomialContext& ctx, const FinePolygon& Pstar, std::int64_t i, int s) {
  const std::int64_t x = ipow(Pstar.p(), s);
  const std::int64_t n = Pstar.degree();
  require(s <= Pstar.s_u() && x <= i && i <= n, "ell_fine needs p^s <= i <= n");
  if (auto J = Pstar.point_at(x)) {
    const auto d = decompose(*J, n);
    return d.a - ctx.B(i, x) + 1 + (i < d.b ? 1 : 0);
  }
  return floor_of((Pstar.hull().at(x) - Rational(i)) / Rational(n)) - ctx.B(i, x) + 2;
}

std::vector<ResidualPolynomial> residual_polynomials(const BinomialContext& ctx, const FinePolygonWithResidues& Pres) {
  const auto& field = ctx.base();
  const auto& verts = Pres.polygon.hull().vertices();
  std::vector<ResidualPolynomial> out;
  for (std::size_t f = 0; f + 1 < verts.size(); ++f) {
    const auto& left = verts[f];
    const auto& right = verts[f + 1];
    ResidualPolynomial A;
    A.j0 = left.x;
    A.j1 = right.x;
    A.width = right.x - left.x;
    const std::int64_t drop = left.J - right.J;
    const std::int64_t g = std::gcd(drop, A.width);
    A.h = drop / g;
    A.e = A.width / g;
    A.coefficients.assign(static_cast<std::size_t>(A.width / A.e) + 1, field.zero());
    const FqElement lead = Pres.residue_at(right.x);
    const auto& pts = Pres.polygon.points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (pts[k].x < left.x || pts[k].x > right.x) continue;
      if ((pts[k].x - left.x) % A.e != 0) fail(ErrorCode::Internal, "point off the face lattice");
      A.coefficients[static_cast<std::size_t>((pts[k].x - left.x) / A.e)] = field.div(Pres.residues[k], lead);
    }
    out.push_back(std::move(A));
  }
  return out;
}

}  // namespace ramify
