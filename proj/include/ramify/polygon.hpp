#pragma once

// Invariant data types (ramification polygon, fine polygon, fine polygon with
// residues, uniformizer residue) and the geometric helpers over them.

#include <boost/rational.hpp>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ramify/padic.hpp"
#include "ramify/residue_field.hpp"

namespace ramify {

using Rational = boost::rational<std::int64_t>;

std::int64_t floor_of(const Rational& r);
std::int64_t ceil_of(const Rational& r);

/// p^s, checked for overflow.
std::int64_t ipow(std::int64_t p, int s);
/// s with x = p^s, if x is a power of p.
std::optional<int> p_power_exponent(std::int64_t p, std::int64_t x);

struct Point {
  std::int64_t x = 0;
  std::int64_t J = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct HullPoint {
  std::int64_t x = 0;
  Rational y;
  friend bool operator==(const HullPoint&, const HullPoint&) = default;
};

/// Lower convex hull, left to right. Collinear interior points are dropped.
/// Throws on duplicate abscissas.
std::vector<HullPoint> lower_convex_hull(std::vector<HullPoint> points);
std::vector<Point> lower_convex_hull(std::span<const Point> points);

struct Decomposition {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// J = a n + b with 1 <= b <= n (so J = 0 gives a = -1, b = n).
Decomposition decompose(std::int64_t J, std::int64_t n);

/// A point at a p-power abscissa p^s, with its ordinate split by decompose().
struct WildPoint {
  int s = 0;
  std::int64_t x = 0;
  std::int64_t J = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
};

/// Ramification polygon [(1, J_0), ..., (p^{s_u}, 0), (n, 0)] listed by its
/// vertices; s_u = v_p(n). Interior vertices sit at powers of p and the slopes
/// strictly increase.
class RamPolygon {
 public:
  static RamPolygon make(std::int64_t p, std::int64_t n, std::vector<Point> vertices);

  std::int64_t p() const { return p_; }
  std::int64_t degree() const { return n_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  int s_u() const { return s_u_; }
  /// p^{s_u}, the left end of the horizontal face.
  std::int64_t wild_end() const { return wild_end_; }
  std::int64_t J0() const { return vertices_.front().J; }

  /// Value of the piecewise-linear function at 1 <= j <= n.
  Rational at(std::int64_t j) const;
  std::optional<std::int64_t> vertex_at(std::int64_t x) const;
  /// Vertices at p-power abscissas up to p^{s_u}, with (a, b) decompositions.
  std::vector<WildPoint> wild_vertices() const;

  friend bool operator==(const RamPolygon& a, const RamPolygon& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.vertices_ == b.vertices_;
  }
  friend auto operator<=>(const RamPolygon& a, const RamPolygon& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.vertices_ <=> b.vertices_;
  }

 private:
  std::int64_t p_ = 0;
  std::int64_t n_ = 0;
  int s_u_ = 0;
  std::int64_t wild_end_ = 1;
  std::vector<Point> vertices_;
};

Rational eval_polygon(const RamPolygon& P, std::int64_t j);

/// Points of the fine ramification polygon: every hull vertex, optional
/// on-hull points at p-power abscissas, and the tame points (j, 0) with
/// p^{s_u} <= j <= n.
class FinePolygon {
 public:
  static FinePolygon make(std::int64_t p, std::int64_t n, std::vector<Point> points);

  std::int64_t p() const { return hull_.p(); }
  std::int64_t degree() const { return hull_.degree(); }
  const std::vector<Point>& points() const { return points_; }
  const RamPolygon& hull() const { return hull_; }
  int s_u() const { return hull_.s_u(); }
  std::int64_t wild_end() const { return hull_.wild_end(); }

  std::optional<std::int64_t> point_at(std::int64_t x) const;
  bool is_tame(const Point& pt) const { return pt.x >= hull_.wild_end(); }
  /// Points at p-power abscissas up to p^{s_u}, in increasing order.
  std::vector<WildPoint> wild_points() const;

  friend bool operator==(const FinePolygon& a, const FinePolygon& b) {
    return a.hull_ == b.hull_ && a.points_ == b.points_;
  }
  friend auto operator<=>(const FinePolygon& a, const FinePolygon& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.points_ <=> b.points_;
  }

 private:
  std::vector<Point> points_;
  RamPolygon hull_;
};

/// Fine polygon with a nonzero residue attached to every point, parallel to
/// polygon.points().
struct FinePolygonWithResidues {
  FinePolygon polygon;
  std::vector<FqElement> residues;

  /// Enforces nonzero residues, the residue 1 at (n, 0) and the forced tame
  /// residues binomial(n, j).
  static FinePolygonWithResidues make(const BinomialContext& ctx, FinePolygon polygon,
                                      std::vector<FqElement> residues);
  /// Only checks sizes and nonzero residues.
  static FinePolygonWithResidues unchecked(FinePolygon polygon, std::vector<FqElement> residues);

  FqElement residue_at(std::int64_t x) const;

  friend bool operator==(const FinePolygonWithResidues&, const FinePolygonWithResidues&) = default;
};

/// Residue of the tame point (j, 0): binomial(n, j) mod p.
FqElement forced_tame_residue(const BinomialContext& ctx, std::int64_t n, std::int64_t j);

struct InvariantWithUnif {
  FinePolygonWithResidues residues;
  FqElement phi0;

  friend bool operator==(const InvariantWithUnif&, const InvariantWithUnif&) = default;
};

enum class Relation { EQ, GE, GT };

/// Generalized point: R_x ~ J with ~ one of =, >=, >; residues only on EQ.
struct PointSpec {
  std::int64_t x = 0;
  std::int64_t J = 0;
  Relation rel = Relation::EQ;
  std::optional<FqElement> rho;
  friend bool operator==(const PointSpec&, const PointSpec&) = default;
};

std::vector<PointSpec> to_point_specs(const RamPolygon& P);
std::vector<PointSpec> to_point_specs(const FinePolygon& Pstar);
std::vector<PointSpec> to_point_specs(const FinePolygonWithResidues& Pres);

/// ell_P(i, s) = ceil((P(p^s) - i) / n) - B(i, p^s) + 1, for p^s <= i <= n.
std::int64_t ell_P(const BinomialContext& ctx, const RamPolygon& P, std::int64_t i, int s);

/// Fine-polygon bound: a_t - B(i, p^s) + 1 + [i < b_t] when (p^s, J_t) is a
/// point, otherwise floor((P(p^s) - i) / n) - B(i, p^s) + 2.
std::int64_t ell_fine(const BinomialContext& ctx, const FinePolygon& Pstar, std::int64_t i, int s);

struct ResidualPolynomial {
  std::int64_t j0 = 0;
  std::int64_t j1 = 0;
  std::int64_t h = 0;  // slope is -h / e in lowest terms
  std::int64_t e = 1;
  std::int64_t width = 0;
  /// Constant first; degree width / e; monic.
  std::vector<FqElement> coefficients;
};

/// One residual polynomial per face of the hull.
std::vector<ResidualPolynomial> residual_polynomials(const BinomialContext& ctx, const FinePolygonWithResidues& Pres);

}  // namespace ramify
