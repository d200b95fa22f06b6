#pragma once

// Forward direction: from an explicit Eisenstein polynomial to its
// ramification points, polygons, residues and uniformizer residue.

#include <cstdint>
#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "ramify/eisenstein.hpp"
#include "ramify/polygon.hpp"

namespace ramify {

/// (j, R_j) for every j in 1..n with R_j finite, in increasing j.
std::vector<Point> ramification_points(const BinomialContext& ctx, const EisensteinData& f);

RamPolygon polygon_of(const BinomialContext& ctx, const EisensteinData& f);
FinePolygon fine_of(const BinomialContext& ctx, const EisensteinData& f);
FinePolygonWithResidues residues_of(const BinomialContext& ctx, const EisensteinData& f);
InvariantWithUnif unif_of(const BinomialContext& ctx, const EisensteinData& f);

struct Analysis {
  std::vector<Point> points;
  RamPolygon polygon;
  InvariantWithUnif invariant;
};

Analysis analyze(const BinomialContext& ctx, const EisensteinData& f);

/// Integer form such as "x^8+2x^7+2x^6+2x^4+2" over Q_p. Coefficients are
/// expanded in base p far enough to hold every leading digit.
EisensteinData parse_integer_polynomial(const BaseField& field, std::string_view text);

/// Upper bound on q^{n * digit_bound} for a survey.
inline constexpr std::uint64_t kSurveyGuard = std::uint64_t{1} << 24;

/// Calls `fn` for every Eisenstein digit table with digits k <= digit_bound.
void survey_tables(const BinomialContext& ctx, std::int64_t n, std::int64_t digit_bound,
                   const std::function<void(const EisensteinData&)>& fn);

struct SurveyResult {
  std::map<FinePolygon, std::uint64_t> fine_counts;
  std::uint64_t tables = 0;
};

SurveyResult brute_force_survey(const BinomialContext& ctx, std::int64_t n, std::int64_t digit_bound);

}  // namespace ramify
