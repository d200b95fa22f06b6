#pragma once

// JSON and CSV forms of invariants, templates and digit tables. Every record
// carries the field descriptor so files are self-describing.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ramify/analyzer.hpp"
#include "ramify/enumeration.hpp"
#include "ramify/templates.hpp"

namespace ramify {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string_view level_name(Level level);
/// Throws ErrorCode::InvalidArgument on an unknown name.
Level parse_level(std::string_view name);

Json field_json(const BaseField& field);
Json points_json(const std::vector<Point>& pts);

/// {field, n, level, vertices[, points, tame][, residues][, phi0]}.
Json invariant_json(const BaseField& field, const Invariant& inv);
/// {n, field, cutoff, slots: [{i, k, set}]}; only slots off the default rule.
Json template_json(const Template& T);
/// {n, digits: [{i, k, residue}]}, nonzero digits only.
Json polynomial_json(const EisensteinData& f);
/// Accepts polynomial_json output; digits not listed are zero.
EisensteinData polynomial_from_json(const BaseField& field, const Json& j);

Json analysis_json(const BinomialContext& ctx, const EisensteinData& f, const Analysis& a);

/// "1:7;2:6;8:0" style cell for a point list.
std::string points_cell(const std::vector<Point>& pts);
std::string csv_escape(std::string_view cell);
std::string csv_line(const std::vector<std::string>& cells);

std::vector<std::string> invariant_csv_header();
std::vector<std::string> invariant_csv_cells(const BaseField& field, const Invariant& inv);

}  // namespace ramify
