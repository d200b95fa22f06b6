#include "ramify/serialize.hpp"

#include "ramify/error.hpp"
#include "ramify/validity.hpp"

namespace ramify {

std::string_view level_name(Level level) {
  switch (level) {
    case Level::Ram: return "ram";
    case Level::Fine: return "fine";
    case Level::Res: return "res";
    case Level::Unif: return "unif";
  }
  return "?";
}

Level parse_level(std::string_view name) {
  for (Level l : {Level::Ram, Level::Fine, Level::Res, Level::Unif})
    if (level_name(l) == name) return l;
  fail(ErrorCode::InvalidArgument, "unknown level '" + std::string(name) + "' (expected ram, fine, res or unif)");
}

Json field_json(const BaseField& field) {
  return Json{{"p", field.p()},
              {"f", field.f()},
              {"e", field.e()},
              {"gamma", field.to_string(field.gamma())},
              {"modulus", field.modulus()}};
}

Json points_json(const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const auto& pt : pts) out.push_back({pt.x, pt.J});
  return out;
}

namespace {

const FinePolygon* fine_part(const Invariant& inv) {
  if (const auto* F = std::get_if<FinePolygon>(&inv)) return F;
  if (const auto* R = std::get_if<FinePolygonWithResidues>(&inv)) return &R->polygon;
  if (const auto* U = std::get_if<InvariantWithUnif>(&inv)) return &U->residues.polygon;
  return nullptr;
}

const FinePolygonWithResidues* residue_part(const Invariant& inv) {
  if (const auto* R = std::get_if<FinePolygonWithResidues>(&inv)) return R;
  if (const auto* U = std::get_if<InvariantWithUnif>(&inv)) return &U->residues;
  return nullptr;
}

const RamPolygon& hull_part(const Invariant& inv) {
  if (const auto* P = std::get_if<RamPolygon>(&inv)) return *P;
  return fine_part(inv)->hull();
}

Level level_of(const Invariant& inv) { return static_cast<Level>(inv.index()); }

std::vector<bool> tame_flags(const FinePolygon& F) {
  std::vector<bool> out;
  for (const auto& pt : F.points()) out.push_back(F.is_tame(pt));
  return out;
}

std::vector<std::string> residue_strings(const BaseField& field, const FinePolygonWithResidues& R) {
  std::vector<std::string> out;
  for (FqElement r : R.residues) out.push_back(field.to_string(r));
  return out;
}

template <class T, class Fn>
std::string join(const std::vector<T>& items, Fn&& fn) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ';';
    out += fn(items[i]);
  }
  return out;
}

}  // namespace

Json invariant_json(const BaseField& field, const Invariant& inv) {
  const RamPolygon& P = hull_part(inv);
  Json out{{"field", field_json(field)},
           {"level", level_name(level_of(inv))},
           {"n", P.degree()},
           {"vertices", points_json(P.vertices())}};
  if (const auto* F = fine_part(inv)) {
    out["points"] = points_json(F->points());
    out["tame"] = tame_flags(*F);
  }
  if (const auto* R = residue_part(inv)) out["residues"] = residue_strings(field, *R);
  if (const auto* U = std::get_if<InvariantWithUnif>(&inv)) out["phi0"] = field.to_string(U->phi0);
  return out;
}

Json template_json(const Template& T) {
  const auto& field = T.base();
  Json slots = Json::array();
  for (const auto& [slot, values] : T.listed()) {
    Json set = Json::array();
    for (FqElement v : values) set.push_back(field.to_string(v));
    slots.push_back({{"i", slot.first}, {"k", slot.second}, {"set", set}});
  }
  Json cutoff = T.cutoff() ? Json(*T.cutoff()) : Json(nullptr);
  return Json{{"n", T.degree()}, {"field", field_json(field)}, {"cutoff", cutoff}, {"slots", slots}};
}

Json polynomial_json(const EisensteinData& f) {
  Json digits = Json::array();
  for (const auto& d : f.nonzero_digits())
    digits.push_back({{"i", d.i}, {"k", d.k}, {"residue", f.base().to_string(d.value)}});
  return Json{{"n", f.degree()}, {"digits", digits}};
}

EisensteinData polynomial_from_json(const BaseField& field, const Json& j) {
  try {
    const std::int64_t n = j.at("n").get<std::int64_t>();
    std::vector<DigitEntry> digits;
    for (const auto& d : j.at("digits"))
      digits.push_back({d.at("i").get<std::int64_t>(), d.at("k").get<std::int64_t>(),
                        field.parse(d.at("residue").get<std::string>())});
    return EisensteinData::from_digits(field, n, digits);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed polynomial JSON: ") + e.what());
  }
}

Json analysis_json(const BinomialContext& ctx, const EisensteinData& f, const Analysis& a) {
  const auto& field = ctx.base();
  const auto& Pres = a.invariant.residues;
  Json residual = Json::array();
  for (const auto& A : residual_polynomials(ctx, Pres)) {
    std::vector<std::string> coeffs;
    for (FqElement c : A.coefficients) coeffs.push_back(field.to_string(c));
    residual.push_back({{"face", {A.j0, A.j1}}, {"slope", {-A.h, A.e}}, {"coefficients", coeffs}});
  }
  std::vector<std::string> admissible;
  for (FqElement x : admissible_phi0(ctx, Pres)) admissible.push_back(field.to_string(x));
  return Json{{"field", field_json(field)},
              {"n", f.degree()},
              {"polynomial", polynomial_json(f)},
              {"ramification_points", points_json(a.points)},
              {"polygon", points_json(a.polygon.vertices())},
              {"fine_polygon", points_json(Pres.polygon.points())},
              {"tame", tame_flags(Pres.polygon)},
              {"residues", residue_strings(field, Pres)},
              {"phi0", field.to_string(a.invariant.phi0)},
              {"admissible_phi0", admissible},
              {"residual_polynomials", residual}};
}

std::string points_cell(const std::vector<Point>& pts) {
  return join(pts, [](const Point& pt) { return std::to_string(pt.x) + ":" + std::to_string(pt.J); });
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(cells[i]);
  }
  return out + "\n";
}

std::vector<std::string> invariant_csv_header() {
  return {"p", "f", "e", "gamma", "modulus", "level", "n", "vertices", "points", "tame", "residues", "phi0"};
}

std::vector<std::string> invariant_csv_cells(const BaseField& field, const Invariant& inv) {
  const RamPolygon& P = hull_part(inv);
  std::vector<std::string> cells{std::to_string(field.p()),
                                 std::to_string(field.f()),
                                 std::to_string(field.e()),
                                 field.to_string(field.gamma()),
                                 join(field.modulus(), [](int c) { return std::to_string(c); }),
                                 std::string(level_name(level_of(inv))),
                                 std::to_string(P.degree()),
                                 points_cell(P.vertices()),
                                 "",
                                 "",
                                 "",
                                 ""};
  if (const auto* F = fine_part(inv)) {
    cells[8] = points_cell(F->points());
    cells[9] = join(tame_flags(*F), [](bool b) { return std::string(b ? "1" : "0"); });
  }
  if (const auto* R = residue_part(inv))
    cells[10] = join(residue_strings(field, *R), [](const std::string& s) { return s; });
  if (const auto* U = std::get_if<InvariantWithUnif>(&inv)) cells[11] = field.to_string(U->phi0);
  return cells;
}

}  // namespace ramify
