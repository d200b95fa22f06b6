#include "ramify/commands.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ramify/analyzer.hpp"
#include "ramify/error.hpp"
#include "ramify/serialize.hpp"
#include "ramify/templates.hpp"

namespace ramify {

BaseField make_field(const FieldSpec& spec) { return BaseField::make(spec.p, spec.f, spec.e, spec.gamma); }

std::vector<SurveyCase> default_survey_cases() {
  return {{{2, 1, 1, "1"}, 2, 3}, {{2, 1, 1, "1"}, 4, 5}, {{3, 1, 1, "1"}, 3, 3}};
}

namespace {

void check_config(const RunConfig& c) {
  require(c.n >= 1, "--degree must be >= 1");
  if (c.expand && c.level != Level::Fine && c.level != Level::Unif)
    fail(ErrorCode::InvalidArgument, "--expand needs --level fine or unif");
  if (c.reduce && c.level != Level::Unif) fail(ErrorCode::InvalidArgument, "--reduce needs --level unif");
  if ((c.expand || c.reduce) && !c.truncate)
    fail(ErrorCode::InvalidArgument, "--expand and --reduce need --truncate (a finite template)");
}

Template template_for(const BinomialContext& ctx, const Invariant& inv) {
  return std::visit(
      [&](const auto& x) -> Template {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RamPolygon>)
          return template_for_polygon(ctx, x);
        else if constexpr (std::is_same_v<T, FinePolygon>)
          return template_for_fine(ctx, x);
        else if constexpr (std::is_same_v<T, FinePolygonWithResidues>)
          return template_for_fine(ctx, x.polygon);
        else
          return template_for_invariant(ctx, x);
      },
      inv);
}

std::int64_t J0_of(const Invariant& inv) {
  return std::visit(
      [](const auto& x) -> std::int64_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RamPolygon>)
          return x.J0();
        else if constexpr (std::is_same_v<T, FinePolygon>)
          return x.hull().J0();
        else if constexpr (std::is_same_v<T, FinePolygonWithResidues>)
          return x.polygon.hull().J0();
        else
          return x.residues.polygon.hull().J0();
      },
      inv);
}

std::string digits_cell(const EisensteinData& f) {
  std::string out;
  for (const auto& d : f.nonzero_digits()) {
    if (!out.empty()) out += ';';
    out += std::to_string(d.i) + ":" + std::to_string(d.k) + ":" + f.base().to_string(d.value);
  }
  return out;
}

std::string stats_line(const EnumStats& s) {
  return "branches_visited=" + std::to_string(s.branches_visited) + " results=" + std::to_string(s.results) + "\n";
}

}  // namespace

CommandResult cmd_enumerate(const RunConfig& config) {
  check_config(config);
  const BinomialContext ctx(make_field(config.field));
  const auto& field = ctx.base();
  EnumOptions opts;
  opts.threads = config.threads;
  const auto found = enumerate_invariants(ctx, config.n, config.level, opts);

  const bool with_template = config.truncate || config.reduce || config.expand;
  std::vector<Template> templates;
  std::uint64_t polynomial_total = 0;
  if (with_template) {
    for (const auto& inv : found.items) {
      Template T = template_for(ctx, inv);
      if (config.truncate) T = truncate_krasner(std::move(T), J0_of(inv));
      if (config.reduce) T = reduce_template(ctx, T, std::get<InvariantWithUnif>(inv));
      if (config.expand) {
        polynomial_total += T.cardinality();
        if (polynomial_total > kExpandGuard)
          fail(ErrorCode::GuardExceeded, "expansion exceeds " + std::to_string(kExpandGuard) + " polynomials");
      }
      templates.push_back(std::move(T));
    }
  }

  CommandResult out;
  out.results = found.stats.results;
  out.branches = found.stats.branches_visited;

  if (config.format == Format::Json) {
    Json results = Json::array();
    for (std::size_t i = 0; i < found.items.size(); ++i) {
      Json rec = invariant_json(field, found.items[i]);
      if (with_template) {
        const Template& T = templates[i];
        rec["template"] = template_json(T);
        if (T.cutoff()) rec["cardinality"] = T.cardinality();
        if (config.expand) {
          Json polys = Json::array();
          T.expand([&](const EisensteinData& f) { polys.push_back(polynomial_json(f)["digits"]); });
          rec["polynomials"] = std::move(polys);
        }
      }
      results.push_back(std::move(rec));
    }
    Json doc{{"schema", kSchemaVersion},
             {"command", "enumerate"},
             {"field", field_json(field)},
             {"n", config.n},
             {"level", level_name(config.level)},
             {"results", std::move(results)}};
    if (config.expand) doc["polynomial_count"] = polynomial_total;
    if (config.stats)
      doc["stats"] = {{"branches_visited", found.stats.branches_visited}, {"results", found.stats.results}};
    out.output = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    auto header = invariant_csv_header();
    const bool with_card = config.truncate;
    if (with_card) header.push_back("cardinality");
    if (config.expand) header.push_back("polynomial");
    os << csv_line(header);
    for (std::size_t i = 0; i < found.items.size(); ++i) {
      auto cells = invariant_csv_cells(field, found.items[i]);
      if (with_card) cells.push_back(std::to_string(templates[i].cardinality()));
      if (config.expand) {
        templates[i].expand([&](const EisensteinData& f) {
          auto row = cells;
          row.push_back(digits_cell(f));
          os << csv_line(row);
        });
      } else {
        os << csv_line(cells);
      }
    }
    out.output = os.str();
    if (config.stats) out.diagnostics = stats_line(found.stats);
  }
  return out;
}

CommandResult cmd_analyze(const RunConfig& config, std::string_view input) {
  const BinomialContext ctx(make_field(config.field));
  const auto& field = ctx.base();

  const auto first = input.find_first_not_of(" \t\r\n");
  EisensteinData f = [&] {
    if (first != std::string_view::npos && input[first] == '{') {
      const Json j = Json::parse(input, nullptr, false);
      if (j.is_discarded()) fail(ErrorCode::Parse, "polynomial input is not valid JSON");
      return polynomial_from_json(field, j);
    }
    return parse_integer_polynomial(field, input);
  }();

  const Analysis a = analyze(ctx, f);
  CommandResult out;
  out.results = 1;
  if (config.format == Format::Json) {
    Json doc{{"schema", kSchemaVersion}, {"command", "analyze"}};
    Json body = analysis_json(ctx, f, a);
    for (auto& [k, v] : body.items()) doc[k] = std::move(v);
    out.output = doc.dump(2) + "\n";
  } else {
    auto cells = invariant_csv_cells(field, Invariant(a.invariant));
    cells.push_back(points_cell(a.points));
    cells.push_back(digits_cell(f));
    auto header = invariant_csv_header();
    header.push_back("ramification_points");
    header.push_back("polynomial");
    out.output = csv_line(header) + csv_line(cells);
  }
  return out;
}

namespace {

// Class lookup keyed by the exact residue data; each distinct key is matched
// against the enumerated representatives once.
template <class Rep, class Key, class Equiv>
class ClassIndex {
 public:
  ClassIndex(std::vector<Rep> reps, Equiv equiv) : reps_(std::move(reps)), hits_(reps_.size()), equiv_(equiv) {}

  /// Number of representatives equivalent to `x` (expected: exactly one).
  std::size_t classify(const Key& key, const Rep& x) {
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::vector<std::size_t> matches;
      for (std::size_t i = 0; i < reps_.size(); ++i)
        if (equiv_(reps_[i], x)) matches.push_back(i);
      it = cache_.emplace(key, std::move(matches)).first;
    }
    for (std::size_t i : it->second) ++hits_[i];
    return it->second.size();
  }

  const std::vector<Rep>& reps() const { return reps_; }
  const std::vector<std::uint64_t>& hits() const { return hits_; }

 private:
  std::vector<Rep> reps_;
  std::vector<std::uint64_t> hits_;
  Equiv equiv_;
  std::map<Key, std::vector<std::size_t>> cache_;
};

std::string describe(const std::vector<Point>& pts) {
  std::string out = "[";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out += (i ? ",(" : "(") + std::to_string(pts[i].x) + "," + std::to_string(pts[i].J) + ")";
  return out + "]";
}

struct CaseReport {
  Json json;
  std::vector<std::string> mismatches;
};

CaseReport run_case(const SurveyCase& sc, const SelftestConfig& config) {
  const BinomialContext ctx(make_field(sc.field));
  const auto& field = ctx.base();
  const std::int64_t n = sc.n;
  EnumOptions opts;
  opts.threads = config.threads;
  opts.validity = config.validity;
  CaseReport rep;
  auto& bad = rep.mismatches;
  const std::string tag = "p=" + std::to_string(field.p()) + " q=" + std::to_string(field.q()) +
                          " n=" + std::to_string(n) + ": ";

  // Enumerated side.
  std::vector<FinePolygon> fines;
  for (auto& inv : enumerate_invariants(ctx, n, Level::Fine, opts).items) fines.push_back(std::get<FinePolygon>(inv));

  using ResKey = std::pair<std::vector<Point>, std::vector<FqElement>>;
  using UnifKey = std::pair<ResKey, FqElement>;
  std::vector<FinePolygonWithResidues> res_reps;
  std::vector<InvariantWithUnif> unif_reps;
  for (const auto& F : fines) {
    try {
      for (auto& R : enumerate_residue_classes(ctx, F, opts).items) {
        for (auto& U : enumerate_unif_classes(ctx, R, opts).items) unif_reps.push_back(std::move(U));
        res_reps.push_back(std::move(R));
      }
    } catch (const Error& e) {
      bad.push_back(tag + "residue enumeration failed for " + describe(F.points()) + ": " + e.what());
    }
  }
  auto res_equiv = [&](const FinePolygonWithResidues& a, const FinePolygonWithResidues& b) {
    return equivalent_res(ctx, a, b);
  };
  auto unif_equiv = [&](const InvariantWithUnif& a, const InvariantWithUnif& b) {
    return equivalent_with_unif(ctx, a, b);
  };
  ClassIndex<FinePolygonWithResidues, ResKey, decltype(res_equiv)> res_index(res_reps, res_equiv);
  ClassIndex<InvariantWithUnif, UnifKey, decltype(unif_equiv)> unif_index(unif_reps, unif_equiv);

  // Surveyed side.
  std::set<FinePolygon> surveyed;
  std::map<FinePolygon, Template> templates;
  std::uint64_t tables = 0;
  const auto top = n * ctx.v(n);
  auto report = [&](const EisensteinData& f, const std::string& what) {
    if (bad.size() < 50) bad.push_back(tag + what + " for " + polynomial_json(f).dump());
  };
  survey_tables(ctx, n, sc.bound, [&](const EisensteinData& f) {
    ++tables;
    const InvariantWithUnif inv = unif_of(ctx, f);
    const FinePolygon& F = inv.residues.polygon;
    surveyed.insert(F);

    auto it = templates.find(F);
    if (it == templates.end()) it = templates.emplace(F, template_for_fine(ctx, F)).first;
    if (!it->second.admits(f, sc.bound)) report(f, "template membership fails");

    const std::int64_t J0 = F.hull().J0();
    if (J0 < std::min(n * ctx.v(decompose(J0, n).b), top) || J0 > top) report(f, "Ore bound violated");

    if (!is_valid_res(ctx, inv.residues).ok) report(f, "residues not valid");
    const auto adm = admissible_phi0(ctx, inv.residues);
    if (!std::binary_search(adm.begin(), adm.end(), inv.phi0)) report(f, "phi_0 not admissible");

    const ResKey rk{F.points(), inv.residues.residues};
    if (res_index.classify(rk, inv.residues) != 1) report(f, "residue class not matched exactly once");
    if (unif_index.classify({rk, inv.phi0}, inv) != 1) report(f, "uniformizer class not matched exactly once");
  });

  const std::set<FinePolygon> enumerated(fines.begin(), fines.end());
  for (const auto& F : enumerated)
    if (!surveyed.count(F)) bad.push_back(tag + "enumerated but never surveyed: " + describe(F.points()));
  for (const auto& F : surveyed)
    if (!enumerated.count(F)) bad.push_back(tag + "surveyed but not enumerated: " + describe(F.points()));
  for (std::size_t i = 0; i < res_index.hits().size(); ++i)
    if (res_index.hits()[i] == 0)
      bad.push_back(tag + "residue class never surveyed on " + describe(res_index.reps()[i].polygon.points()));
  for (std::size_t i = 0; i < unif_index.hits().size(); ++i)
    if (unif_index.hits()[i] == 0)
      bad.push_back(tag + "uniformizer class never surveyed on " +
                    describe(unif_index.reps()[i].residues.polygon.points()));

  // Round trip: every polynomial of a truncated fine template has that fine polygon.
  std::uint64_t expanded = 0;
  for (const auto& F : fines) {
    try {
      const Template T = truncate_krasner(template_for_fine(ctx, F), F.hull().J0());
      T.expand([&](const EisensteinData& f) {
        ++expanded;
        if (!(fine_of(ctx, f) == F)) report(f, "round trip leaves " + describe(F.points()));
      });
    } catch (const Error& e) {
      bad.push_back(tag + "template for " + describe(F.points()) + " failed: " + e.what());
    }
  }

  rep.json = Json{{"field", field_json(field)},
                  {"n", n},
                  {"digit_bound", sc.bound},
                  {"tables", tables},
                  {"fine_polygons", fines.size()},
                  {"residue_classes", res_reps.size()},
                  {"unif_classes", unif_reps.size()},
                  {"round_trip_polynomials", expanded},
                  {"mismatches", bad}};
  return rep;
}

void check_guard(const SurveyCase& sc) {
  const BaseField field = make_field(sc.field);
  require(sc.n >= 1 && sc.bound >= 1, "survey cases need n >= 1 and bound >= 1");
  std::uint64_t total = 1;
  for (std::int64_t s = 0; s < sc.n * sc.bound; ++s) {
    if (total > kSurveyGuard / field.q())
      fail(ErrorCode::GuardExceeded, "survey of degree " + std::to_string(sc.n) + " with digit bound " +
                                         std::to_string(sc.bound) + " exceeds the 2^24 table guard");
    total *= field.q();
  }
}

}  // namespace

CommandResult cmd_selftest(const SelftestConfig& config) {
  const auto cases = config.cases.empty() ? default_survey_cases() : config.cases;
  for (const auto& sc : cases) check_guard(sc);

  CommandResult out;
  Json reports = Json::array();
  for (const auto& sc : cases) {
    auto rep = run_case(sc, config);
    for (const auto& m : rep.mismatches) out.diagnostics += m + "\n";
    out.ok = out.ok && rep.mismatches.empty();
    out.results += rep.json["fine_polygons"].get<std::uint64_t>();
    reports.push_back(std::move(rep.json));
  }
  Json doc{{"schema", kSchemaVersion}, {"command", "selftest"}, {"ok", out.ok}, {"cases", std::move(reports)}};
  out.output = doc.dump(2) + "\n";
  return out;
}

}  // namespace ramify
