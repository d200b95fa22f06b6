// ramify: enumerate invariants of totally ramified extensions, analyze
// Eisenstein polynomials, and run the brute-force self test.
//
// Exit status: 0 success, 1 self-test mismatch, 2 bad configuration,
// 3 input polynomial not Eisenstein, 4 internal error.

#include <cstdio>
#include <iostream>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ramify/ramify.h"

namespace {

struct FieldArgs {
  int64_t p = 2;
  int f = 1;
  int e = 1;
  std::string gamma = "1";

  void add_to(CLI::App* app) {
    app->add_option("--p", p, "residue characteristic")->capture_default_str();
    app->add_option("--f", f, "residue degree of the base field")->capture_default_str();
    app->add_option("--e", e, "ramification index of the base field")->capture_default_str();
    app->add_option("--gamma", gamma, "residue of pi^e / p (\"1\", \"g\", \"0,1\")")
        ->capture_default_str();
  }
};

int exit_code(ramify_status s) {
  switch (s) {
    case RAMIFY_OK: return 0;
    case RAMIFY_ERR_CHECK_FAILED: return 1;
    case RAMIFY_ERR_NOT_EISENSTEIN: return 3;
    case RAMIFY_ERR_INTERNAL: return 4;
    default: return 2;
  }
}

int report_error(ramify_status s) {
  std::fprintf(stderr, "ramify: %s\n", ramify_last_error());
  return exit_code(s);
}

struct Field {
  ramify_field* handle = nullptr;
  ~Field() { ramify_field_destroy(handle); }
};

struct Report {
  ramify_report* handle = nullptr;
  ~Report() { ramify_report_destroy(handle); }

  void print() const {
    std::fputs(ramify_report_text(handle), stdout);
    std::fputs(ramify_report_diagnostics(handle), stderr);
  }
};

std::string read_stdin() {
  return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants and Eisenstein templates of totally ramified p-adic extensions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ramify_version());

  const std::map<std::string, ramify_level> levels{
      {"ram", RAMIFY_LEVEL_RAM}, {"fine", RAMIFY_LEVEL_FINE}, {"res", RAMIFY_LEVEL_RES}, {"unif", RAMIFY_LEVEL_UNIF}};
  const std::map<std::string, ramify_format> formats{{"json", RAMIFY_FORMAT_JSON}, {"csv", RAMIFY_FORMAT_CSV}};
  unsigned threads = 1;

  FieldArgs enum_field;
  int64_t degree = 0;
  ramify_enumerate_options eopts;
  ramify_enumerate_options_init(&eopts);
  bool reduce = false, truncate = false, stats = false, expand = false;
  auto* enumerate = app.add_subcommand("enumerate", "list invariants of a given degree in canonical order");
  enum_field.add_to(enumerate);
  enumerate->add_option("--degree,-n", degree, "extension degree")->required();
  enumerate->add_option("--level", eopts.level, "invariant level (default ram)")
      ->transform(CLI::CheckedTransformer(levels, CLI::ignore_case))
      ->option_text("ram|fine|res|unif");
  enumerate->add_option("--format", eopts.format, "output format (default json)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("json|csv");
  enumerate->add_flag("--truncate", truncate, "cut templates at the Krasner bound");
  enumerate->add_flag("--reduce", reduce, "shrink digit sets by the change-of-uniformizer maps (unif)");
  enumerate->add_flag("--expand", expand, "list the polynomials of each template (fine, unif)");
  enumerate->add_flag("--stats", stats, "report branch counts");
  enumerate->add_option("--threads", threads, "worker threads")->envname("RAMIFY_THREADS");

  FieldArgs an_field;
  std::string polynomial;
  ramify_format an_format = RAMIFY_FORMAT_JSON;
  auto* analyze = app.add_subcommand("analyze", "invariants of one Eisenstein polynomial");
  an_field.add_to(analyze);
  analyze->add_option("polynomial", polynomial, "integer form like \"x^2-2\" (Q_p only), polynomial JSON, or - for stdin")
      ->required();
  analyze->add_option("--format", an_format, "output format (default json)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("json|csv");

  FieldArgs st_field;
  int64_t st_degree = 0, st_bound = 0;
  std::string fault = "none";
  auto* selftest = app.add_subcommand("selftest", "cross-check the enumerators against a brute-force survey");
  st_field.add_to(selftest);
  selftest->add_option("--degree,-n", st_degree, "survey this degree instead of the built-in cases");
  selftest->add_option("--bound", st_bound, "digit bound for --degree");
  selftest->add_option("--inject-fault", fault, "deliberately break a check (skip-ore2)")
      ->check(CLI::IsMember({"none", "skip-ore2"}));
  selftest->add_option("--threads", threads, "worker threads")->envname("RAMIFY_THREADS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Field field;
  Report report;
  ramify_status s = RAMIFY_OK;

  if (*enumerate) {
    if ((s = ramify_field_create(enum_field.p, enum_field.f, enum_field.e, enum_field.gamma.c_str(), &field.handle)))
      return report_error(s);
    eopts.reduce = reduce;
    eopts.truncate = truncate;
    eopts.expand = expand;
    eopts.stats = stats;
    eopts.threads = threads;
    s = ramify_enumerate(field.handle, degree, &eopts, &report.handle);
  } else if (*analyze) {
    if ((s = ramify_field_create(an_field.p, an_field.f, an_field.e, an_field.gamma.c_str(), &field.handle)))
      return report_error(s);
    if (polynomial == "-") polynomial = read_stdin();
    s = ramify_analyze(field.handle, polynomial.c_str(), an_format, &report.handle);
  } else {
    ramify_selftest_options sopts;
    ramify_selftest_options_init(&sopts);
    sopts.threads = threads;
    sopts.fault = fault == "skip-ore2" ? RAMIFY_FAULT_SKIP_ORE2 : RAMIFY_FAULT_NONE;
    ramify_survey_case custom{st_degree, st_bound};
    if (st_degree != 0 || st_bound != 0) {
      if ((s = ramify_field_create(st_field.p, st_field.f, st_field.e, st_field.gamma.c_str(), &field.handle)))
        return report_error(s);
      sopts.cases = &custom;
      sopts.case_count = 1;
      sopts.field = field.handle;
    }
    s = ramify_selftest(&sopts, &report.handle);
  }

  if (report.handle) report.print();
  if (s != RAMIFY_OK) return report_error(s);
  return 0;
}
