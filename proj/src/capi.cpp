#include "ramify/ramify.h"

#include <new>
#include <string>

#include "ramify/commands.hpp"
#include "ramify/error.hpp"

struct ramify_field {
  ramify::FieldSpec spec;
  ramify::BaseField field;
};

struct ramify_report {
  ramify::CommandResult result;
};

namespace {

thread_local std::string last_error;

ramify_status status_of(ramify::ErrorCode code) {
  switch (code) {
    case ramify::ErrorCode::InvalidArgument: return RAMIFY_ERR_INVALID_ARGUMENT;
    case ramify::ErrorCode::NotEisenstein: return RAMIFY_ERR_NOT_EISENSTEIN;
    case ramify::ErrorCode::GuardExceeded: return RAMIFY_ERR_GUARD_EXCEEDED;
    case ramify::ErrorCode::ResidueMismatch: return RAMIFY_ERR_RESIDUE_MISMATCH;
    case ramify::ErrorCode::Parse: return RAMIFY_ERR_PARSE;
    case ramify::ErrorCode::Internal: return RAMIFY_ERR_INTERNAL;
  }
  return RAMIFY_ERR_INTERNAL;
}

template <class Fn>
ramify_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const ramify::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RAMIFY_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RAMIFY_ERR_INTERNAL;
  }
}

ramify_status null_argument(const char* what) {
  last_error = std::string(what) + " must not be NULL";
  return RAMIFY_ERR_INVALID_ARGUMENT;
}

ramify::Level level_of(ramify_level l) {
  switch (l) {
    case RAMIFY_LEVEL_RAM: return ramify::Level::Ram;
    case RAMIFY_LEVEL_FINE: return ramify::Level::Fine;
    case RAMIFY_LEVEL_RES: return ramify::Level::Res;
    case RAMIFY_LEVEL_UNIF: return ramify::Level::Unif;
  }
  ramify::fail(ramify::ErrorCode::InvalidArgument, "unknown level");
}

ramify::Format format_of(ramify_format f) {
  switch (f) {
    case RAMIFY_FORMAT_JSON: return ramify::Format::Json;
    case RAMIFY_FORMAT_CSV: return ramify::Format::Csv;
  }
  ramify::fail(ramify::ErrorCode::InvalidArgument, "unknown output format");
}

}  // namespace

extern "C" {

const char* ramify_version(void) { return "0.1.0"; }

const char* ramify_last_error(void) { return last_error.c_str(); }

ramify_status ramify_field_create(int64_t p, int f, int e, const char* gamma, ramify_field** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ramify::FieldSpec spec{p, f, e, gamma ? gamma : "1"};
    *out = new ramify_field{spec, ramify::make_field(spec)};
    return RAMIFY_OK;
  });
}

void ramify_field_destroy(ramify_field* field) { delete field; }

int64_t ramify_field_order(const ramify_field* field) { return field ? field->field.q() : 0; }

void ramify_enumerate_options_init(ramify_enumerate_options* opts) {
  if (opts) *opts = ramify_enumerate_options{RAMIFY_LEVEL_RAM, RAMIFY_FORMAT_JSON, 0, 0, 0, 0, 1};
}

ramify_status ramify_enumerate(const ramify_field* field, int64_t degree, const ramify_enumerate_options* opts,
                               ramify_report** out) {
  if (!field) return null_argument("field");
  if (!opts) return null_argument("opts");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ramify::RunConfig config;
    config.field = field->spec;
    config.n = degree;
    config.level = level_of(opts->level);
    config.format = format_of(opts->format);
    config.reduce = opts->reduce != 0;
    config.truncate = opts->truncate != 0;
    config.expand = opts->expand != 0;
    config.stats = opts->stats != 0;
    config.threads = opts->threads;
    *out = new ramify_report{ramify::cmd_enumerate(config)};
    return RAMIFY_OK;
  });
}

ramify_status ramify_analyze(const ramify_field* field, const char* polynomial, ramify_format format,
                             ramify_report** out) {
  if (!field) return null_argument("field");
  if (!polynomial) return null_argument("polynomial");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ramify::RunConfig config;
    config.field = field->spec;
    config.format = format_of(format);
    *out = new ramify_report{ramify::cmd_analyze(config, polynomial)};
    return RAMIFY_OK;
  });
}

void ramify_selftest_options_init(ramify_selftest_options* opts) {
  if (opts) *opts = ramify_selftest_options{nullptr, 0, nullptr, RAMIFY_FAULT_NONE, 1};
}

ramify_status ramify_selftest(const ramify_selftest_options* opts, ramify_report** out) {
  if (!opts) return null_argument("opts");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ramify::SelftestConfig config;
    config.threads = opts->threads;
    config.validity.skip_ore2 = opts->fault == RAMIFY_FAULT_SKIP_ORE2;
    if (opts->case_count > 0) {
      if (!opts->cases || !opts->field) ramify::fail(ramify::ErrorCode::InvalidArgument, "custom cases need cases and field");
      for (size_t i = 0; i < opts->case_count; ++i)
        config.cases.push_back({opts->field->spec, opts->cases[i].n, opts->cases[i].digit_bound});
    }
    *out = new ramify_report{ramify::cmd_selftest(config)};
    if (!(*out)->result.ok) {
      last_error = "selftest found mismatches";
      return RAMIFY_ERR_CHECK_FAILED;
    }
    return RAMIFY_OK;
  });
}

const char* ramify_report_text(const ramify_report* report) { return report ? report->result.output.c_str() : ""; }

const char* ramify_report_diagnostics(const ramify_report* report) {
  return report ? report->result.diagnostics.c_str() : "";
}

uint64_t ramify_report_results(const ramify_report* report) { return report ? report->result.results : 0; }

uint64_t ramify_report_branches(const ramify_report* report) { return report ? report->result.branches : 0; }

void ramify_report_destroy(ramify_report* report) { delete report; }

}  // extern "C"
