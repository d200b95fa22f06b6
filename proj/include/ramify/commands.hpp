#pragma once

// Command implementations behind the C API: enumerate, analyze, selftest.
// Each returns the rendered report; configuration problems throw Error.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ramify/enumeration.hpp"

namespace ramify {

enum class Format { Json, Csv };

struct FieldSpec {
  std::int64_t p = 2;
  int f = 1;
  int e = 1;
  std::string gamma = "1";
};

struct RunConfig {
  FieldSpec field;
  std::int64_t n = 0;
  Level level = Level::Ram;
  Format format = Format::Json;
  bool reduce = false;
  bool truncate = false;
  bool stats = false;
  bool expand = false;
  unsigned threads = 1;
};

/// Upper bound on the number of polynomials one enumerate run may expand.
inline constexpr std::uint64_t kExpandGuard = std::uint64_t{1} << 22;

struct SurveyCase {
  FieldSpec field;
  std::int64_t n = 0;
  std::int64_t bound = 0;
};

struct SelftestConfig {
  std::vector<SurveyCase> cases;
  ValidityOptions validity;
  unsigned threads = 1;
};

/// Q_2 degrees 2 and 4, Q_3 degree 3.
std::vector<SurveyCase> default_survey_cases();

struct CommandResult {
  std::string output;
  /// Diff reports and CSV-mode statistics.
  std::string diagnostics;
  std::uint64_t results = 0;
  std::uint64_t branches = 0;
  bool ok = true;
};

BaseField make_field(const FieldSpec& spec);

CommandResult cmd_enumerate(const RunConfig& config);
/// `input` is either the integer form (Q_p only) or polynomial JSON.
CommandResult cmd_analyze(const RunConfig& config, std::string_view input);
/// ok is false if any cross check fails.
CommandResult cmd_selftest(const SelftestConfig& config);

}  // namespace ramify
