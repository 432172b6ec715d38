#pragma once

// The end-to-end pipelines behind the CLI subcommands. Each returns the text
// to emit and the process exit status; hard failures throw epigauge::Error.

#include <optional>
#include <string>
#include <vector>

#include "epigauge/error.hpp"
#include "epigauge/problem.hpp"

namespace epigauge {

enum ExitStatus : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitOracleCap = 4,
  kExitInconsistent = 5,
};

int exit_status(ErrorKind kind) noexcept;

inline constexpr int kRecordSchemaVersion = 1;

struct RunOptions {
  std::optional<double> grid_step;   // overrides the problem's grid.step
  std::optional<double> level_step;  // overrides grid.level_step
  unsigned threads = 1;
  bool csv = false;
  std::optional<std::string> timestamp;  // fixed record timestamp; current UTC time otherwise
};

struct CommandResult {
  int status = kExitOk;
  std::string output;  // report, record or CSV depending on the command
  std::string csv;     // tabular companion output, may be empty
};

CommandResult cmd_gauge(const ProblemSpec& spec, const RunOptions& opts);
CommandResult cmd_certify(const ProblemSpec& spec, const RunOptions& opts);
CommandResult cmd_sweep(const ProblemSpec& spec, const std::optional<std::vector<double>>& deltas,
                        const RunOptions& opts);

struct DemoParams {
  double R = 1.0;
  double M = 2.0;
  double A = 5.0;
  double mu = 2.0;
  std::vector<double> queries;  // one-dimensional query points for the impossibility demo
  std::optional<double> y;
  std::vector<double> deltas;   // sharpness demo; default 8 log-spaced values over [1e-5, 1e-2]
};

/// name is one of "impossibility", "sharpness", "strictness".
CommandResult cmd_demo(const std::string& name, const DemoParams& params, const RunOptions& opts);

/// Removes the timestamp line from a record so two runs can be compared.
std::string strip_timestamp(const std::string& record);

}  // namespace epigauge
