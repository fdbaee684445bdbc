#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace seqspace {

/// Command-line level options; they override job-file defaults but not
/// per-task parameters.
struct RunOptions {
  std::optional<std::int64_t> horizon;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;  // write the full report here
};

/// Exit codes: 0 all verdict-producing tasks hold, 2 some task fails,
/// 3 some task is inconclusive and none fails, 1 usage or parse errors.
struct RunResult {
  int exit_code = 0;
  std::string report_json;  // full report, including timing
  std::string body_json;    // golden-comparable body (timing stripped)
};

RunResult run_job_file(const std::string& path, const RunOptions& options = {});
RunResult run_job_text(const std::string& text, const RunOptions& options = {});

/// Runs the oracle battery and renders its report. Exit code 0 on zero
/// failures, 2 otherwise.
RunResult run_verify(const RunOptions& options = {});

/// The deterministic comparison body: the report without its timing section.
std::string strip_timing(const std::string& report_json);

}  // namespace seqspace
