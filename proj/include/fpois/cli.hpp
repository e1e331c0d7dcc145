#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpois/report.hpp"

namespace fpois::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kInputError = 2, kInternalError = 3 };

/// One coefficient of a bivector or 2-form term, 1-based indices.
struct TermSpec {
  int order = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string coeff;
};

struct JobSpec {
  std::size_t dimension = 2;
  int truncation_order = 1;
  std::vector<TermSpec> pi;
  std::vector<TermSpec> b;
  std::string command;
  std::uint64_t seed = 0;
};

/// Throws ParseError on malformed input or violated invariants.
JobSpec parse_job(const std::string& text);

struct RunOptions {
  std::size_t cases = 20;
  unsigned threads = 1;
  std::vector<std::string> checks;
};

struct Report {
  std::string command;
  std::size_t dimension = 0;
  int truncation_order = 0;
  std::optional<std::uint64_t> seed;
  /// Named results in canonical text, in output order.
  std::vector<std::pair<std::string, std::string>> outputs;
  MoritaReport checks;
  bool internal_error = false;
  std::optional<double> timing_ms;

  int exit_code() const;
};

/// Runs `job.command`. Library errors propagate.
Report run_job(const JobSpec& job, const RunOptions& options);

std::string render_text(const Report& report);
std::string render_structured(const Report& report);

/// Full command line behaviour; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fpois::cli
