#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "galilax/linalg.hpp"

namespace galilax::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInputError = 2, kIntegrationFailure = 3 };

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Reads GALILAX_LOG: error|warn|info|debug or 0..3; default warn.
LogLevel log_level_from_env();

class Logger {
 public:
  Logger(LogLevel level, std::ostream& sink) : level_(level), sink_(&sink) {}
  void log(LogLevel level, const std::string& msg) const;
  void info(const std::string& msg) const { log(LogLevel::info, msg); }
  void debug(const std::string& msg) const { log(LogLevel::debug, msg); }
  void warn(const std::string& msg) const { log(LogLevel::warn, msg); }
  void error(const std::string& msg) const { log(LogLevel::error, msg); }

 private:
  LogLevel level_;
  std::ostream* sink_;
};

struct Options {
  std::string config;
  std::uint64_t seed = 7;
  std::string out;  // empty: current directory for simulate, stdout only otherwise
  std::optional<std::string> mode;
  double tol = kRankTol;
  int trials = 100;
  // classify
  int m = 0;
  int p = 0;
  int q = 0;
  std::vector<double> omega;
  // tables
  int n = 3;
  bool spatial = false;
  // verify
  std::string suite;
};

int cmd_simulate(const Options& o, std::ostream& out, const Logger& log);
int cmd_invariants(const Options& o, std::ostream& out, const Logger& log);
int cmd_classify(const Options& o, std::ostream& out, const Logger& log);
int cmd_tables(const Options& o, std::ostream& out, const Logger& log);
int cmd_verify(const Options& o, std::ostream& out, const Logger& log);

/// Runs a command, mapping library errors to exit codes: input and
/// classification errors give 2, collisions and integration failures 3.
int run_guarded(const std::function<int()>& command, std::ostream& err);

}  // namespace galilax::cli
