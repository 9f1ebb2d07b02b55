#pragma once

// Command implementations behind the `qbrach` executable. Each command
// returns its documents as strings together with the process exit status so
// that tests can drive them without spawning a process.
//
// Exit statuses: 0 success, 1 usage/parse error, 2 domain error, 3 I/O error.

#include <optional>
#include <string>
#include <vector>

#include "qbrach/algebra.hpp"

namespace qbrach::cli {

enum class Method { Mostafazadeh, Bender, Both };

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_domain = 2;
inline constexpr int exit_io = 3;

struct PlanRequest {
  QubitState initial;
  QubitState target;
  double energy_budget = 1.0;  // E for mostafazadeh and both, omega for bender
  Method method = Method::Mostafazadeh;
  bool rotate_frame = false;
  double hbar = 1.0;
};

struct TraceOptions {
  int samples = 2;
  int steps = 10000;
  std::optional<std::string> out_path;
};

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct CompareRequest {
  GridAxis b_mod{0.1, 0.9, 9};
  GridAxis omega{0.1, 10.0, 9};
  double arg_a = pi / 4.0;
  double arg_b = pi / 3.0;
};

struct CommandResult {
  int exit_code = exit_ok;
  std::string out;  // standard output
  std::string err;  // standard error
};

CommandResult cmd_plan(const PlanRequest& req);
CommandResult cmd_trace(const PlanRequest& req, const TraceOptions& opts);
CommandResult cmd_compare(const CompareRequest& req);

// Full command line: parses argv, dispatches, and returns the result.
CommandResult run(const std::vector<std::string>& args);

// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace qbrach::cli
