#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "simplex_angles/conditions.hpp"

namespace simplex_angles {

enum ExitStatus : int { kExitPass = 0, kExitViolation = 1, kExitUsage = 2 };

inline constexpr Index kMaxCliDimension = 6;

struct ScheduleSpec {
  double start = 0.5;
  double factor = 0.5;
  int count = 20;
};

// "start,factor,count"; throws std::invalid_argument.
ScheduleSpec parse_schedule(const std::string& text);

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string format;
  Thresholds thresholds;
  Index dim = 3;
  std::string family = "regular";
  ScheduleSpec schedule;
  std::uint64_t seed = 0;
  int trials = 1000;
  int lattice_order = 20;
  Index cells = 1;
};

// Entry point of the command line tool. Reports go to `out` (or --output),
// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_study(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_interp_study(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace simplex_angles
