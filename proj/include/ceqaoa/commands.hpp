#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ceqaoa/common.hpp"

namespace ceqaoa {

enum class Command { Certify, Plan, Envelope, Feasibility, Rl, Simulate, Curves };

std::string to_string(Command c);
Command parse_command(const std::string& text);

// Everything a run depends on. Angles are radians unless `degrees` is set,
// in which case normalize_angles() converts them once before execution.
struct RunConfig {
  Command command = Command::Certify;
  std::string instance_path;
  std::string output_path;       // empty: caller prints the document
  std::string envelope_path;     // optional external initial diagonal
  std::string law_output_path;   // optional per-string CSV (certify, rl)
  std::string format = "json";   // envelope: json | csv

  std::optional<double> gamma;
  std::vector<double> gammas;
  std::vector<double> betas;
  int p = 1;
  double epsilon = 0.1;
  double eta = 0.5;
  std::string convention = "adjacency";
  std::string scope = "all";

  // plan
  std::optional<double> c_beta;
  std::optional<double> delta;
  std::optional<int> p_prime;
  double c_prime = 1.0;
  std::optional<double> r_op;

  // curves
  std::vector<double> deltas;
  int delta_points = 0;  // uniform grid k*pi/N, k = 1..N, when deltas is empty
  std::vector<int> orders;

  // feasibility
  int budget = 64;
  std::vector<int> feasibility_orders = {1, 2};

  // rl
  std::optional<double> half_width;
  int samples = 256;
  std::string averaging = "per_draw";

  // simulate
  std::uint64_t shots = 0;

  std::uint64_t seed = 0;
  std::size_t cap = kDefaultEnumerationCap;
  bool degrees = false;
};

void normalize_angles(RunConfig& config);

struct CommandOutput {
  std::string document;
  int exit_code = 0;
  std::map<std::string, std::string> side_files;  // path -> content
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitUncertifiable = 3;
inline constexpr int kExitCapExceeded = 4;

// Throws PreconditionError / CapExceededError; run_and_write maps them to exit codes.
CommandOutput run_command(const RunConfig& config);

// Runs the command, writes output files atomically, prints the document to
// stdout when no output path is set, and returns the process exit code.
int run_and_write(const RunConfig& config);

}  // namespace ceqaoa
