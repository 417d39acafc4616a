#pragma once

// Command implementations behind the `elion` executable. Each builder returns
// the CSV table for its flags; run_cli parses argv, writes the table and its
// manifest, and maps failures onto exit codes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elion/app/output.hpp"

namespace elion::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain or I/O error
inline constexpr int kExitUsage = 2;    // flag-parse error

struct TrapArgs {
  double trap_mhz = 0.5;
  bool cyclic = false;  // treat the MHz figure as cyclic (multiply by 2 pi)
};

struct PhaseProfileArgs {
  double energy_ev = 100.0;
  TrapArgs trap;
  double alpha = 0.0;  // ion displacement along x
  double b_max = 5.0;  // in units of R0
  int points = 201;
  unsigned threads = 1;
};
CsvTable phase_profile_table(const PhaseProfileArgs& args);

struct FlipProbArgs {
  std::vector<double> energies_ev{100.0, 300.0, 1000.0};
  TrapArgs trap;
  double alpha_max = 10.0;
  int points = 101;
  unsigned threads = 1;
};
CsvTable flip_prob_table(const FlipProbArgs& args);

struct BackactionMapArgs {
  double energy_ev = 100.0;
  double chi_max = 0.01;
  double b_max = 3.0;  // in units of R0
  int grid = 61;
  unsigned threads = 1;
};
CsvTable backaction_map_table(const BackactionMapArgs& args);

struct FisherArgs {
  double eps = 0.01;
  int n_max = 500;
  bool eps_sweep = false;
  double eps_max = 0.6;
  int points = 60;
  std::optional<double> g;  // adds a nonideal_F column to the n table
  double phi = 0.0;
};
CsvTable fisher_table(const FisherArgs& args);

struct ProtocolSimArgs {
  int n = 1;
  double eps = 0.0;
  double g = 3.14159265358979323846;
  double phi = 0.0;
  std::optional<double> phi_estimate;
  long trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};
CsvTable protocol_sim_table(const ProtocolSimArgs& args);

// Full command-line entry point. Diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace elion::app
