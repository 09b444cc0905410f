// tbdrive subcommands: simulate | compare | algebra-check | spectrum | circuit
//
// Exit codes: 0 success, 1 failed certification or runtime failure,
// 2 configuration error, 3 method not applicable to the lattice.
#ifndef TBDRIVE_TOOLS_COMMANDS_HPP
#define TBDRIVE_TOOLS_COMMANDS_HPP

#include "config.hpp"

#include <iosfwd>

namespace tbdrive::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInapplicable = 3;

struct Overrides {
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<int> order;
  std::optional<std::filesystem::path> out;
};

int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_algebra_check(int n_min, int n_max, Boundary boundary, const std::optional<std::filesystem::path>& out_dir,
                      std::ostream& out);
int cmd_spectrum(const RunConfig& config, std::ostream& out);
int cmd_circuit(const RunConfig& config, std::ostream& out);

void apply_overrides(RunConfig& config, const Overrides& o);

/// Entry point used by main(); errors are reported as one "error: ..." line on stderr.
int run(int argc, char** argv);

}  // namespace tbdrive::cli

#endif  // TBDRIVE_TOOLS_COMMANDS_HPP
