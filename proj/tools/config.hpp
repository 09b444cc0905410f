// Run configuration: a sectioned key = value file.
//
//   [lattice]        n_sites, boundary (dirichlet|periodic|infinite),
//                    window_halfwidth, coupling
//   [circuit]        inductance, electron_charge, capacitance, basis_halfwidth,
//                    units (natural|si)
//   [drive]          kind (constant|sinusoid|piecewise|sampled) and its
//                    parameters: value | amplitude, angular_frequency, phase |
//                    breakpoints, values | file
//   [initial_state]  site, or amplitudes (+ optional amplitudes_im)
//   [time]           t_final, dt, record_stride
//   [method]         name (oracle|su2|series|all), order, orders
//   [output]         dir
//   [algebra]        n_min, n_max, boundary
//
// Comments are full lines starting with '#' or ';'.
#ifndef TBDRIVE_TOOLS_CONFIG_HPP
#define TBDRIVE_TOOLS_CONFIG_HPP

#include "tbdrive/circuit.hpp"
#include "tbdrive/lattice.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbdrive::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialState {
  std::optional<int> site;
  std::vector<std::complex<double>> amplitudes;
};

struct RunConfig {
  std::optional<LatticeSpec> lattice;
  std::optional<CircuitSpec> circuit;
  std::optional<DriveProfile> drive;
  std::optional<InitialState> initial;
  std::optional<double> t_final;
  std::optional<double> dt;
  int record_stride = 1;
  std::string method = "oracle";
  int order = 2;
  std::vector<int> orders;
  std::optional<std::filesystem::path> output_dir;

  std::optional<int> algebra_n_min;
  std::optional<int> algebra_n_max;
  std::optional<Boundary> algebra_boundary;
};

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Normalised initial state on the lattice basis.
StateVector make_initial_state(const InitialState& init, const LatticeSpec& lattice);

}  // namespace tbdrive::cli

#endif  // TBDRIVE_TOOLS_CONFIG_HPP
