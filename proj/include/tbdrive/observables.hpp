// Observables of a propagation run and the CSV file formats.
#ifndef TBDRIVE_OBSERVABLES_HPP
#define TBDRIVE_OBSERVABLES_HPP

#include "tbdrive/propagators.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbdrive {

struct ObservableSeries {
  int basis_offset = 1;
  std::vector<double> times;
  /// occupations(step, row) = |<site|psi(t)>|^2
  Eigen::MatrixXd occupations;
  std::vector<double> mean_position;
  /// <N^2> - <N>^2 (normalised by the norm).
  std::vector<double> width;
  std::vector<double> norm;
  std::optional<std::vector<double>> fidelity_vs;
};

ObservableSeries occupations(const PropagationResult& result);

/// Raised when a signal is too short to contain two candidate periods.
class InsufficientSpan : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class PeriodSignal { Auto, MeanPosition, Width };

struct PeriodEstimate {
  bool oscillating = false;
  double period = 0.0;
  PeriodSignal signal = PeriodSignal::MeanPosition;
};

/// Dominant period of a uniformly sampled signal from the first
/// autocorrelation peak past its first zero crossing, refined by a parabola
/// through the three lags around the peak.
PeriodEstimate dominant_period(std::span<const double> signal, double sample_spacing);

/// Bloch period from the mean position. With Auto, a mean position that
/// stays constant (e.g. a packet started on one site, which only breathes)
/// falls back to the width, whose period is the same.
PeriodEstimate bloch_period_estimate(const ObservableSeries& series, PeriodSignal which = PeriodSignal::Auto);

std::string_view to_string(PeriodSignal s);

/// states.csv: t, re_<site>, im_<site> ..., norm, mean_n
std::string states_csv(const PropagationResult& result);
/// observables.csv: t, p_<site> ..., mean_n, width, norm[, fidelity]
std::string observables_csv(const ObservableSeries& series);

struct StatesTable {
  int basis_offset = 1;
  std::vector<double> times;
  std::vector<StateVector> states;
};
StatesTable parse_states_csv(const std::string& text);

/// Writes text with LF endings; throws on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace tbdrive

#endif  // TBDRIVE_OBSERVABLES_HPP
