#include "tbdrive/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tbdrive {

ObservableSeries occupations(const PropagationResult& result) {
  ObservableSeries s;
  s.basis_offset = result.basis_offset;
  s.times = result.times;
  const auto steps = static_cast<Eigen::Index>(result.states.size());
  const Eigen::Index dim = steps == 0 ? 0 : result.states.front().size();
  s.occupations.resize(steps, dim);
  Eigen::VectorXd labels(dim);
  for (Eigen::Index r = 0; r < dim; ++r) labels(r) = static_cast<double>(result.basis_offset + r);
  for (Eigen::Index i = 0; i < steps; ++i) {
    const Eigen::VectorXd p = result.states[static_cast<std::size_t>(i)].cwiseAbs2();
    s.occupations.row(i) = p.transpose();
    const double total = p.sum();
    const double mean = labels.dot(p) / total;
    const double second = labels.cwiseAbs2().dot(p) / total;
    s.mean_position.push_back(mean);
    s.width.push_back(std::max(0.0, second - mean * mean));
    s.norm.push_back(std::sqrt(total));
  }
  return s;
}

std::string_view to_string(PeriodSignal s) {
  switch (s) {
    case PeriodSignal::Auto: return "auto";
    case PeriodSignal::MeanPosition: return "mean_position";
    case PeriodSignal::Width: return "width";
  }
  return "?";
}

namespace {

bool is_flat(std::span<const double> x) {
  if (x.empty()) return true;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return (*hi - *lo) <= 1e-9 * (1.0 + std::abs(*hi));
}

}  // namespace

PeriodEstimate dominant_period(std::span<const double> signal, double sample_spacing) {
  if (!(sample_spacing > 0.0)) throw std::invalid_argument("sample spacing must be positive");
  PeriodEstimate est;
  if (is_flat(signal)) return est;

  const std::size_t n = signal.size();
  const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(n);
  std::vector<double> x(n);
  std::transform(signal.begin(), signal.end(), x.begin(), [mean](double v) { return v - mean; });

  // Two full periods must fit, so lags beyond n/2 are not candidates.
  const std::size_t max_lag = n / 2;
  std::vector<double> r(max_lag + 2, 0.0);
  for (std::size_t k = 0; k < r.size() && k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += x[i] * x[i + k];
    r[k] = acc / static_cast<double>(n - k);
  }

  std::size_t k = 1;
  while (k <= max_lag && r[k] > 0.0) ++k;
  for (; k <= max_lag; ++k) {
    if (r[k] > 0.0 && r[k] >= r[k - 1] && r[k] > r[k + 1]) {
      const double denom = r[k - 1] - 2.0 * r[k] + r[k + 1];
      const double shift = denom != 0.0 ? 0.5 * (r[k - 1] - r[k + 1]) / denom : 0.0;
      est.oscillating = true;
      est.period = (static_cast<double>(k) + shift) * sample_spacing;
      return est;
    }
  }
  throw InsufficientSpan("insufficient span: fewer than two periods of the signal are covered");
}

PeriodEstimate bloch_period_estimate(const ObservableSeries& series, PeriodSignal which) {
  if (series.times.size() < 4) throw InsufficientSpan("insufficient span: fewer than four samples");
  const double spacing = series.times[1] - series.times[0];
  std::size_t n = series.times.size();
  // the final time is always recorded, possibly off the stride
  const double last_gap = series.times[n - 1] - series.times[n - 2];
  if (std::abs(last_gap - spacing) > 1e-9 * spacing) --n;
  PeriodSignal use = which;
  if (use == PeriodSignal::Auto) use = is_flat(series.mean_position) ? PeriodSignal::Width : PeriodSignal::MeanPosition;
  const auto& source = use == PeriodSignal::Width ? series.width : series.mean_position;
  auto est = dominant_period(std::span<const double>(source.data(), n), spacing);
  est.signal = use;
  return est;
}

}  // namespace tbdrive
