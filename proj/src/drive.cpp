#include "tbdrive/drive.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tbdrive {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_increasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw std::invalid_argument(std::string(what) + " must be strictly increasing");
  }
}

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " contains a non-finite value");
  }
}

// integral of a piecewise-constant function from 0 to t (t may be any sign)
double piecewise_integral(const PiecewiseConstantDrive& p, double t) {
  const auto segment_value = [&](double x) {
    const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), x);
    return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
  };
  double lo = std::min(0.0, t);
  double hi = std::max(0.0, t);
  double acc = 0.0;
  double cursor = lo;
  for (double b : p.breakpoints) {
    if (b <= cursor) continue;
    if (b >= hi) break;
    acc += segment_value(cursor) * (b - cursor);
    cursor = b;
  }
  acc += segment_value(cursor) * (hi - cursor);
  return t >= 0.0 ? acc : -acc;
}

}  // namespace

DriveProfile::DriveProfile(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const ConstantDrive& c) {
                   if (!std::isfinite(c.value)) throw std::invalid_argument("constant drive must be finite");
                 },
                 [](const SinusoidDrive& s) {
                   if (!std::isfinite(s.amplitude) || !std::isfinite(s.angular_frequency) || !std::isfinite(s.phase)) {
                     throw std::invalid_argument("sinusoid drive parameters must be finite");
                   }
                 },
                 [](const PiecewiseConstantDrive& p) {
                   if (p.values.size() != p.breakpoints.size() + 1) {
                     throw std::invalid_argument("piecewise drive needs exactly one more value than breakpoints");
                   }
                   require_increasing(p.breakpoints, "piecewise breakpoints");
                   require_finite(p.breakpoints, "piecewise breakpoints");
                   require_finite(p.values, "piecewise values");
                 },
                 [this](const SampledDrive& s) {
                   if (s.times.empty() || s.times.size() != s.values.size()) {
                     throw std::invalid_argument("sampled drive needs equally sized, non-empty time and value columns");
                   }
                   require_increasing(s.times, "sampled time grid");
                   require_finite(s.times, "sampled time grid");
                   require_finite(s.values, "sampled values");
                   cumulative_.assign(s.times.size(), 0.0);
                   for (std::size_t i = 1; i < s.times.size(); ++i) {
                     cumulative_[i] = cumulative_[i - 1] + 0.5 * (s.values[i] + s.values[i - 1]) * (s.times[i] - s.times[i - 1]);
                   }
                 },
             },
             kind_);
}

double DriveProfile::force_at(double t) const {
  return std::visit(overloaded{
                        [](const ConstantDrive& c) { return c.value; },
                        [t](const SinusoidDrive& s) { return s.amplitude * std::sin(s.angular_frequency * t + s.phase); },
                        [t](const PiecewiseConstantDrive& p) {
                          const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t);
                          return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
                        },
                        [t](const SampledDrive& s) {
                          if (t <= s.times.front()) return s.values.front();
                          if (t >= s.times.back()) return s.values.back();
                          const auto hi = static_cast<std::size_t>(std::upper_bound(s.times.begin(), s.times.end(), t) - s.times.begin());
                          const std::size_t lo = hi - 1;
                          const double w = (t - s.times[lo]) / (s.times[hi] - s.times[lo]);
                          return (1.0 - w) * s.values[lo] + w * s.values[hi];
                        },
                    },
                    kind_);
}

double DriveProfile::sampled_antiderivative(double t) const {
  const auto& s = std::get<SampledDrive>(kind_);
  if (t <= s.times.front()) return s.values.front() * (t - s.times.front());
  if (t >= s.times.back()) return cumulative_.back() + s.values.back() * (t - s.times.back());
  const auto hi = static_cast<std::size_t>(std::upper_bound(s.times.begin(), s.times.end(), t) - s.times.begin());
  const std::size_t lo = hi - 1;
  return cumulative_[lo] + 0.5 * (s.values[lo] + force_at(t)) * (t - s.times[lo]);
}

double DriveProfile::phi_at(double t) const {
  if (t < 0.0) throw std::invalid_argument("phi(t) is defined for t >= 0 only");
  if (t == 0.0) return 0.0;
  return std::visit(overloaded{
                        [t](const ConstantDrive& c) { return c.value * t; },
                        [t](const SinusoidDrive& s) {
                          if (s.angular_frequency == 0.0) return s.amplitude * std::sin(s.phase) * t;
                          return s.amplitude * (std::cos(s.phase) - std::cos(s.angular_frequency * t + s.phase)) /
                                 s.angular_frequency;
                        },
                        [t](const PiecewiseConstantDrive& p) { return piecewise_integral(p, t); },
                        [this, t](const SampledDrive&) { return sampled_antiderivative(t) - sampled_antiderivative(0.0); },
                    },
                    kind_);
}

DriveProfile DriveProfile::rescaled(double factor, double time_unit) const {
  if (!(time_unit > 0.0) || !std::isfinite(time_unit)) throw std::invalid_argument("time unit must be positive");
  return std::visit(overloaded{
                        [factor](ConstantDrive c) { return DriveProfile(ConstantDrive{c.value * factor}); },
                        [factor, time_unit](SinusoidDrive s) {
                          s.amplitude *= factor;
                          s.angular_frequency *= time_unit;
                          return DriveProfile(s);
                        },
                        [factor, time_unit](PiecewiseConstantDrive p) {
                          for (auto& v : p.values) v *= factor;
                          for (auto& b : p.breakpoints) b /= time_unit;
                          return DriveProfile(std::move(p));
                        },
                        [factor, time_unit](SampledDrive s) {
                          for (auto& v : s.values) v *= factor;
                          for (auto& t : s.times) t /= time_unit;
                          return DriveProfile(std::move(s));
                        },
                    },
                    kind_);
}

bool DriveProfile::is_zero() const {
  return std::visit(overloaded{
                        [](const ConstantDrive& c) { return c.value == 0.0; },
                        [](const SinusoidDrive& s) { return s.amplitude == 0.0; },
                        [](const PiecewiseConstantDrive& p) {
                          return std::all_of(p.values.begin(), p.values.end(), [](double v) { return v == 0.0; });
                        },
                        [](const SampledDrive& s) {
                          return std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; });
                        },
                    },
                    kind_);
}

std::string DriveProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const ConstantDrive& c) { os << "constant(F=" << c.value << ")"; },
                 [&](const SinusoidDrive& s) {
                   os << "sinusoid(A=" << s.amplitude << ", omega=" << s.angular_frequency << ", phase=" << s.phase << ")";
                 },
                 [&](const PiecewiseConstantDrive& p) { os << "piecewise(" << p.values.size() << " segments)"; },
                 [&](const SampledDrive& s) { os << "sampled(" << s.times.size() << " points, linear)"; },
             },
             kind_);
  return os.str();
}

DriveProfile load_sampled_drive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open drive file " + path.string());
  std::vector<double> times;
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double t = 0.0;
    double f = 0.0;
    if (!(ls >> t >> f)) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("malformed drive row in " + path.string() + ": '" + line + "'");
    }
    first = false;
    times.push_back(t);
    values.push_back(f);
  }
  return DriveProfile::sampled(std::move(times), std::move(values));
}

}  // namespace tbdrive
