// Driving force F(t) and its running integral phi(t) = int_0^t F.
#ifndef TBDRIVE_DRIVE_HPP
#define TBDRIVE_DRIVE_HPP

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace tbdrive {

struct ConstantDrive {
  double value = 0.0;
};

/// F(t) = amplitude * sin(angular_frequency * t + phase)
struct SinusoidDrive {
  double amplitude = 0.0;
  double angular_frequency = 0.0;
  double phase = 0.0;
};

/// values[i] holds on [breakpoints[i-1], breakpoints[i]); values.size() == breakpoints.size() + 1.
struct PiecewiseConstantDrive {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// Linear interpolation on a strictly increasing grid, clamped outside it.
struct SampledDrive {
  std::vector<double> times;
  std::vector<double> values;
};

class DriveProfile {
 public:
  using Kind = std::variant<ConstantDrive, SinusoidDrive, PiecewiseConstantDrive, SampledDrive>;

  DriveProfile() : DriveProfile(ConstantDrive{}) {}
  explicit DriveProfile(Kind kind);

  static DriveProfile constant(double value) { return DriveProfile(ConstantDrive{value}); }
  static DriveProfile sinusoid(double amplitude, double angular_frequency, double phase = 0.0) {
    return DriveProfile(SinusoidDrive{amplitude, angular_frequency, phase});
  }
  static DriveProfile piecewise(std::vector<double> breakpoints, std::vector<double> values) {
    return DriveProfile(PiecewiseConstantDrive{std::move(breakpoints), std::move(values)});
  }
  static DriveProfile sampled(std::vector<double> times, std::vector<double> values) {
    return DriveProfile(SampledDrive{std::move(times), std::move(values)});
  }

  const Kind& kind() const { return kind_; }

  double force_at(double t) const;
  /// Exact for every kind (the sampled interpolant is piecewise linear, so
  /// its trapezoidal integral is exact). Throws for t < 0.
  double phi_at(double t) const;

  /// G(s) = factor * F(s * time_unit): the profile re-expressed in a new
  /// force and time unit. rescaled(c) multiplies F by c.
  DriveProfile rescaled(double factor, double time_unit = 1.0) const;

  bool is_zero() const;
  std::string describe() const;

 private:
  double sampled_antiderivative(double t) const;

  Kind kind_;
  std::vector<double> cumulative_;  // sampled: integral from times[0] to times[i]
};

/// Two-column CSV (time, force); a non-numeric first line is taken as a header.
DriveProfile load_sampled_drive(const std::filesystem::path& path);

}  // namespace tbdrive

#endif  // TBDRIVE_DRIVE_HPP
