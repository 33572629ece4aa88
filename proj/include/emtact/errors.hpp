#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace emtact {

// Query left the calibrated span of an axis (distance, current, intensity).
class RangeError : public std::out_of_range {
 public:
  RangeError(const std::string& axis, double value, double lo, double hi);

  const std::string& axis() const { return axis_; }
  double value() const { return value_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  std::string axis_;
  double value_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

// Requested force is outside what the current range can produce at this
// distance. Carries the clamped boundary current and the force it achieves.
class SaturationError : public std::runtime_error {
 public:
  SaturationError(double target_force_n, double boundary_current_a,
                  double achievable_force_n);

  double target_force_n() const { return target_force_n_; }
  double boundary_current_a() const { return boundary_current_a_; }
  double achievable_force_n() const { return achievable_force_n_; }

 private:
  double target_force_n_ = 0.0;
  double boundary_current_a_ = 0.0;
  double achievable_force_n_ = 0.0;
};

// Bad value passed to a constructor or generator (non-positive step,
// inverted range, alpha outside (0, 1], ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input (landscape CSV, scenario file, trace file).
// line() is 1-based; 0 means the error is not tied to a single line.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long line = 0);

  long line() const { return line_; }

 private:
  long line_ = 0;
};

// Semantic rejection of an otherwise well-formed input. Collects every
// violation so the user sees them all at once.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg);
  explicit ValidationError(const std::vector<std::string>& problems);

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Simulation state left any plausible physical envelope.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double t_s, double position_mm);

  double t_s() const { return t_s_; }
  double position_mm() const { return position_mm_; }

 private:
  double t_s_ = 0.0;
  double position_mm_ = 0.0;
};

}  // namespace emtact
