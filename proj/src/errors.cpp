#include "emtact/errors.hpp"

#include "emtact/numeric.hpp"

namespace emtact {
namespace {

std::string range_message(const std::string& axis, double value, double lo,
                          double hi) {
  return axis + " " + format_sig6(value) + " outside calibrated span [" +
         format_sig6(lo) + ", " + format_sig6(hi) + "]";
}

std::string saturation_message(double target, double boundary,
                               double achievable) {
  return "force " + format_sig6(target) +
         " N is beyond current saturation: boundary " + format_sig6(boundary) +
         " A achieves only " + format_sig6(achievable) + " N";
}

std::string join_problems(const std::vector<std::string>& problems) {
  if (problems.empty()) return "validation failed";
  std::string msg = problems.front();
  for (std::size_t i = 1; i < problems.size(); ++i) msg += "\n" + problems[i];
  return msg;
}

}  // namespace

RangeError::RangeError(const std::string& axis, double value, double lo,
                       double hi)
    : std::out_of_range(range_message(axis, value, lo, hi)),
      axis_(axis),
      value_(value),
      lo_(lo),
      hi_(hi) {}

SaturationError::SaturationError(double target_force_n,
                                 double boundary_current_a,
                                 double achievable_force_n)
    : std::runtime_error(saturation_message(target_force_n, boundary_current_a,
                                            achievable_force_n)),
      target_force_n_(target_force_n),
      boundary_current_a_(boundary_current_a),
      achievable_force_n_(achievable_force_n) {}

ParseError::ParseError(const std::string& msg, long line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                  : msg),
      line_(line) {}

ValidationError::ValidationError(const std::string& msg)
    : std::runtime_error(msg), problems_{msg} {}

ValidationError::ValidationError(const std::vector<std::string>& problems)
    : std::runtime_error(join_problems(problems)), problems_(problems) {}

DivergenceError::DivergenceError(double t_s, double position_mm)
    : std::runtime_error("simulation diverged at t=" + format_sig6(t_s) +
                         " s, position " + format_sig6(position_mm) + " mm"),
      t_s_(t_s),
      position_mm_(position_mm) {}

}  // namespace emtact
