#include "emtact/actuator.hpp"

#include "emtact/errors.hpp"
#include "emtact/numeric.hpp"

namespace emtact {

ActuatorState actuator_step(const ActuatorModel& m, ActuatorState s,
                            double i_cmd_a, double dt_s) {
  if (!(m.tau_s > 0.0)) throw ParameterError("actuator tau must be > 0");
  if (!(dt_s > 0.0)) throw ParameterError("actuator dt must be > 0");
  double target = clamp(i_cmd_a, m.i_min_a, m.i_max_a);
  s.current_a += (target - s.current_a) * (1.0 - std::exp(-dt_s / m.tau_s));
  return s;
}

double settle_time_99(const ActuatorModel& m) {
  return m.tau_s * std::log(100.0);
}

double freq_response(const ActuatorModel& m, double f_hz) {
  double w = 2.0 * 3.14159265358979323846 * f_hz * m.tau_s;
  return 1.0 / std::sqrt(1.0 + w * w);
}

double total_output_latency(const ActuatorModel& m) {
  return settle_time_99(m) + m.extra_latency_s;
}

}  // namespace emtact
