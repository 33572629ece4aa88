#pragma once

#include <cmath>

namespace emtact {

// Coil driver: a clamp into the drivable current range followed by a
// first-order lag. tau_s is chosen so the step response covers 99% of the
// way in 1 ms (tau = 0.001 / ln 100). extra_latency_s is transport delay
// downstream of the coil (driver pipeline), pure bookkeeping: it shifts
// when output is felt but carries no dynamics.
struct ActuatorModel {
  double tau_s = 0.001 / std::log(100.0);
  double i_min_a = -2.0;
  double i_max_a = 2.0;
  double rate_hz = 96000.0;
  double extra_latency_s = 0.0016;
};

struct ActuatorState {
  double current_a = 0.0;
};

// One update tick: exact discretization of the RC lag, so the result does
// not depend on dt being small.
//   I += (clamp(I_cmd) - I) * (1 - exp(-dt / tau))
ActuatorState actuator_step(const ActuatorModel& m, ActuatorState s,
                            double i_cmd_a, double dt_s);

// Time for the step response to reach 99% of its target: tau * ln(100).
double settle_time_99(const ActuatorModel& m);

// Small-signal magnitude response of the lag at f_hz:
//   |H(f)| = 1 / sqrt(1 + (2 pi f tau)^2)
double freq_response(const ActuatorModel& m, double f_hz);

// Command-to-skin latency: the 99% settle plus transport.
double total_output_latency(const ActuatorModel& m);

}  // namespace emtact
