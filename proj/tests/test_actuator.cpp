#include <cmath>
#include <numbers>

#include "doctest.h"
#include "emtact/actuator.hpp"

using namespace emtact;

namespace {

// Ticks until the state first covers 99% of a unit step, run at the model
// rate. Returns the elapsed time at that tick.
double empirical_settle_s(const ActuatorModel& m) {
  ActuatorState s;
  double dt = 1.0 / m.rate_hz;
  for (int k = 1; k < 1000000; ++k) {
    s = actuator_step(m, s, 1.0, dt);
    if (s.current_a >= 0.99) return k * dt;
  }
  return -1.0;
}

// Steady-state gain of a sinusoidal drive measured from the simulated
// response, skipping the transient.
double empirical_gain(const ActuatorModel& m, double f_hz) {
  ActuatorState s;
  double dt = 1.0 / m.rate_hz;
  double peak = 0.0;
  double t_end = 50.0 / f_hz + 20.0 * m.tau_s;
  double t_skip = t_end - 10.0 / f_hz;  // last 10 cycles only
  for (double t = 0.0; t < t_end; t += dt) {
    s = actuator_step(m, s, std::sin(2.0 * std::numbers::pi * f_hz * t), dt);
    if (t > t_skip) peak = std::max(peak, std::abs(s.current_a));
  }
  return peak;
}

}  // namespace

TEST_CASE("analytic settle time is 1 ms by construction") {
  ActuatorModel m;
  CHECK(settle_time_99(m) == doctest::Approx(0.001).epsilon(1e-12));
  // tau itself is about 0.217 ms
  CHECK(m.tau_s == doctest::Approx(0.000217147).epsilon(1e-4));
}

TEST_CASE("empirical settle matches analytic within one tick") {
  ActuatorModel m;
  double tick = 1.0 / m.rate_hz;
  CHECK(std::abs(empirical_settle_s(m) - 0.001) <= tick + 1e-12);

  // The legacy voice-coil build: 33 ms to settle.
  ActuatorModel legacy;
  legacy.tau_s = 0.033 / std::log(100.0);
  CHECK(settle_time_99(legacy) == doctest::Approx(0.033).epsilon(1e-12));
  CHECK(std::abs(empirical_settle_s(legacy) - 0.033) <= tick + 1e-12);
}

TEST_CASE("frequency response bands") {
  ActuatorModel m;
  // Flat through the audio band of the haptic loop.
  CHECK(freq_response(m, 50.0) >= 0.995);
  CHECK(freq_response(m, 400.0) == doctest::Approx(0.8778).epsilon(1e-3));
  CHECK(freq_response(m, 1000.0) == doctest::Approx(0.5912).epsilon(1e-3));
  // DC passes untouched, gain falls monotonically.
  CHECK(freq_response(m, 0.0) == 1.0);
  CHECK(freq_response(m, 400.0) > freq_response(m, 1000.0));

  // Legacy coil is already down badly at 50 Hz.
  ActuatorModel legacy;
  legacy.tau_s = 0.033 / std::log(100.0);
  CHECK(freq_response(legacy, 50.0) < 0.5);
}

TEST_CASE("empirical sinusoidal gain agrees with the analytic response") {
  ActuatorModel m;
  CHECK(empirical_gain(m, 400.0) ==
        doctest::Approx(freq_response(m, 400.0)).epsilon(5e-3));
  CHECK(empirical_gain(m, 1000.0) ==
        doctest::Approx(freq_response(m, 1000.0)).epsilon(5e-3));
  CHECK(empirical_gain(m, 50.0) >= 0.995);
}

TEST_CASE("exact discretization: two half steps equal one full step") {
  ActuatorModel m;
  ActuatorState a{0.3};
  ActuatorState b{0.3};
  double dt = 1.0 / m.rate_hz;
  a = actuator_step(m, a, 1.7, dt);
  b = actuator_step(m, b, 1.7, dt / 2.0);
  b = actuator_step(m, b, 1.7, dt / 2.0);
  CHECK(a.current_a == doctest::Approx(b.current_a).epsilon(1e-12));

  // And the closed form after n ticks.
  ActuatorState s;
  int n = 37;
  for (int k = 0; k < n; ++k) s = actuator_step(m, s, 1.0, dt);
  double expect = 1.0 - std::exp(-n * dt / m.tau_s);
  CHECK(s.current_a == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("commands clamp into the drivable range") {
  ActuatorModel m;
  ActuatorState s;
  double dt = 1.0 / m.rate_hz;
  for (int k = 0; k < 2000; ++k) s = actuator_step(m, s, 5.0, dt);
  CHECK(s.current_a == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s.current_a <= 2.0 + 1e-12);
  for (int k = 0; k < 2000; ++k) s = actuator_step(m, s, -99.0, dt);
  CHECK(s.current_a == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("total output latency is settle plus transport") {
  ActuatorModel m;
  CHECK(total_output_latency(m) == doctest::Approx(0.0026).epsilon(1e-12));
}
