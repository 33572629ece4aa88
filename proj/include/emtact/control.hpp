#pragma once

#include <string>

#include "emtact/landscape.hpp"

namespace emtact {

// Scalar setpoint over time for the tracking/open-loop modes.
//   const:V         constant V
//   step:T_MS:V0:V1 V0 until T_MS, V1 after
struct SignalProfile {
  enum class Kind { constant, step };
  Kind kind = Kind::constant;
  double v0 = 0.0;
  double v1 = 0.0;
  double t_step_s = 0.0;
};

double profile_value(const SignalProfile& p, double t_s);
SignalProfile parse_profile(const std::string& text);

struct ControllerConfig {
  enum class Mode { passive_surface, force_track, vibro, open_loop };

  Mode mode = Mode::passive_surface;
  SignalProfile profile;   // force target (N) for force_track,
                           // current (A) for open_loop
  double vibro_dc_n = 0.0;
  double vibro_amp_n = 0.1;
  double vibro_freq_hz = 200.0;  // validated <= 1000 (driver passband)
};

ControllerConfig::Mode parse_controller_mode(const std::string& text);

// Only the vibro oscillator carries state between updates. Accumulating
// phase (rather than evaluating sin(2 pi f t)) keeps the waveform
// continuous if the update cadence ever jitters.
struct ControlState {
  double phase_rad = 0.0;
};

struct ControlResult {
  double i_cmd_a = 0.0;
  bool saturated = false;  // force request fell outside the reachable span
};

// One controller update at the sensor cadence. d_est_mm must already be
// clamped into the grid span; dt_s is the time since the previous update.
//
//   passive_surface  null the field: solve F = 0 at d_est
//   force_track      solve F = profile(t) at d_est
//   vibro            solve F = dc + amp * sin(phase) at d_est
//   open_loop        command profile(t) amps directly
ControlResult control_update(const ControllerConfig& cfg, ControlState& st,
                             const ForceLandscape& g, double d_est_mm,
                             double t_s, double dt_s);

// Approach speed to event strength: silent below v_min, then a power-law
// ramp from a_min at v_min to a_max at v_ref, clamped above. The default
// floor/ceiling of 0 and 1 make it the plain normalized map; raise a_min
// when a barely-triggering tap should still be audible.
struct TriggerMap {
  double v_min_mm_s = 50.0;
  double v_ref_mm_s = 1000.0;
  double a_min = 0.0;
  double a_max = 1.0;
  double gamma = 1.0;
};

double trigger_amplitude(const TriggerMap& m, double v_mm_s);

}  // namespace emtact
