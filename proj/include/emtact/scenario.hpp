#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "emtact/actuator.hpp"
#include "emtact/control.hpp"
#include "emtact/landscape.hpp"
#include "emtact/physics.hpp"
#include "emtact/predictor.hpp"
#include "emtact/sensor.hpp"
#include "emtact/trajectory.hpp"

namespace emtact {

// Everything one simulation run needs. Parsed from a strict INI file:
// '#' comments, [section] headers, key = value lines. Unknown sections or
// keys are errors (all of them reported at once), as are malformed values.
// Only [run] with a positive duration_s is mandatory; everything else
// falls back to the defaults in the component structs.
//
// Sections and keys:
//   [landscape] file | a b d0_mm d_min_mm d_max_mm d_step_mm
//               i_min_a i_max_a i_step_a noise_sigma_n seed
//   [sensor]    s_max falloff_mm range_max_mm resolution_mm rate_hz
//               latency_ms noise_sigma
//   [actuator]  tau_ms i_min_a i_max_a extra_latency_ms initial_current_a
//   [finger]    mass_kg k_f c_f gravity k_c c_c
//               start_distance_mm start_velocity_mm_s intent
//   [controller] mode profile vibro_dc_n vibro_amp_n vibro_freq_hz
//   [predictor] enabled d_threshold_mm l_out_audio_ms v_min_mm_s ema_alpha
//               pos_alpha rearm_mm compensate_input_latency
//               trigger_v_min trigger_v_ref trigger_a_min trigger_a_max
//               trigger_gamma
//   [run]       duration_s seed trace_decimation out
struct Scenario {
  std::string landscape_file;  // empty: generate from synth params
  SyntheticLandscapeParams synth;

  SensorModel sensor;

  ActuatorModel actuator;
  double actuator_initial_a = 0.0;

  FingerModel finger;
  ContactModel contact;
  IntentTrajectory intent;
  double start_distance_mm = 35.0;
  double start_velocity_mm_s = 0.0;

  ControllerConfig controller;

  bool predictor_enabled = false;
  PredictorConfig predictor;  // l_in / l_out_tactile are derived at build
  TriggerMap trigger;

  double duration_s = 0.0;
  std::uint64_t seed = 0;
  long trace_decimation = 20;  // record every Nth tick
  std::string out_path;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

// Cross-field checks that don't need the landscape (positive rates, tick
// divisibility, vibro passband, trigger map ordering, ...). Throws
// ValidationError listing every failure. parse_scenario calls this.
void validate_scenario(const Scenario& s);

}  // namespace emtact
