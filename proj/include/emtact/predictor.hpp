#pragma once

namespace emtact {

// Impact prediction. The sensor path is late by l_in_s and the output
// paths by l_out_*; the predictor buys that time back by extrapolating the
// approach and issuing events early, so the perceived onset lands on the
// physical contact.
//
// Sign convention: velocities here are approach speeds, positive toward
// the surface (v = -d_dot).
struct PredictorConfig {
  double d_threshold_mm = 0.0;    // where "contact" is declared
  double l_in_s = 0.0018;         // sensor transport delay to compensate
  double l_out_audio_s = 0.005;
  double l_out_tactile_s = 0.0026;
  double v_min_mm_s = 50.0;       // below this, no prediction
  double ema_alpha = 0.05;        // velocity smoothing
  double pos_alpha = 0.3;         // position pre-smoothing (see predictor.cpp)
  double rearm_distance_mm = 5.0; // retreat past threshold + this to rearm
  bool compensate_input_latency = true;
};

struct PredictorState {
  bool has_sample = false;
  double last_t_s = 0.0;
  double last_d_mm = 0.0;
  double v_est_mm_s = 0.0;
  double d_smooth_mm = 0.0;
  double period_s = 0.0;  // spacing of the last two samples
};

// Feed one measurement; returns the updated EMA approach speed. The raw
// backward difference (d_prev - d_now) / dt is positive when closing in.
double estimate_velocity(const PredictorConfig& cfg, PredictorState& st,
                         double t_s, double d_meas_mm);

// Quantization-suppressed distance with the smoother's group delay backed
// out under the constant-velocity assumption. This is what the engine
// extrapolates from.
double smoothed_distance(const PredictorConfig& cfg,
                         const PredictorState& st);

struct ImpactPrediction {
  enum class Outcome {
    none,       // not approaching fast enough to call
    scheduled,  // crossing is ahead: intended_onset_s is valid
    immediate   // threshold already crossed once latency is backed out
  };

  Outcome outcome = Outcome::none;
  double intended_onset_s = 0.0;
};

// Pure extrapolation: back out the input latency (d_hat = d - v * l_in),
// then solve d_hat - v * (t_onset - t_now) = threshold. No state, no
// side effects; arming and scheduling live in the engine.
ImpactPrediction predict_impact(const PredictorConfig& cfg, double t_now_s,
                                double d_mm, double v_est_mm_s);

// Issue times for both channels of one onset. Each channel leads the onset
// by its own output latency; a channel whose lead is already spent gets
// issue = now and will fire late.
struct IssuePlan {
  double audio_issue_s = 0.0;
  double tactile_issue_s = 0.0;
};

IssuePlan plan_issue_times(const PredictorConfig& cfg,
                           double intended_onset_s);

}  // namespace emtact
