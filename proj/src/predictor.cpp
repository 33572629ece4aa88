#include "emtact/predictor.hpp"

#include <cmath>

#include "emtact/errors.hpp"

namespace emtact {

double estimate_velocity(const PredictorConfig& cfg, PredictorState& st,
                         double t_s, double d_meas_mm) {
  if (!(cfg.ema_alpha > 0.0 && cfg.ema_alpha <= 1.0))
    throw ParameterError("predictor ema_alpha must be in (0, 1]");
  if (!(cfg.pos_alpha > 0.0 && cfg.pos_alpha <= 1.0))
    throw ParameterError("predictor pos_alpha must be in (0, 1]");

  if (!st.has_sample) {
    st.has_sample = true;
    st.last_t_s = t_s;
    st.last_d_mm = d_meas_mm;
    st.v_est_mm_s = 0.0;
    st.d_smooth_mm = d_meas_mm;
    return 0.0;
  }

  double dt = t_s - st.last_t_s;
  if (!(dt > 0.0)) throw ParameterError("sensor samples must advance in time");

  // Approach speed: positive when the measured distance is shrinking.
  double v_raw = (st.last_d_mm - d_meas_mm) / dt;
  st.v_est_mm_s += cfg.ema_alpha * (v_raw - st.v_est_mm_s);
  st.d_smooth_mm += cfg.pos_alpha * (d_meas_mm - st.d_smooth_mm);
  st.period_s = dt;
  st.last_t_s = t_s;
  st.last_d_mm = d_meas_mm;
  return st.v_est_mm_s;
}

double smoothed_distance(const PredictorConfig& cfg,
                         const PredictorState& st) {
  // The position EMA kills most of the 0.2 mm quantization ripple (one raw
  // step is a full +-0.5 ms of onset error at 200 mm/s), but it trails a
  // constant-speed approach by period * (1 - alpha) / alpha. Under the
  // same constant-velocity assumption the extrapolation already makes,
  // that lag backs out exactly.
  if (!st.has_sample) return 0.0;
  if (!(st.period_s > 0.0)) return st.d_smooth_mm;
  double lag_s = st.period_s * (1.0 - cfg.pos_alpha) / cfg.pos_alpha;
  return st.d_smooth_mm - st.v_est_mm_s * lag_s;
}

ImpactPrediction predict_impact(const PredictorConfig& cfg, double t_now_s,
                                double d_mm, double v_est_mm_s) {
  ImpactPrediction out;
  if (!(v_est_mm_s >= cfg.v_min_mm_s)) return out;

  double lead = cfg.compensate_input_latency ? cfg.l_in_s : 0.0;
  double d_hat = d_mm - v_est_mm_s * lead;

  if (d_hat <= cfg.d_threshold_mm) {
    out.outcome = ImpactPrediction::Outcome::immediate;
    out.intended_onset_s = t_now_s;
    return out;
  }

  out.outcome = ImpactPrediction::Outcome::scheduled;
  out.intended_onset_s =
      t_now_s + (d_hat - cfg.d_threshold_mm) / v_est_mm_s;
  return out;
}

IssuePlan plan_issue_times(const PredictorConfig& cfg,
                           double intended_onset_s) {
  return {intended_onset_s - cfg.l_out_audio_s,
          intended_onset_s - cfg.l_out_tactile_s};
}

}  // namespace emtact
