#include "emtact/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "emtact/actuator.hpp"
#include "emtact/control.hpp"
#include "emtact/errors.hpp"
#include "emtact/events.hpp"
#include "emtact/landscape.hpp"
#include "emtact/numeric.hpp"
#include "emtact/physics.hpp"
#include "emtact/predictor.hpp"
#include "emtact/sensor.hpp"

namespace emtact {
namespace {

// One arm/fire cycle of the prescheduler. A pair is "tracking" while both
// events sit unissued in the queue (refinement may still replace it) and
// "spent" from the first issue until the finger retreats past the rearm
// distance.
struct FireCycle {
  bool tracking = false;
  bool spent = false;
  int issued = 0;
  std::uint64_t audio_id = 0;
  std::uint64_t tactile_id = 0;
};

// The magnet acts on the keystone wherever it is, not just over the
// calibrated span: below the grid the nearest calibrated row holds (the
// grid already starts at the surface), above it the field dies off over
// one more millimetre.
double field_force(const ForceLandscape& g, double d_mm, double current_a,
                   double grid_dlo, double grid_dhi) {
  if (d_mm <= grid_dhi) return force_at(g, std::max(d_mm, grid_dlo), current_a);
  double fade = 1.0 - (d_mm - grid_dhi);
  if (fade <= 0.0) return 0.0;
  return force_at(g, grid_dhi, current_a) * fade;
}

}  // namespace

Trace simulate(const Scenario& sc) {
  validate_scenario(sc);

  ForceLandscape g = sc.landscape_file.empty()
                         ? generate_landscape(sc.synth)
                         : load_landscape(sc.landscape_file);
  CalibrationLut lut = calibrate(sc.sensor);

  const double grid_dlo = g.distances_mm(0);
  const double grid_dhi = g.distances_mm(g.distances_mm.size() - 1);
  const double grid_ilo = g.currents_a(0);
  const double grid_ihi = g.currents_a(g.currents_a.size() - 1);

  if (sc.actuator.i_min_a < grid_ilo - 1e-12 ||
      sc.actuator.i_max_a > grid_ihi + 1e-12)
    throw ValidationError(
        "actuator clamp [" + format_sig6(sc.actuator.i_min_a) + ", " +
        format_sig6(sc.actuator.i_max_a) +
        "] A exceeds the landscape current span [" + format_sig6(grid_ilo) +
        ", " + format_sig6(grid_ihi) + "] A");

  const double fs = sc.actuator.rate_hz;
  const double dt = 1.0 / fs;
  const auto n_ticks =
      static_cast<long long>(std::ceil(sc.duration_s * fs - 1e-9));
  const auto sensor_every =
      static_cast<long long>(std::llround(fs / sc.sensor.rate_hz));
  const double delay_ticks = sc.sensor.latency_s * fs;

  PredictorConfig pcfg = sc.predictor;
  pcfg.l_in_s = sc.sensor.latency_s;
  pcfg.l_out_tactile_s = total_output_latency(sc.actuator);

  BodyState body{sc.start_distance_mm, sc.start_velocity_mm_s};
  ActuatorState act{sc.actuator_initial_a};
  ControlState ctl;
  PredictorState pst;
  EventQueue queue;
  FireCycle fire;
  DeterministicRng rng(sc.seed);

  // True positions of the last few ticks, for the sensor transport delay.
  const auto ring_size =
      static_cast<std::size_t>(std::ceil(delay_ticks)) + 3;
  std::vector<double> ring(ring_size, body.pos_mm);

  double i_cmd = sc.actuator_initial_a;
  double d_meas_latest = 0.0;
  double v_est_latest = 0.0;

  Trace tr;
  TraceSummary& sum = tr.summary;
  sum.duration_s = sc.duration_s;
  sum.ticks = n_ticks;
  sum.seed = sc.seed;
  sum.min_d_true_mm = body.pos_mm;

  double contact_t_s = -1.0;
  std::string pending_annot;

  for (long long k = 0; k < n_ticks; ++k) {
    const double t = static_cast<double>(k) * dt;
    ring[static_cast<std::size_t>(k % static_cast<long long>(ring_size))] =
        body.pos_mm;

    // 1. issue whatever is due
    for (const ScheduledEvent& ev : queue.pop_due(t)) {
      double l_out = ev.channel == Channel::audio ? pcfg.l_out_audio_s
                                                  : pcfg.l_out_tactile_s;
      EventRecord rec;
      rec.channel = ev.channel;
      rec.intended_onset_ms = ev.intended_onset_s * 1000.0;
      rec.requested_issue_ms = ev.issue_time_s * 1000.0;
      rec.actual_issue_ms = t * 1000.0;
      rec.perceived_onset_ms = (t + l_out) * 1000.0;
      rec.amplitude = ev.amplitude;
      rec.late = ev.late;
      sum.events.push_back(rec);

      if (!pending_annot.empty()) pending_annot += ';';
      pending_annot += std::string(channel_name(ev.channel)) + ':' +
                       format_sig6(rec.intended_onset_ms) + ':' +
                       (ev.late ? "late" : "ontime");

      if (ev.id == fire.audio_id || ev.id == fire.tactile_id) {
        fire.tracking = false;  // frozen: no more refinement this cycle
        fire.spent = true;
        ++fire.issued;
      }
    }

    // 2. actuator settles toward the held command
    act = actuator_step(sc.actuator, act, i_cmd, dt);

    // 3. field at the true distance
    double f_mag = field_force(g, body.pos_mm, act.current_a, grid_dlo,
                               grid_dhi);
    double f_contact = contact_force(sc.contact, body);

    sum.max_abs_f_mag_n = std::max(sum.max_abs_f_mag_n, std::abs(f_mag));
    if (contact_t_s < 0.0)
      sum.max_abs_f_mag_approach_n =
          std::max(sum.max_abs_f_mag_approach_n, std::abs(f_mag));
    sum.max_abs_f_contact_n = std::max(sum.max_abs_f_contact_n, f_contact);

    // 4. + 5. sum forces, integrate
    double f_total = f_mag + f_contact + gravity_force(sc.finger);
    if (sc.intent.kind != IntentTrajectory::Kind::none) {
      IntentSample is = intent_at(sc.intent, t);
      f_total += finger_force(sc.finger, body, is.pos_mm, is.vel_mm_s);
    }
    BodyState prev = body;
    body = physics_step(body, f_total, sc.finger.mass_kg, dt);
    if (std::abs(body.pos_mm) > 1000.0) throw DivergenceError(t, body.pos_mm);

    if (prev.pos_mm > 0.0 && body.pos_mm <= 0.0) {
      ++sum.contact_count;
      if (contact_t_s < 0.0)
        contact_t_s =
            t + dt * prev.pos_mm / (prev.pos_mm - body.pos_mm);
    }
    sum.min_d_true_mm = std::min(sum.min_d_true_mm, body.pos_mm);

    // 6. sensor publishes the delayed measurement; 7. controller and
    // predictor consume it. Commands hold until the next sensor tick.
    if (k % sensor_every == 0) {
      double target = static_cast<double>(k) - delay_ticks;
      double delayed_pos;
      if (target <= 0.0) {
        delayed_pos = ring[0];  // pipeline not yet full: first reading holds
      } else {
        auto j = static_cast<long long>(std::floor(target));
        double frac = target - static_cast<double>(j);
        double pj =
            ring[static_cast<std::size_t>(j % static_cast<long long>(ring_size))];
        if (frac > 0.0) {
          double pj1 = ring[static_cast<std::size_t>(
              (j + 1) % static_cast<long long>(ring_size))];
          delayed_pos = lerp(pj, pj1, frac);
        } else {
          delayed_pos = pj;
        }
      }

      double s = intensity_of(sc.sensor,
                              clamp(delayed_pos, 0.0, sc.sensor.range_max_mm));
      if (sc.sensor.noise_sigma > 0.0) s += sc.sensor.noise_sigma * rng.gaussian();
      DistanceReading reading = distance_of(lut, s);
      if (reading.saturated) ++sum.meas_saturation_count;
      d_meas_latest = reading.distance_mm;

      double d_est = clamp(d_meas_latest, grid_dlo, grid_dhi);
      ControlResult cr =
          control_update(sc.controller, ctl, g, d_est, t,
                         static_cast<double>(sensor_every) * dt);
      if (cr.saturated || cr.i_cmd_a < sc.actuator.i_min_a ||
          cr.i_cmd_a > sc.actuator.i_max_a)
        ++sum.cmd_saturation_count;
      i_cmd = cr.i_cmd_a;

      if (sc.predictor_enabled) {
        v_est_latest = estimate_velocity(pcfg, pst, t, d_meas_latest);
        double d_used = smoothed_distance(pcfg, pst);

        if (fire.spent && fire.issued >= 2 &&
            d_meas_latest >=
                pcfg.d_threshold_mm + pcfg.rearm_distance_mm) {
          fire.spent = false;
          fire.issued = 0;
        }

        if (!fire.spent) {
          ImpactPrediction pred =
              predict_impact(pcfg, t, d_used, v_est_latest);
          if (pred.outcome == ImpactPrediction::Outcome::none) {
            if (fire.tracking) {
              queue.cancel(fire.audio_id);
              queue.cancel(fire.tactile_id);
              fire.tracking = false;
            }
          } else {
            double amp = trigger_amplitude(sc.trigger, v_est_latest);
            IssuePlan plan = plan_issue_times(pcfg, pred.intended_onset_s);
            double earliest =
                std::min(plan.audio_issue_s, plan.tactile_issue_s);

            bool place = false;
            if (!fire.tracking) {
              place = true;
            } else if (earliest > t + 1e-12) {
              // Refine only while the replacement is still schedulable;
              // once the standing plan's lead has run out, it stands.
              queue.cancel(fire.audio_id);
              queue.cancel(fire.tactile_id);
              place = true;
            }
            if (place) {
              fire.audio_id =
                  queue.schedule(Channel::audio, plan.audio_issue_s,
                                 pred.intended_onset_s, amp, t);
              fire.tactile_id =
                  queue.schedule(Channel::tactile, plan.tactile_issue_s,
                                 pred.intended_onset_s, amp, t);
              fire.tracking = true;
            }
          }
        }
      }
      ++sum.sensor_samples;
    }

    if (k % sc.trace_decimation == 0) {
      TraceRow r;
      r.t_ms = t * 1000.0;
      r.d_true_mm = prev.pos_mm;
      r.d_meas_mm = d_meas_latest;
      r.v_est_mm_s = v_est_latest;
      r.i_cmd_a = i_cmd;
      r.i_act_a = act.current_a;
      r.f_mag_n = f_mag;
      r.f_contact_n = f_contact;
      r.event = pending_annot;
      pending_annot.clear();
      tr.rows.push_back(std::move(r));
    }
  }

  if (contact_t_s >= 0.0) sum.first_contact_ms = contact_t_s * 1000.0;
  sum.max_penetration_mm = std::max(0.0, -sum.min_d_true_mm);
  sum.predictor_fired = !sum.events.empty();
  if (sum.predictor_fired) {
    sum.predicted_onset_ms = sum.events.front().intended_onset_ms;
    if (contact_t_s >= 0.0) {
      sum.onset_error_valid = true;
      sum.onset_error_ms =
          sum.events.front().intended_onset_ms - sum.first_contact_ms;
    }
  }
  return tr;
}

}  // namespace emtact
